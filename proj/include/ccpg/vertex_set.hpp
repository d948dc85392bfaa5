#ifndef CCPG_VERTEX_SET_HPP
#define CCPG_VERTEX_SET_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccpg {

// Set of vertex indices over a fixed universe 0..n-1, backed by 64-bit words.
// All binary operations require both operands to share the same universe.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(int universe) : n_(check_universe(universe)), words_(word_count(n_), 0) {}

    VertexSet(int universe, std::initializer_list<int> members) : VertexSet(universe) {
        for (int v : members) insert(v);
    }

    static VertexSet single(int universe, int v) {
        VertexSet s(universe);
        s.insert(v);
        return s;
    }

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~uint64_t{0};
        s.trim();
        return s;
    }

    int universe() const { return n_; }

    bool contains(int v) const {
        if (v < 0 || v >= n_) return false;
        return (words_[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    void insert(int v) {
        check_range(v);
        words_[static_cast<size_t>(v) >> 6] |= uint64_t{1} << (v & 63);
    }

    void erase(int v) {
        check_range(v);
        words_[static_cast<size_t>(v) >> 6] &= ~(uint64_t{1} << (v & 63));
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : words_) {
            if (w != 0) return false;
        }
        return true;
    }

    // Smallest member, or -1 when empty.
    int first() const {
        for (size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] != 0) return static_cast<int>(i * 64) + __builtin_ctzll(words_[i]);
        }
        return -1;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    // Ascending-order visit.
    template <typename F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w != 0) {
                const int v = static_cast<int>(i * 64) + __builtin_ctzll(w);
                f(v);
                w &= w - 1;
            }
        }
    }

    VertexSet& operator|=(const VertexSet& o) {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet complement() const {
        VertexSet s(n_);
        for (size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    bool intersects(const VertexSet& o) const {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & o.words_[i]) return true;
        }
        return false;
    }

    bool is_subset_of(const VertexSet& o) const {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & ~o.words_[i]) return false;
        }
        return true;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

    // Lexicographic order on the ascending member sequences, e.g. {0,5} < {0,7},
    // {0} < {0,7}, {1} < {2}. Used to canonicalize symmetric query pairs.
    bool lex_less(const VertexSet& o) const {
        check_same(o);
        int d = -1;
        for (size_t i = 0; i < words_.size(); ++i) {
            const uint64_t diff = words_[i] ^ o.words_[i];
            if (diff != 0) {
                d = static_cast<int>(i * 64) + __builtin_ctzll(diff);
                break;
            }
        }
        if (d < 0) return false;
        if (contains(d)) return o.has_member_above(d);
        return !has_member_above(d);
    }

    size_t hash() const {
        size_t h = static_cast<size_t>(n_) * 0x9e3779b97f4a7c15ull;
        for (uint64_t w : words_) h = mix(h ^ w);
        return h;
    }

    std::string to_string() const {
        std::string s = "{";
        bool sep = false;
        for_each([&](int v) {
            if (sep) s += ",";
            s += std::to_string(v);
            sep = true;
        });
        s += "}";
        return s;
    }

private:
    static int check_universe(int n) {
        if (n < 0) throw std::invalid_argument("VertexSet: negative universe size");
        return n;
    }
    static size_t word_count(int n) { return (static_cast<size_t>(n) + 63) / 64; }

    void check_range(int v) const {
        if (v < 0 || v >= n_) {
            throw std::invalid_argument("VertexSet: vertex " + std::to_string(v) +
                                        " out of range [0," + std::to_string(n_) + ")");
        }
    }
    void check_same(const VertexSet& o) const {
        if (n_ != o.n_) throw std::invalid_argument("VertexSet: universe mismatch");
    }
    void trim() {
        if (n_ % 64 != 0 && !words_.empty()) {
            words_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
        }
    }
    bool has_member_above(int v) const {
        for (int u = v + 1; u < n_; ++u) {
            if (contains(u)) return true;
        }
        return false;
    }
    static size_t mix(size_t x) {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdull;
        x ^= x >> 33;
        x *= 0xc4ceb9fe1a85ec53ull;
        x ^= x >> 33;
        return x;
    }

    int n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace ccpg

template <>
struct std::hash<ccpg::VertexSet> {
    size_t operator()(const ccpg::VertexSet& s) const noexcept { return s.hash(); }
};

#endif  // CCPG_VERTEX_SET_HPP
