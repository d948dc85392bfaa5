#include "ccpg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ccpg {

namespace {

// Portable uniforms and normals so that fixed seeds give identical streams
// across standard libraries.
double canonical01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
    double u1 = canonical01(rng);
    while (u1 <= 0.0) u1 = canonical01(rng);
    const double u2 = canonical01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

double SemModel::weight(int u, int v) const {
    const Edge e{u, v};
    const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
    if (it == g.edges().end() || *it != e) {
        throw std::invalid_argument("SemModel: no such edge");
    }
    return weights[static_cast<size_t>(it - g.edges().begin())];
}

void SemModel::validate() const {
    if (weights.size() != g.edges().size()) {
        throw std::invalid_argument("SemModel: weight count does not match edge count");
    }
    if (noise_std.size() != static_cast<size_t>(g.n())) {
        throw std::invalid_argument("SemModel: noise count does not match vertex count");
    }
    for (double s : noise_std) {
        if (!(s > 0.0)) throw std::invalid_argument("SemModel: noise std must be positive");
    }
}

Dag random_dag(int n, double edge_prob, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_dag: need n >= 1");
    if (edge_prob < 0.0 || edge_prob > 1.0) throw std::invalid_argument("random_dag: bad edge_prob");

    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (canonical01(rng) < edge_prob) {
                edges.emplace_back(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
            }
        }
    }
    return Dag(n, std::move(edges));
}

Dag in_star(int n) {
    if (n < 1) throw std::invalid_argument("in_star: need n >= 1");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, n - 1);
    return Dag(n, std::move(edges));
}

Dag chain(int n) {
    if (n < 1) throw std::invalid_argument("chain: need n >= 1");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Dag(n, std::move(edges));
}

SemModel random_sem(const Dag& g, double weight_low, double weight_high, uint64_t seed) {
    if (!(weight_low > 0.0) || weight_low > weight_high) {
        throw std::invalid_argument("random_sem: need 0 < weight_low <= weight_high");
    }
    std::mt19937_64 rng(seed);
    SemModel model;
    model.g = g;
    model.weights.reserve(g.edges().size());
    for (size_t i = 0; i < g.edges().size(); ++i) {
        const double mag = weight_low + (weight_high - weight_low) * canonical01(rng);
        model.weights.push_back((rng() & 1) ? mag : -mag);
    }
    model.noise_std.assign(static_cast<size_t>(g.n()), 1.0);
    return model;
}

namespace {

Dataset sample_impl(const SemModel& model, const VertexSet* targets, long m, uint64_t seed,
                    RegimeId regime) {
    model.validate();
    if (m < 1) throw std::invalid_argument("sample: need m >= 1");
    const int n = model.g.n();

    Dataset data;
    data.regime = regime;
    data.n = n;
    data.m = m;
    data.seed = seed;
    data.values.assign(static_cast<size_t>(m) * static_cast<size_t>(n), 0.0);

    std::mt19937_64 rng(seed);
    const std::vector<int>& order = model.g.topological_order();
    for (long row = 0; row < m; ++row) {
        for (int v : order) {
            if (targets && targets->contains(v)) {
                data.at(row, v) = standard_normal(rng);
                continue;
            }
            double x = model.noise_std[static_cast<size_t>(v)] * standard_normal(rng);
            model.g.parents(v).for_each([&](int p) { x += model.weight(p, v) * data.at(row, p); });
            data.at(row, v) = x;
        }
    }
    return data;
}

}  // namespace

Dataset sample(const SemModel& model, long m, uint64_t seed) {
    return sample_impl(model, nullptr, m, seed, kObservational);
}

Dataset sample_intervened(const SemModel& model, const Intervention& intervention, long m,
                          uint64_t seed) {
    if (intervention.targets.universe() != model.g.n()) {
        throw std::invalid_argument("sample_intervened: target universe mismatch");
    }
    return sample_impl(model, &intervention.targets, m, seed, intervention.id);
}

namespace {

std::vector<double> covariance_of(const SemModel& model, const VertexSet* targets) {
    model.validate();
    const int n = model.g.n();
    std::vector<double> cov(static_cast<size_t>(n) * n, 0.0);
    std::vector<int> pos(static_cast<size_t>(n), 0);
    const std::vector<int>& order = model.g.topological_order();
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;

    auto entry = [&](int a, int b) -> double& { return cov[static_cast<size_t>(a) * n + b]; };

    for (int vi = 0; vi < n; ++vi) {
        const int v = order[static_cast<size_t>(vi)];
        const bool cut = targets && targets->contains(v);
        const double noise = cut ? 1.0 : model.noise_std[static_cast<size_t>(v)];
        std::vector<int> pa;
        if (!cut) {
            model.g.parents(v).for_each([&](int p) { pa.push_back(p); });
        }

        // Cross terms with every earlier vertex, then the variance.
        for (int ui = 0; ui < vi; ++ui) {
            const int u = order[static_cast<size_t>(ui)];
            double c = 0.0;
            for (int p : pa) c += model.weight(p, v) * entry(u, p);
            entry(u, v) = c;
            entry(v, u) = c;
        }
        double var = noise * noise;
        for (int p : pa) {
            for (int q : pa) var += model.weight(p, v) * model.weight(q, v) * entry(p, q);
        }
        entry(v, v) = var;
    }
    return cov;
}

}  // namespace

std::vector<double> analytic_covariance(const SemModel& model) {
    return covariance_of(model, nullptr);
}

std::vector<double> analytic_covariance(const SemModel& model, const Intervention& intervention) {
    return covariance_of(model, &intervention.targets);
}

std::vector<Intervention> covered_edge_verifying_set(const Dag& g) {
    std::vector<int> tails;
    for (const auto& e : g.covered_edges()) tails.push_back(e.first);
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());

    std::vector<Intervention> out;
    out.reserve(tails.size());
    for (size_t i = 0; i < tails.size(); ++i) {
        out.push_back({static_cast<RegimeId>(i), VertexSet::single(g.n(), tails[i])});
    }
    return out;
}

std::vector<Intervention> log2_intervention_set(int n) {
    if (n < 1) throw std::invalid_argument("log2_intervention_set: need n >= 1");
    std::vector<Intervention> out;
    for (int b = 0; (1 << b) < n; ++b) {
        VertexSet targets(n);
        for (int v = 0; v < n; ++v) {
            if ((v >> b) & 1) targets.insert(v);
        }
        out.push_back({static_cast<RegimeId>(b), targets});
    }
    return out;
}

}  // namespace ccpg
