#include "ccpg/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ccpg {

namespace {

constexpr double kRidge = 1e-10;
constexpr double kCorrClamp = 1.0 - 1e-12;

// Acklam's rational approximation, polished with one Halley step.
double normal_quantile_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// Gauss-Jordan inverse with partial pivoting; false on a vanishing pivot.
bool invert_in_place(std::vector<double>& mat, int k) {
    std::vector<double> inv(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) inv[static_cast<size_t>(i) * k + i] = 1.0;

    for (int col = 0; col < k; ++col) {
        int pivot = col;
        double best = std::abs(mat[static_cast<size_t>(col) * k + col]);
        for (int row = col + 1; row < k; ++row) {
            const double cand = std::abs(mat[static_cast<size_t>(row) * k + col]);
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (!(best > 1e-300)) return false;
        if (pivot != col) {
            for (int j = 0; j < k; ++j) {
                std::swap(mat[static_cast<size_t>(pivot) * k + j], mat[static_cast<size_t>(col) * k + j]);
                std::swap(inv[static_cast<size_t>(pivot) * k + j], inv[static_cast<size_t>(col) * k + j]);
            }
        }
        const double scale = 1.0 / mat[static_cast<size_t>(col) * k + col];
        for (int j = 0; j < k; ++j) {
            mat[static_cast<size_t>(col) * k + j] *= scale;
            inv[static_cast<size_t>(col) * k + j] *= scale;
        }
        for (int row = 0; row < k; ++row) {
            if (row == col) continue;
            const double f = mat[static_cast<size_t>(row) * k + col];
            if (f == 0.0) continue;
            for (int j = 0; j < k; ++j) {
                mat[static_cast<size_t>(row) * k + j] -= f * mat[static_cast<size_t>(col) * k + j];
                inv[static_cast<size_t>(row) * k + j] -= f * inv[static_cast<size_t>(col) * k + j];
            }
        }
    }
    mat = std::move(inv);
    return true;
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
    double x = normal_quantile_approx(p);
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

bool fisher_z_decision(double r, long m, int c, double alpha, bool* clamped) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("fisher_z_decision: bad alpha");
    const long dof = m - c - 3;
    if (dof < 1) {
        throw SampleSizeError("fisher_z_decision: need m - |C| - 3 >= 1, got m=" + std::to_string(m) +
                              " |C|=" + std::to_string(c));
    }
    bool was_clamped = false;
    if (r >= 1.0) {
        r = kCorrClamp;
        was_clamped = true;
    } else if (r <= -1.0) {
        r = -kCorrClamp;
        was_clamped = true;
    }
    if (clamped) *clamped = was_clamped;
    const double stat = std::sqrt(static_cast<double>(dof)) * std::abs(std::atanh(r));
    return stat > normal_quantile(1.0 - alpha / 2.0);
}

std::vector<double> covariance_matrix(const Dataset& data) {
    data.validate();
    const int n = data.n;
    const long m = data.m;
    if (m < 2) throw SampleSizeError("covariance_matrix: need at least 2 samples");

    std::vector<double> mean(static_cast<size_t>(n), 0.0);
    for (long r = 0; r < m; ++r) {
        for (int j = 0; j < n; ++j) mean[static_cast<size_t>(j)] += data.at(r, j);
    }
    for (int j = 0; j < n; ++j) mean[static_cast<size_t>(j)] /= static_cast<double>(m);

    std::vector<double> cov(static_cast<size_t>(n) * n, 0.0);
    for (long r = 0; r < m; ++r) {
        for (int i = 0; i < n; ++i) {
            const double di = data.at(r, i) - mean[static_cast<size_t>(i)];
            for (int j = i; j < n; ++j) {
                cov[static_cast<size_t>(i) * n + j] += di * (data.at(r, j) - mean[static_cast<size_t>(j)]);
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(m - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = cov[static_cast<size_t>(i) * n + j] * scale;
            cov[static_cast<size_t>(i) * n + j] = v;
            cov[static_cast<size_t>(j) * n + i] = v;
        }
    }
    return cov;
}

double partial_correlation_from_cov(const std::vector<double>& cov, int n, int a, int b,
                                    const VertexSet& cond) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
        throw std::invalid_argument("partial_correlation: bad variable pair");
    }
    VertexSet support = cond;
    if (support.contains(a)) support.erase(a);
    if (support.contains(b)) support.erase(b);
    support.insert(a);
    support.insert(b);

    const std::vector<int> idx = support.members();
    const int k = static_cast<int>(idx.size());
    int pos_a = -1;
    int pos_b = -1;
    std::vector<double> sub(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        if (idx[static_cast<size_t>(i)] == a) pos_a = i;
        if (idx[static_cast<size_t>(i)] == b) pos_b = i;
        for (int j = 0; j < k; ++j) {
            sub[static_cast<size_t>(i) * k + j] =
                cov[static_cast<size_t>(idx[static_cast<size_t>(i)]) * n + idx[static_cast<size_t>(j)]];
        }
    }

    std::vector<double> prec = sub;
    if (!invert_in_place(prec, k)) {
        prec = sub;
        for (int i = 0; i < k; ++i) prec[static_cast<size_t>(i) * k + i] += kRidge;
        if (!invert_in_place(prec, k)) {
            throw NumericalError("partial_correlation: covariance submatrix singular after ridge");
        }
    }
    const double paa = prec[static_cast<size_t>(pos_a) * k + pos_a];
    const double pbb = prec[static_cast<size_t>(pos_b) * k + pos_b];
    const double pab = prec[static_cast<size_t>(pos_a) * k + pos_b];
    const double denom = std::sqrt(paa * pbb);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw NumericalError("partial_correlation: non-positive precision diagonal");
    }
    return std::clamp(-pab / denom, -1.0, 1.0);
}

double partial_correlation(const Dataset& data, int a, int b, const VertexSet& cond) {
    if (data.m < cond.count() + 4) {
        throw SampleSizeError("partial_correlation: need at least |C| + 4 samples");
    }
    return partial_correlation_from_cov(covariance_matrix(data), data.n, a, b, cond);
}

bool set_dependent_sampled(const Dataset& data, const VertexSet& a, const VertexSet& b,
                           const VertexSet& cond, const GaussianTesterConfig& cfg) {
    cfg.validate();
    if (a.empty() || b.empty()) throw std::invalid_argument("set_dependent_sampled: empty endpoint set");
    if (a.intersects(b)) throw std::invalid_argument("set_dependent_sampled: endpoint sets overlap");

    const VertexSet c = (cond - a) - b;
    if (data.m < cfg.min_samples || data.m < c.count() + 4) {
        throw SampleSizeError("set_dependent_sampled: too few samples in regime " +
                              std::to_string(data.regime));
    }
    const std::vector<double> cov = covariance_matrix(data);
    double alpha = cfg.alpha;
    if (cfg.bonferroni) alpha /= static_cast<double>(a.count()) * static_cast<double>(b.count());

    bool any = false;
    a.for_each([&](int u) {
        if (any) return;
        b.for_each([&](int v) {
            if (any) return;
            const double r = partial_correlation_from_cov(cov, data.n, u, v, c);
            if (fisher_z_decision(r, data.m, c.count(), alpha)) any = true;
        });
    });
    return any;
}

GaussianOracle::GaussianOracle(std::vector<Dataset> regimes, GaussianTesterConfig cfg)
    : cfg_(cfg) {
    cfg_.validate();
    if (regimes.empty()) throw std::invalid_argument("GaussianOracle: no regimes");
    n_ = regimes.front().n;
    for (auto& data : regimes) {
        data.validate();
        if (data.n != n_) throw std::invalid_argument("GaussianOracle: regime column mismatch");
        if (data.m < cfg_.min_samples) {
            throw SampleSizeError("GaussianOracle: regime " + std::to_string(data.regime) +
                                  " has fewer than min_samples samples");
        }
        const RegimeId id = data.regime;
        RegimeData rd;
        rd.cov = covariance_matrix(data);
        rd.data = std::move(data);
        if (!regimes_.emplace(id, std::move(rd)).second) {
            throw std::invalid_argument("GaussianOracle: duplicate regime id");
        }
    }
    if (regimes_.count(kObservational) == 0) {
        throw std::invalid_argument("GaussianOracle: observational regime required");
    }
}

bool GaussianOracle::evaluate(const CiQuery& q) {
    auto it = regimes_.find(q.regime());
    if (it == regimes_.end()) {
        throw RegimeError("GaussianOracle: unknown regime " + std::to_string(q.regime()));
    }
    const RegimeData& rd = it->second;
    if (rd.data.m < cfg_.min_samples || rd.data.m < q.cond().count() + 4) {
        throw SampleSizeError("GaussianOracle: too few samples for conditioning size");
    }
    double alpha = cfg_.alpha;
    if (cfg_.bonferroni) {
        alpha /= static_cast<double>(q.a().count()) * static_cast<double>(q.b().count());
    }
    bool any = false;
    q.a().for_each([&](int u) {
        if (any) return;
        q.b().for_each([&](int v) {
            if (any) return;
            const double r = partial_correlation_from_cov(rd.cov, n_, u, v, q.cond());
            if (fisher_z_decision(r, rd.data.m, q.cond().count(), alpha)) any = true;
        });
    });
    return any;
}

}  // namespace ccpg
