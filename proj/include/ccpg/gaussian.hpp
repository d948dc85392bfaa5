#ifndef CCPG_GAUSSIAN_HPP
#define CCPG_GAUSSIAN_HPP

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ccpg/ci.hpp"
#include "ccpg/dataset.hpp"
#include "ccpg/vertex_set.hpp"

namespace ccpg {

class SampleSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GaussianTesterConfig {
    double alpha = 0.01;     // significance level, in (0,1)
    long min_samples = 30;   // regimes with fewer samples are rejected
    bool bonferroni = false; // divide alpha by the pair count in set queries

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw std::invalid_argument("GaussianTesterConfig: alpha must lie in (0,1)");
        }
        if (min_samples < 1) throw std::invalid_argument("GaussianTesterConfig: min_samples < 1");
    }
};

// Inverse standard normal CDF.
double normal_quantile(double p);

// Dependence decision sqrt(m - c - 3) * |atanh(r)| > Phi^-1(1 - alpha/2).
// Requires m - c - 3 >= 1; |r| >= 1 is clamped to +-(1 - 1e-12) and reported
// through *clamped when given.
bool fisher_z_decision(double r, long m, int c, double alpha, bool* clamped = nullptr);

// n x n sample covariance of one regime (divisor m - 1).
std::vector<double> covariance_matrix(const Dataset& data);

// Partial correlation of a and b given cond, from the precision of the
// covariance submatrix over {a,b} u cond. A ridge of 1e-10 is added to the
// diagonal when the submatrix is singular; failure after that raises
// NumericalError.
double partial_correlation_from_cov(const std::vector<double>& cov, int n, int a, int b,
                                    const VertexSet& cond);
double partial_correlation(const Dataset& data, int a, int b, const VertexSet& cond);

// Any-pair set-level dependence: true iff some pair (a, b) in A x B is
// dependent given cond \ (A u B), pairs visited in ascending order.
bool set_dependent_sampled(const Dataset& data, const VertexSet& a, const VertexSet& b,
                           const VertexSet& cond, const GaussianTesterConfig& cfg);

// Sample-backed oracle over per-regime datasets. The covariance of each
// regime is computed once and reused; interventional queries use only the
// data of their own regime.
class GaussianOracle : public CiOracle {
public:
    explicit GaussianOracle(std::vector<Dataset> regimes, GaussianTesterConfig cfg = {});

    int n() const override { return n_; }
    bool has_regime(RegimeId regime) const override { return regimes_.count(regime) > 0; }
    const GaussianTesterConfig& config() const { return cfg_; }

protected:
    bool evaluate(const CiQuery& q) override;

private:
    struct RegimeData {
        Dataset data;
        std::vector<double> cov;
    };
    std::unordered_map<RegimeId, RegimeData> regimes_;
    GaussianTesterConfig cfg_;
    int n_ = 0;
};

}  // namespace ccpg

#endif  // CCPG_GAUSSIAN_HPP
