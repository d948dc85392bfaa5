#ifndef CCPG_DATASET_HPP
#define CCPG_DATASET_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ccpg/dag.hpp"

namespace ccpg {

// Row-major sample matrix for one experimental regime.
struct Dataset {
    RegimeId regime = kObservational;
    int n = 0;
    long m = 0;
    uint64_t seed = 0;
    std::vector<double> values;  // m rows of n columns

    double at(long row, int col) const { return values[static_cast<size_t>(row) * n + col]; }
    double& at(long row, int col) { return values[static_cast<size_t>(row) * n + col]; }

    void validate() const {
        if (n <= 0 || m < 1) throw std::invalid_argument("Dataset: need n > 0 and m >= 1");
        if (values.size() != static_cast<size_t>(m) * static_cast<size_t>(n)) {
            throw std::invalid_argument("Dataset: value count does not match m x n");
        }
    }
};

}  // namespace ccpg

#endif  // CCPG_DATASET_HPP
