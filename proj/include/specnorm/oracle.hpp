#pragma once

#include <cstdint>

#include "specnorm/core.hpp"

namespace specnorm {

struct OracleConfig {
    int restarts = 64;
    int max_iters = 500;
    double step_tol = 1e-12;
    std::uint64_t seed = 0x5eed;
};

struct OracleResult {
    double value = 0.0;
    UnitVector2 argmax;
};

// Best |f(x)| over random starts of x <- conj(F(x)) / |F(x)|.
OracleResult oracle_max(const QubitState& st, Field field, const OracleConfig& cfg = {});

// Worker count: SPECNORM_THREADS if set, else hardware concurrency.
unsigned worker_count();

} // namespace specnorm
