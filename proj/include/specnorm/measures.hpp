#pragma once

#include <vector>

#include "specnorm/core.hpp"

namespace specnorm {

using BasisIndex = std::vector<int>;

struct MeasureReport {
    double eta = 0.0;
    double eta_rel = 0.0;
    double sigma_used = 0.0;
    int d = 0;
};

struct EtaBounds {
    double lower = 0.0;
    double upper = 0.0;
    double asymptotic = 0.0;
};

// -log2 sigma^2 for a unit state (complex spectral norm)
double eta(const QubitState& st);
double eta_rel(const QubitState& st);
MeasureReport measure_report(const QubitState& st);
MeasureReport measure_from_sigma(double sigma, int d);

QubitState standard_basis_state(int d, const BasisIndex& j);
double standard_basis_sigma(int d, const BasisIndex& j);

// Index of J(d,n) with entries as equal as possible.
BasisIndex balanced_index(int d, int n);
EtaBounds eta_sym_bounds(int d, int n);

} // namespace specnorm
