#pragma once

#include <vector>

#include "specnorm/core.hpp"
#include "specnorm/engine.hpp"
#include "specnorm/polyalg.hpp"

namespace specnorm {

enum class ExceptionalKind { not_exceptional, monomial, two_root, circle };

const char* exceptional_kind_name(ExceptionalKind k);

// phi(z) = A z^k (monomial) or A (z+a)^p (z+b)^(d-p) with a = c e^{-is},
// b = -e^{-is}/c. Roots holds the clustered roots of phi, -a first.
struct ExceptionalClass {
    ExceptionalKind kind = ExceptionalKind::not_exceptional;
    cplx A;
    int k = 0;
    double c = 0.0;         // |a| for complex states, signed a for real ones
    int p = 0;
    double phase_s = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<Root> roots;
};

ExceptionalClass detect_exceptional(const QubitState& st, double tol_zero = 1e-9);

double norm_monomial(const ExceptionalClass& cls, int d);
SpectralResult monomial_result(const ExceptionalClass& cls, int d, Field field);

SpectralResult norm_two_root_real(const ExceptionalClass& cls, const QubitState& st);

QubitState perturb(const QubitState& st, double eps, PerturbScheme scheme);

// Generic engine on the perturbed state at a fixed eps; bracket_halfwidth is
// the HS distance to st, which bounds the spectral distance.
SpectralResult bracket_at(const QubitState& st, double eps, PerturbScheme scheme, Field field = Field::complex);

SpectralResult norm_two_root_complex(const ExceptionalClass& cls, const QubitState& st, double eps_target = 1e-4,
                                     PerturbScheme scheme = PerturbScheme::normalized_shift);

} // namespace specnorm
