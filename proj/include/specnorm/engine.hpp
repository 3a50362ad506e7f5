#pragma once

#include <optional>
#include <vector>

#include "specnorm/core.hpp"
#include "specnorm/polyalg.hpp"

namespace specnorm {

struct PqPair {
    DensePolynomial p, q;
};

struct UvPair {
    DensePolynomial u, v;
};

// zv(z) - u(z) together with a bound on the magnitude of the terms that
// formed each coefficient; used to tell cancellation from genuine values.
struct FixedPointPoly {
    DensePolynomial f;           // after top trimming
    std::vector<cplx> raw;       // nominal length (d-1)^2 + 2
    std::vector<double> bound;   // sum of |terms| per coefficient
    double max_coef = 0.0;
    double max_bound = 0.0;
    bool vanishes = false;       // identically zero within tolerance
};

struct CandidateRoot {
    cplx z;
    int multiplicity = 1;
    double lambda_q = 0.0;
    double lambda_v = 0.0;
    bool in_R = false;
    bool in_Rprime = false;
    bool in_R1 = true;
    bool in_R1prime = false;
    cplx q_at_z;
    cplx v_at_z;
    double r_residual = 0.0;  // |xbar1 F0(x) - xbar0 F1(x)| at unit x
};

enum class Method { generic, matrix_d2, exceptional_monomial, exceptional_real, exceptional_bracket };

const char* method_name(Method m);

struct SpectralResult {
    Field field = Field::complex;
    double sigma = 0.0;
    UnitVector2 witness;
    bool witness_at_infinity = false;
    cplx witness_root;
    Method method = Method::generic;
    double bracket_halfwidth = 0.0;
    double sigma_check = 0.0;  // lambda_v based value (generic method)
};

enum class PerturbScheme { normalized_shift, endpoint_reweight };

struct EngineOptions {
    double tol = 1e-8;          // root finder and real-axis tolerance
    double tol_R = 1e-6;        // membership in R
    double cross_check = 1e-6;  // lambda_q vs lambda_v agreement
    double zero_poly = 1e-9;    // exceptional family threshold
    double trim = 1e-12;        // cancellation trim for zv - u
    double eps_target = 1e-4;   // bracket width for complex exceptional inputs
    PerturbScheme scheme = PerturbScheme::normalized_shift;
};

struct Census {
    int fixed_point_degree = 0;
    int distinct_roots = 0;
    int real_roots = 0;
    int mu_reported = 0;
    int lower_bound = 0;
    int upper_bound = 0;
    bool nonsingular = false;
    std::optional<bool> bounds_satisfied;
};

PqPair build_pq(const QubitState& st);
UvPair build_uv(const QubitState& st);
FixedPointPoly fixed_point_polynomial(const QubitState& st, const EngineOptions& opt = {});

std::vector<CandidateRoot> candidate_roots(const QubitState& st, double tol = 1e-8);
std::vector<CandidateRoot> candidate_roots(const QubitState& st, const EngineOptions& opt);

// Real roots of t q(t) - p(t) annotated like candidate roots (real states).
std::vector<CandidateRoot> real_anti_roots(const QubitState& st, const EngineOptions& opt = {});

SpectralResult spectral_norm(const QubitState& st, Field field, double tol = 1e-8);
SpectralResult spectral_norm(const QubitState& st, Field field, const EngineOptions& opt);

// Root-finding path only; throws ExceptionalFamily instead of dispatching.
SpectralResult spectral_norm_generic(const QubitState& st, Field field, const EngineOptions& opt = {});

// Finite root when z has a value, the point at infinity otherwise.
UnitVector2 witness(const QubitState& st, std::optional<cplx> root);

bool is_nonsingular(const QubitState& st);
Census anti_eigen_census(const QubitState& st, const EngineOptions& opt = {});

int census_lower_bound(int d);
int census_upper_bound(int d);

} // namespace specnorm
