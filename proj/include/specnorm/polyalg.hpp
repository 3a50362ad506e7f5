#pragma once

#include <climits>
#include <vector>

#include "specnorm/core.hpp"

namespace specnorm {

// Dense univariate polynomial, c[k] is the coefficient of z^k.
// Exact trailing zeros are removed; the zero polynomial has no coefficients.
struct DensePolynomial {
    static constexpr int zero_degree = INT_MIN;

    std::vector<cplx> c;

    DensePolynomial() = default;
    explicit DensePolynomial(std::vector<cplx> coeffs);

    int degree() const { return c.empty() ? zero_degree : static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    cplx lead() const { return c.empty() ? cplx(0.0) : c.back(); }
    void trim();
};

DensePolynomial poly_mul(const DensePolynomial& a, const DensePolynomial& b);
DensePolynomial poly_axpy(cplx alpha, const DensePolynomial& a, const DensePolynomial& b);
cplx poly_eval(const DensePolynomial& p, cplx z);

// Drop trailing coefficients below rel * max|c|.
DensePolynomial trim_relative(const DensePolynomial& p, double rel = 1e-12);

struct Root {
    cplx z;
    int multiplicity = 1;
};

struct RootSet {
    std::vector<Root> roots;
    // max over roots of |p(z)| / sum_k |c_k||z|^k (relative backward error)
    double residual = 0.0;
    bool used_fallback = false;
};

struct RootOptions {
    double tol = 1e-8;
    double cluster_cap = 1e-4;
    int max_iter = 400;
};

RootSet roots_all(const DensePolynomial& p, double tol = 1e-8);
RootSet roots_all(const DensePolynomial& p, const RootOptions& opt);

// Newton on the (m-1)-th derivative from z; returns z if that does not improve.
cplx refine_multiple_root(const DensePolynomial& p, cplx z, int m);

// Relative backward error of z as a root of p.
double backward_error(const DensePolynomial& p, cplx z);

// Sylvester determinant at the given nominal degrees (leading zeros allowed).
cplx sylvester_resultant(const std::vector<cplx>& a, int deg_a, const std::vector<cplx>& b, int deg_b,
                         double* hadamard = nullptr);
cplx resultant(const DensePolynomial& a, const DensePolynomial& b);

} // namespace specnorm
