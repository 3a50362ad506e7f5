#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "specnorm/polyalg.hpp"

using namespace specnorm;

namespace {

DensePolynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0)
{
    DensePolynomial p({lead});
    for (auto r : roots) p = poly_mul(p, DensePolynomial({-r, 1.0}));
    return p;
}

bool has_root(const RootSet& rs, cplx z, int mult, double tol)
{
    return std::any_of(rs.roots.begin(), rs.roots.end(),
                       [&](const Root& r) { return std::abs(r.z - z) <= tol && r.multiplicity == mult; });
}

} // namespace

TEST_CASE("dense polynomial basics")
{
    DensePolynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(DensePolynomial({0.0}).is_zero());
    CHECK(DensePolynomial().degree() == DensePolynomial::zero_degree);
    const auto q = poly_mul(DensePolynomial({1.0, 1.0}), DensePolynomial({-1.0, 1.0}));
    CHECK(q.degree() == 2);
    CHECK(poly_eval(q, 3.0) == cplx(8.0));
    CHECK(poly_axpy(2.0, DensePolynomial({1.0}), DensePolynomial({0.0, 1.0})).c == std::vector<cplx>{2.0, 1.0});
    CHECK(trim_relative(DensePolynomial({1.0, 1.0, 1e-14}), 1e-12).degree() == 1);
}

TEST_CASE("roots of small polynomials")
{
    const auto rs = roots_all(DensePolynomial({1.0, 0.0, 1.0}));
    REQUIRE(rs.roots.size() == 2);
    CHECK(has_root(rs, cplx(0, 1), 1, 1e-14));
    CHECK(has_root(rs, cplx(0, -1), 1, 1e-14));

    const auto r3 = roots_all(from_roots({1.0, 2.0, 3.0}));
    REQUIRE(r3.roots.size() == 3);
    CHECK(r3.roots[0].z.real() == doctest::Approx(1.0));
    CHECK(r3.roots[2].z.real() == doctest::Approx(3.0));

    CHECK(roots_all(DensePolynomial({5.0})).roots.empty());
    CHECK_THROWS_AS(roots_all(DensePolynomial()), Error);
}

TEST_CASE("multiplicities and zeros at the origin")
{
    const auto p = poly_mul(from_roots({1.0, 1.0, 1.0, -2.0}), DensePolynomial({0.0, 0.0, 1.0}));
    const auto rs = roots_all(p);
    CHECK(has_root(rs, 1.0, 3, 1e-8));
    CHECK(has_root(rs, -2.0, 1, 1e-12));
    CHECK(has_root(rs, 0.0, 2, 0.0));

    // a four-fold root spreads beyond the clustering radius; the refined centre does not
    const auto q = from_roots({-1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0});
    const auto z = refine_multiple_root(q, cplx(-1.0002, 1e-4), 4);
    CHECK(std::abs(z + 1.0) < 1e-10);
}

TEST_CASE("backward error on larger degrees")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    for (int n : {20, 60, 200}) {
        std::vector<cplx> c(n + 1);
        for (auto& v : c) v = {nd(rng), nd(rng)};
        const auto rs = roots_all(DensePolynomial(c));
        int total = 0;
        for (const auto& r : rs.roots) total += r.multiplicity;
        CHECK(total == n);
        CHECK(rs.residual < 1e-12);
    }
    // integer roots 1..12 are still well separated in double precision
    std::vector<cplx> w;
    for (int k = 1; k <= 12; ++k) w.push_back(static_cast<double>(k));
    const auto rs = roots_all(from_roots(w));
    REQUIRE(rs.roots.size() == 12);
    for (int k = 0; k < 12; ++k) CHECK(std::abs(rs.roots[k].z - cplx(k + 1.0)) < 1e-5);
}

TEST_CASE("resultants")
{
    // Res(z - a, z - b) = a - b
    CHECK(std::abs(resultant(DensePolynomial({-2.0, 1.0}), DensePolynomial({-5.0, 1.0})) - cplx(-3.0)) < 1e-12);
    // common root
    const auto a = from_roots({1.0, cplx(0, 2)}), b = from_roots({cplx(0, 2), -3.0});
    CHECK(std::abs(resultant(a, b)) < 1e-10);
    // product formula lc(a)^m lc(b)^n prod(alpha - beta)
    const auto c = from_roots({1.0, 2.0}, 2.0), d = from_roots({-1.0}, 3.0);
    const cplx expect = std::pow(2.0, 1) * std::pow(3.0, 2) * (1.0 + 1.0) * (2.0 + 1.0);
    CHECK(std::abs(resultant(c, d) - expect) < 1e-9);
    double had = 0.0;
    sylvester_resultant(c.c, 2, d.c, 1, &had);
    CHECK(had > 0.0);
}
