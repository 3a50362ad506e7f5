#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "specnorm/engine.hpp"
#include "specnorm/oracle.hpp"

using namespace specnorm;

namespace {

const double r3 = std::sqrt(3.0);

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InputError;
}

bool coeffs_near(const DensePolynomial& p, std::vector<cplx> want, double tol = 1e-12)
{
    want.resize(std::max<size_t>(want.size(), p.c.size()), 0.0);
    for (size_t k = 0; k < want.size(); ++k) {
        const cplx got = k < p.c.size() ? p.c[k] : cplx(0.0);
        if (std::abs(got - want[k]) > tol) return false;
    }
    return true;
}

} // namespace

TEST_CASE("build_pq")
{
    auto pq = build_pq(make_real_state(3, {1, 0, 0, 0}));
    CHECK(pq.p.is_zero());
    CHECK(coeffs_near(pq.q, {1.0}));

    pq = build_pq(make_real_state(3, {0, 0.5, 0, -0.5}));
    CHECK(coeffs_near(pq.p, {0.5, 0.0, -0.5}));
    CHECK(coeffs_near(pq.q, {0.0, 1.0}));

    pq = build_pq(make_real_state(3, {0, 0, 1 / r3, 0}));
    CHECK(coeffs_near(pq.p, {0.0, 2 / r3}));
    CHECK(coeffs_near(pq.q, {0.0, 0.0, 1 / r3}));
}

TEST_CASE("p and q against phi")
{
    std::mt19937_64 rng(3);
    for (int d : {3, 5, 8}) {
        const auto st = testing::random_state(d, rng);
        std::vector<cplx> phi(d + 1);
        for (int k = 0; k <= d; ++k) phi[k] = binom(d, k) * st.s[k];
        const auto pq = build_pq(st);
        for (int k = 0; k < d; ++k) {
            const cplx dphi = (k + 1.0) * phi[k + 1];
            CHECK(std::abs(static_cast<double>(d) * pq.p.c[k] - dphi) < 1e-10);
            CHECK(std::abs(pq.q.c[k] - (phi[k] - static_cast<double>(k) / d * phi[k])) < 1e-10);
        }
    }
}

TEST_CASE("build_uv")
{
    auto uv = build_uv(make_real_state(3, {1, 0, 0, 0}));
    CHECK(uv.u.is_zero());
    CHECK(coeffs_near(uv.v, {1.0}));
    uv = build_uv(make_real_state(3, {1, 0, 0, 1}));
    CHECK(coeffs_near(uv.u, {0.0, 0.0, 0.0, 0.0, 1.0}));
    CHECK(coeffs_near(uv.v, {1.0}));

    // compositions sampled at random points
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int d : {3, 4, 7}) {
        const auto st = testing::random_state(d, rng);
        const auto pq = build_pq(st);
        uv = build_uv(st);
        for (int i = 0; i < 50; ++i) {
            const cplx z(nd(rng), nd(rng));
            const cplx p = poly_eval(pq.p, z), q = poly_eval(pq.q, z);
            cplx u = 0.0, v = 0.0;
            for (int j = 0; j < d; ++j) {
                const cplx t = binom(d - 1, j) * std::pow(p, j) * std::pow(q, d - 1 - j);
                u += std::conj(st.s[j + 1]) * t;
                v += std::conj(st.s[j]) * t;
            }
            CHECK(std::abs(poly_eval(uv.u, z) - u) <= 1e-8 * std::max(1.0, std::abs(u)));
            CHECK(std::abs(poly_eval(uv.v, z) - v) <= 1e-8 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("fixed-point polynomial degree")
{
    std::mt19937_64 rng(9);
    for (int d = 3; d <= 9; ++d) {
        const auto fp = fixed_point_polynomial(testing::random_state(d, rng));
        CHECK_FALSE(fp.vanishes);
        CHECK(fp.f.degree() <= (d - 1) * (d - 1) + 1);
        CHECK(fp.raw.size() == static_cast<size_t>((d - 1) * (d - 1) + 2));
    }
    CHECK(fixed_point_polynomial(make_real_state(4, {1, 0, -1.0 / 3, 0, 1})).vanishes);
}

TEST_CASE("candidate roots of the cubic with roots +-1/sqrt3, +-i")
{
    const auto st = make_real_state(3, {0, 0.5, 0, -0.5});
    const auto cands = candidate_roots(st);
    const std::vector<cplx> want{1 / r3, -1 / r3, cplx(0, 1), cplx(0, -1)};
    for (auto w : want) {
        const bool found = std::any_of(cands.begin(), cands.end(), [&](const CandidateRoot& c) {
            return c.in_R && std::abs(c.z - w) <= 1e-6;
        });
        CHECK_MESSAGE(found, "root " << w);
    }
    for (const auto& c : cands) {
        CHECK(c.in_R1);
        if (c.in_Rprime) CHECK(c.in_R);
    }
    const auto rc = spectral_norm(st, Field::complex), rr = spectral_norm(st, Field::real);
    CHECK(rc.sigma == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    CHECK(rr.sigma == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(std::abs(eval_form(st, rc.witness.x0, rc.witness.x1)) - rc.sigma) < 1e-8);
    CHECK(rr.witness.x0.imag() == 0.0);
    CHECK(rr.witness.x1.imag() == 0.0);
    // witness at z = i
    const auto x = witness(st, cplx(0, 1));
    CHECK(std::abs(std::abs(eval_form(st, x.x0, x.x1)) - std::sqrt(0.5)) < 1e-6);
}

TEST_CASE("sum of cubes")
{
    const auto st = make_real_state(3, {1, 0, 0, 1});
    const auto cands = candidate_roots(st);
    REQUIRE(cands.size() == 4);
    for (const auto& c : cands) {
        CHECK(c.in_R);
        if (std::abs(c.z) < 1e-9) CHECK(c.lambda_q == doctest::Approx(1.0));
        if (std::abs(c.z - 1.0) < 1e-9) CHECK(c.lambda_q == doctest::Approx(1 / std::sqrt(2.0)));
    }
    const auto r = spectral_norm(st, Field::complex);
    CHECK(r.sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(eval_form(st, r.witness.x0, r.witness.x1)) - 1.0) < 1e-12);
    CHECK(is_nonsingular(st));

    const auto cs = anti_eigen_census(st);
    CHECK(cs.fixed_point_degree == 4);
    CHECK(cs.mu_reported == 5);  // four finite roots and the point at infinity
    CHECK(cs.lower_bound == 1);
    CHECK(cs.upper_bound == 5);
    CHECK(cs.bounds_satisfied.value_or(false));
}

TEST_CASE("special inputs")
{
    auto r = spectral_norm(make_real_state(3, {0, 0, 0, 1}), Field::complex);
    CHECK(r.sigma == 1.0);
    CHECK(r.method == Method::generic);
    CHECK(r.witness_at_infinity);
    CHECK(std::abs(r.witness.x1 - cplx(1.0)) < 1e-15);
    r = spectral_norm(make_state(3, {0.0, 0.0, 0.0, cplx(0.0, -2.5)}), Field::complex);
    CHECK(r.sigma == doctest::Approx(2.5));

    CHECK(spectral_norm(make_real_state(3, {0, 0, 1 / r3, 0}), Field::complex).sigma ==
          doctest::Approx(2.0 / 3).epsilon(1e-10));

    CHECK(code_of([] { spectral_norm(make_real_state(3, {0, 0, 0, 0}), Field::complex); }) == ErrorCode::ZeroState);
    CHECK(code_of([] { spectral_norm(make_state(3, {1.0, cplx(0, 1), 0.0, 0.0}), Field::real); }) ==
          ErrorCode::NotReal);
    CHECK(code_of([] { spectral_norm_generic(make_real_state(4, {1, 0, -1.0 / 3, 0, 1}), Field::complex); }) ==
          ErrorCode::ExceptionalFamily);
    CHECK(code_of([] { candidate_roots(make_real_state(4, {1, 0, -1.0 / 3, 0, 1})); }) ==
          ErrorCode::ExceptionalFamily);
}

TEST_CASE("witness construction")
{
    const auto st = make_real_state(3, {1, 0.2, 0, 0});
    const auto x = witness(st, cplx(0.0));
    CHECK(std::abs(x.x0 - cplx(1.0)) < 1e-15);
    CHECK(std::abs(x.x1) < 1e-15);
    const auto y = witness(make_real_state(3, {0, 0, 0.3, 1}), std::nullopt);
    CHECK(std::abs(y.x1 - cplx(1.0)) < 1e-15);
    CHECK(code_of([] { witness(make_real_state(3, {1, 0, 0, 0}), std::nullopt); }) == ErrorCode::SdVanishes);
    CHECK(code_of([] { witness(make_real_state(3, {0, 0, 0, 1}), cplx(0.0)); }) == ErrorCode::QVanishes);
}

TEST_CASE("nonsingularity")
{
    CHECK(is_nonsingular(make_real_state(3, {1, 0, 0, 1})));
    CHECK_FALSE(is_nonsingular(make_real_state(3, {1, 0, 0, 0})));
    CHECK_FALSE(is_nonsingular(make_real_state(3, {0, 0, 1 / r3, 0})));
    CHECK(census_lower_bound(3) == 1);
    CHECK(census_upper_bound(3) == 5);
}

TEST_CASE("quadratic forms use the matrix path")
{
    std::mt19937_64 rng(13);
    OracleConfig cfg;
    cfg.restarts = 16;
    for (int i = 0; i < 20; ++i) {
        const bool real = i % 2 == 0;
        const auto st = testing::random_state(2, rng, real);
        const auto rc = spectral_norm(st, Field::complex);
        CHECK(rc.method == Method::matrix_d2);
        CHECK(std::abs(std::abs(eval_form(st, rc.witness.x0, rc.witness.x1)) - rc.sigma) < 1e-10);
        CHECK(std::abs(oracle_max(st, Field::complex, cfg).value - rc.sigma) < 1e-8);
        if (real) {
            const auto rr = spectral_norm(st, Field::real);
            CHECK(std::abs(oracle_max(st, Field::real, cfg).value - rr.sigma) < 1e-8);
            CHECK(std::abs(std::abs(eval_form(st, rr.witness.x0, rr.witness.x1)) - rr.sigma) < 1e-10);
        }
    }
}

TEST_CASE("random states against the oracle and a real grid")
{
    std::mt19937_64 rng(17);
    for (int d = 3; d <= 8; ++d)
        for (int i = 0; i < 4; ++i) {
            const auto st = testing::random_state(d, rng, true);
            const auto rc = spectral_norm(st, Field::complex);
            const auto rr = spectral_norm(st, Field::real);
            CHECK(std::abs(rc.sigma - rc.sigma_check) < 1e-6);
            CHECK(rr.sigma <= rc.sigma + 1e-9);
            const double grid = testing::real_grid_max(st, 20000);
            CHECK(grid <= rr.sigma + 1e-9);
            CHECK(rr.sigma - grid < 1e-5);
            const double orc = oracle_max(st, Field::complex).value;
            CHECK(orc <= rc.sigma + 1e-8);
            CHECK(rc.sigma - orc < 1e-4);
        }
}

TEST_CASE("large degree generic states are not mistaken for the exceptional family")
{
    for (int seed : {8, 9, 12}) {
        std::mt19937_64 rng(seed * 7919);
        const auto st = testing::random_state(32, rng);
        CHECK_FALSE(fixed_point_polynomial(st).vanishes);
        const auto r = spectral_norm(st, Field::complex);
        CHECK(r.method == Method::generic);
        CHECK(std::abs(r.sigma - r.sigma_check) < 1e-6);
        CHECK(std::abs(std::abs(eval_form(st, r.witness.x0, r.witness.x1)) - r.sigma) < 1e-8);
        CHECK(oracle_max(st, Field::complex).value <= r.sigma + 1e-8);
    }
}
