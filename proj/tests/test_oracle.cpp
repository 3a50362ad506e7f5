#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "specnorm/engine.hpp"
#include "specnorm/golden.hpp"
#include "specnorm/measures.hpp"
#include "specnorm/oracle.hpp"

using namespace specnorm;

TEST_CASE("oracle on simple states")
{
    const auto prod = make_real_state(3, {1, 0, 0, 0});
    const auto r = oracle_max(prod, Field::complex);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.argmax.x0) == doctest::Approx(1.0).epsilon(1e-9));

    const auto dicke = standard_basis_state(3, {1, 2});
    const auto rr = oracle_max(dicke, Field::real);
    CHECK(std::abs(rr.value - 2.0 / 3) < 1e-8);
    CHECK(rr.argmax.x0.imag() == 0.0);
    CHECK(rr.argmax.x1.imag() == 0.0);

    const auto a1 = load_appendix().front();
    const auto ra = oracle_max(a1.state(), Field::complex);
    CHECK(std::abs(ra.value - 0.7027) < 1e-4);
    CHECK(std::abs(std::abs(eval_form(a1.state(), ra.argmax.x0, ra.argmax.x1)) - ra.value) < 1e-10);
}

TEST_CASE("oracle determinism and restarts")
{
    std::mt19937_64 rng(31);
    const auto st = testing::random_state(7, rng);
    OracleConfig cfg;
    cfg.restarts = 8;
    const auto a = oracle_max(st, Field::complex, cfg);
    const auto b = oracle_max(st, Field::complex, cfg);
    CHECK(a.value == b.value);
    CHECK(a.argmax.x0 == b.argmax.x0);
    CHECK(a.argmax.x1 == b.argmax.x1);

    for (int k : {1, 2, 4, 16}) {
        const auto st2 = testing::random_state(6, rng, true);
        for (auto f : {Field::complex, Field::real}) {
            OracleConfig lo, hi;
            lo.restarts = k;
            hi.restarts = 2 * k;
            CHECK(oracle_max(st2, f, hi).value >= oracle_max(st2, f, lo).value);
        }
    }
}

TEST_CASE("oracle is a lower bound")
{
    std::mt19937_64 rng(37);
    for (int d = 3; d <= 9; ++d)
        for (int i = 0; i < 3; ++i) {
            const auto st = testing::random_state(d, rng, i % 2 == 0);
            const double s = spectral_norm(st, Field::complex).sigma;
            const auto r = oracle_max(st, Field::complex);
            CHECK(r.value <= s + 1e-8);
            CHECK(std::abs(std::abs(eval_form(st, r.argmax.x0, r.argmax.x1)) - r.value) < 1e-10);
        }
    // non-converging starts still return a valid iterate
    const auto fam = family_state(2);
    OracleConfig cfg;
    cfg.max_iters = 3;
    CHECK(oracle_max(fam, Field::complex, cfg).value <= std::sqrt(3.0 / 8) + 1e-8);
}
