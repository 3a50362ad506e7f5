#include "specnorm/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

namespace specnorm {

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Grad {
    std::vector<cplx> lo, hi;
};

cplx form(const std::vector<cplx>& w, cplx a, cplx b)
{
    // w already binomially weighted
    const int m = static_cast<int>(w.size()) - 1;
    if (std::abs(a) >= std::abs(b)) {
        if (a == 0.0) return m == 0 ? w[0] : cplx(0.0);
        const cplx t = b / a;
        cplx acc = 0.0;
        for (int j = m; j >= 0; --j) acc = acc * t + w[j];
        return acc * std::pow(a, m);
    }
    const cplx t = a / b;
    cplx acc = 0.0;
    for (int j = 0; j <= m; ++j) acc = acc * t + w[j];
    return acc * std::pow(b, m);
}

OracleResult run_one(const QubitState& st, const Grad& g, bool real, std::uint64_t seed, const OracleConfig& cfg)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    cplx x0, x1;
    if (real) {
        x0 = nd(rng);
        x1 = nd(rng);
    } else {
        const double a = nd(rng), b = nd(rng), c = nd(rng), e = nd(rng);
        x0 = {a, b};
        x1 = {c, e};
    }
    double n = std::sqrt(std::norm(x0) + std::norm(x1));
    if (n == 0.0) {
        x0 = 1.0;
        n = 1.0;
    }
    x0 /= n;
    x1 /= n;
    OracleResult best;
    auto consider = [&](cplx a, cplx b) {
        const double v = std::abs(eval_form(st, a, b));
        if (v > best.value) {
            best.value = v;
            best.argmax = {a, b};
        }
    };
    consider(x0, x1);
    // x <- conj(F(x)) up to phase; when that step loses value, blend in x
    // (a shifted ascent step) until it does not
    double alpha = 0.0;
    double cur = std::abs(eval_form(st, x0, x1));
    for (int it = 0; it < cfg.max_iters; ++it) {
        const cplx F0 = form(g.lo, x0, x1), F1 = form(g.hi, x0, x1);
        const cplx fx = x0 * F0 + x1 * F1;
        const cplx w = std::abs(fx) > 0.0 ? fx / std::abs(fx) : cplx(1.0);
        cplx y0, y1;
        double val = 0.0;
        for (int tries = 0; tries < 60; ++tries) {
            y0 = w * std::conj(F0) + alpha * x0;
            y1 = w * std::conj(F1) + alpha * x1;
            if (real) {
                y0 = y0.real();
                y1 = y1.real();
            }
            const double ny = std::sqrt(std::norm(y0) + std::norm(y1));
            if (ny == 0.0) break;
            y0 /= ny;
            y1 /= ny;
            val = std::abs(eval_form(st, y0, y1));
            if (val >= cur * (1.0 - 1e-15)) break;
            alpha = alpha == 0.0 ? std::max(cur, 1e-300) : 2.0 * alpha;
        }
        if (val < cur * (1.0 - 1e-15)) break;
        const cplx ip = std::conj(x0) * y0 + std::conj(x1) * y1;
        const double step = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(ip)));
        x0 = y0;
        x1 = y1;
        cur = val;
        consider(x0, x1);
        alpha *= 0.5;
        if (step < cfg.step_tol) break;
    }
    return best;
}

} // namespace

unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SPECNORM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

OracleResult oracle_max(const QubitState& st, Field field, const OracleConfig& cfg)
{
    const int d = st.d;
    Grad g;
    g.lo.resize(d);
    g.hi.resize(d);
    for (int j = 0; j < d; ++j) {
        g.lo[j] = binom(d - 1, j) * st.s[j];
        g.hi[j] = binom(d - 1, j) * st.s[j + 1];
    }
    const bool real = field == Field::real;
    const int R = std::max(1, cfg.restarts);
    std::vector<OracleResult> res(R);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < R; i = next++) res[i] = run_one(st, g, real, splitmix(cfg.seed ^ splitmix(i)), cfg);
    };
    const unsigned nt = std::min<unsigned>(worker_count(), static_cast<unsigned>(R));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    OracleResult best = res[0];
    for (int i = 1; i < R; ++i)
        if (res[i].value > best.value) best = res[i];
    return best;
}

} // namespace specnorm
