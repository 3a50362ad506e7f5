#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "specnorm/core.hpp"

namespace testing {

using specnorm::cplx;

inline specnorm::QubitState random_state(int d, std::mt19937_64& rng, bool real = false)
{
    std::normal_distribution<double> nd;
    std::vector<cplx> s(d + 1);
    for (auto& c : s) c = real ? cplx(nd(rng)) : cplx(nd(rng), nd(rng));
    return specnorm::normalize(specnorm::make_state(d, s));
}

// max |f(cos t, sin t)| on a uniform grid of the real circle
inline double real_grid_max(const specnorm::QubitState& st, int n = 100000)
{
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = M_PI * i / n;
        best = std::max(best, std::abs(specnorm::eval_form(st, std::cos(t), std::sin(t))));
    }
    return best;
}

// Direct expansion of f, no Horner
inline cplx naive_form(const specnorm::QubitState& st, cplx x0, cplx x1)
{
    cplx acc = 0.0;
    for (int k = 0; k <= st.d; ++k)
        acc += specnorm::binom(st.d, k) * st.s[k] * std::pow(x0, st.d - k) * std::pow(x1, k);
    return acc;
}

} // namespace testing
