#include "specnorm/measures.hpp"

#include <cmath>

#include "specnorm/engine.hpp"

namespace specnorm {

namespace {

void check_index(int d, const BasisIndex& j, size_t n)
{
    if (j.size() != n && n != 0) throw Error(ErrorCode::BadIndex, "index must have " + std::to_string(n) + " entries");
    if (j.size() < 2) throw Error(ErrorCode::BadIndex, "index needs at least two entries");
    int sum = 0;
    for (int v : j) {
        if (v < 0) throw Error(ErrorCode::BadIndex, "negative index entry");
        sum += v;
    }
    if (sum != d) throw Error(ErrorCode::BadIndex, "index entries must sum to d = " + std::to_string(d));
}

} // namespace

MeasureReport measure_from_sigma(double sigma, int d)
{
    MeasureReport r;
    r.d = d;
    r.sigma_used = sigma;
    r.eta = -2.0 * std::log2(sigma) + 0.0;
    r.eta_rel = r.eta - std::log2(d + 1.0);
    return r;
}

MeasureReport measure_report(const QubitState& st)
{
    if (std::abs(hs_norm(st) - 1.0) > 1e-8) throw Error(ErrorCode::NotAState, "eta needs hs_norm = 1");
    return measure_from_sigma(spectral_norm(st, Field::complex).sigma, st.d);
}

double eta(const QubitState& st) { return measure_report(st).eta; }

double eta_rel(const QubitState& st) { return measure_report(st).eta_rel; }

QubitState standard_basis_state(int d, const BasisIndex& j)
{
    check_index(d, j, 2);
    std::vector<cplx> s(d + 1, 0.0);
    s[j[1]] = std::exp(0.5 * (std::lgamma(j[0] + 1.0) + std::lgamma(j[1] + 1.0) - std::lgamma(d + 1.0)));
    return make_state(d, s);
}

double standard_basis_sigma(int d, const BasisIndex& j)
{
    check_index(d, j, 0);
    // 0^0 = 1
    double l = std::lgamma(d + 1.0) - d * std::log(static_cast<double>(d));
    for (int v : j)
        if (v > 0) l += v * std::log(static_cast<double>(v)) - std::lgamma(v + 1.0);
    return std::exp(0.5 * l);
}

BasisIndex balanced_index(int d, int n)
{
    const int up = (d + n - 1) / n;
    const int l = n * up - d;
    BasisIndex j(n, up);
    for (int i = 0; i < l; ++i) j[i] = up - 1;
    return j;
}

EtaBounds eta_sym_bounds(int d, int n)
{
    if (d < 2 || n < 2) throw Error(ErrorCode::BadIndex, "eta_sym_bounds needs d, n >= 2");
    EtaBounds b;
    b.lower = -2.0 * std::log2(standard_basis_sigma(d, balanced_index(d, n)));
    b.upper = log_binom(n + d - 1, n - 1) / std::log(2.0);
    b.asymptotic = 0.5 * ((n - 1) * std::log2(static_cast<double>(d)) - n * std::log2(static_cast<double>(n)));
    return b;
}

} // namespace specnorm
