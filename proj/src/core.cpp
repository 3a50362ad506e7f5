#include "specnorm/core.hpp"

#include <cmath>

namespace specnorm {

const char* error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::WrongLength: return "WrongLength";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::ExceptionalFamily: return "ExceptionalFamily";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::QVanishes: return "QVanishes";
    case ErrorCode::SdVanishes: return "SdVanishes";
    case ErrorCode::ClassificationFailure: return "ClassificationFailure";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::BracketNotReached: return "BracketNotReached";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::InputError: return "InputError";
    }
    return "Unknown";
}

const char* field_name(Field f)
{
    return f == Field::complex ? "complex" : "real";
}

double log_binom(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binom(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    // exact while the value stays below 2^53
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

QubitState make_state(int d, const std::vector<cplx>& coeffs)
{
    if (d < 2) throw Error(ErrorCode::DegreeTooSmall, "d must be at least 2, got " + std::to_string(d));
    if (coeffs.size() != static_cast<size_t>(d) + 1)
        throw Error(ErrorCode::WrongLength, "expected " + std::to_string(d + 1) + " coefficients, got " +
                                                std::to_string(coeffs.size()));
    QubitState st;
    st.d = d;
    st.s = coeffs;
    st.is_real = true;
    for (const auto& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorCode::NonFinite, "coefficient is NaN or infinite");
        if (c.imag() != 0.0) st.is_real = false;
    }
    return st;
}

QubitState make_real_state(int d, const std::vector<double>& coeffs)
{
    return make_state(d, std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

double hs_norm(const QubitState& st)
{
    double acc = 0.0;
    for (int k = 0; k <= st.d; ++k) acc += binom(st.d, k) * std::norm(st.s[k]);
    return std::sqrt(acc);
}

QubitState normalize(const QubitState& st)
{
    const double n = hs_norm(st);
    if (!(n > 0.0)) throw Error(ErrorCode::ZeroState, "cannot normalize the zero state");
    QubitState r = st;
    for (auto& c : r.s) c /= n;
    return r;
}

QubitState conjugate(const QubitState& st)
{
    QubitState r = st;
    for (auto& c : r.s) c = std::conj(c);
    return r;
}

QubitState scale(const QubitState& st, cplx c)
{
    std::vector<cplx> s = st.s;
    for (auto& v : s) v *= c;
    return make_state(st.d, s);
}

cplx eval_form(const QubitState& st, cplx x0, cplx x1)
{
    const int d = st.d;
    // Horner in the smaller ratio keeps powers bounded
    if (std::abs(x1) <= std::abs(x0)) {
        if (x0 == 0.0) return 0.0;
        const cplx t = x1 / x0;
        cplx acc = 0.0;
        for (int j = d; j >= 0; --j) acc = acc * t + binom(d, j) * st.s[j];
        return acc * std::pow(x0, d);
    }
    const cplx t = x0 / x1;
    cplx acc = 0.0;
    for (int j = 0; j <= d; ++j) acc = acc * t + binom(d, j) * st.s[j];
    return acc * std::pow(x1, d);
}

Mat2 mat_mul(const Mat2& a, const Mat2& b)
{
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

bool is_unitary(const Mat2& U, double tol)
{
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx g = std::conj(U[0][i]) * U[0][j] + std::conj(U[1][i]) * U[1][j];
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    return true;
}

namespace {

// (a + b t)^n as a coefficient vector in t
std::vector<cplx> linear_power(cplx a, cplx b, int n)
{
    std::vector<cplx> r{1.0};
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> next(r.size() + 1, 0.0);
        for (size_t k = 0; k < r.size(); ++k) {
            next[k] += r[k] * a;
            next[k + 1] += r[k] * b;
        }
        r.swap(next);
    }
    return r;
}

} // namespace

QubitState apply_unitary(const QubitState& st, const Mat2& U)
{
    if (!is_unitary(U)) throw Error(ErrorCode::NotUnitary, "matrix is not unitary within 1e-10");
    const int d = st.d;
    // y0 = U00 + U01 t, y1 = U10 + U11 t with t = x1/x0
    std::vector<std::vector<cplx>> p0(d + 1), p1(d + 1);
    for (int n = 0; n <= d; ++n) {
        p0[n] = linear_power(U[0][0], U[0][1], n);
        p1[n] = linear_power(U[1][0], U[1][1], n);
    }
    std::vector<cplx> phi(d + 1, 0.0);
    for (int j = 0; j <= d; ++j) {
        if (st.s[j] == 0.0) continue;
        const cplx w = binom(d, j) * st.s[j];
        const auto& a = p0[d - j];
        const auto& b = p1[j];
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t k = 0; k < b.size(); ++k) phi[i + k] += w * a[i] * b[k];
    }
    for (int k = 0; k <= d; ++k) phi[k] /= binom(d, k);
    return make_state(d, phi);
}

} // namespace specnorm
