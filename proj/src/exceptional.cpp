#include "specnorm/exceptional.hpp"

#include <algorithm>
#include <cmath>

namespace specnorm {

namespace {

// phi coefficients C(d,k) s_k
std::vector<cplx> phi_coeffs(const QubitState& st)
{
    std::vector<cplx> c(st.d + 1);
    for (int k = 0; k <= st.d; ++k) c[k] = binom(st.d, k) * st.s[k];
    return c;
}

bool reconstructs(const QubitState& st, cplx A, const std::vector<Root>& roots, double tol)
{
    std::vector<cplx> r{A};
    for (const auto& rt : roots)
        for (int i = 0; i < rt.multiplicity; ++i) {
            std::vector<cplx> next(r.size() + 1, 0.0);
            for (size_t k = 0; k < r.size(); ++k) {
                next[k] -= rt.z * r[k];
                next[k + 1] += r[k];
            }
            r.swap(next);
        }
    const auto phi = phi_coeffs(st);
    if (r.size() != phi.size()) return false;
    double scale = 0.0, err = 0.0;
    for (size_t k = 0; k < phi.size(); ++k) {
        scale = std::max(scale, std::abs(phi[k]));
        err = std::max(err, std::abs(phi[k] - r[k]));
    }
    return err <= tol * scale;
}

void fill_alpha_beta(ExceptionalClass& cls, int d)
{
    const double c = cls.c;
    cls.alpha = (d - cls.p) * c - cls.p / c;
    cls.beta = cls.p * c - (d - cls.p) / c;
}

// lambda_q at a finite point, in the scale of st
double lambda_q_at(const QubitState& st, cplx z)
{
    const int d = st.d;
    const double n = std::hypot(1.0, std::abs(z));
    std::vector<cplx> lo(d);
    for (int j = 0; j < d; ++j) lo[j] = st.s[j];
    QubitState q;
    q.d = d - 1;
    q.s = lo;
    // F0 at the unit point times n
    return std::abs(eval_form(q, 1.0 / n, z / n)) * n;
}

} // namespace

const char* exceptional_kind_name(ExceptionalKind k)
{
    switch (k) {
    case ExceptionalKind::not_exceptional: return "not_exceptional";
    case ExceptionalKind::monomial: return "monomial";
    case ExceptionalKind::two_root: return "two_root";
    case ExceptionalKind::circle: return "circle";
    }
    return "unknown";
}

ExceptionalClass detect_exceptional(const QubitState& st, double tol_zero)
{
    ExceptionalClass cls;
    const int d = st.d;
    if (d < 3) return cls;
    EngineOptions opt;
    opt.zero_poly = tol_zero;
    const QubitState unit = normalize(st);
    if (!fixed_point_polynomial(unit, opt).vanishes) return cls;

    int nz = 0, kk = -1;
    for (int k = 0; k <= d; ++k)
        if (std::abs(unit.s[k]) > 1e-12) {
            ++nz;
            kk = k;
        }
    if (nz == 1 && kk >= 1 && kk <= d - 1) {
        cls.kind = ExceptionalKind::monomial;
        cls.A = st.s[kk];
        cls.k = kk;
        cls.roots = {{0.0, kk}};
        return cls;
    }
    if (std::abs(unit.s[d]) <= 1e-12)
        throw Error(ErrorCode::ClassificationFailure, "zv - u vanishes but phi has degree below d");

    const DensePolynomial phi(phi_coeffs(unit));
    const RootSet rs = roots_all(phi, 1e-8);
    cplx far = 0.0;
    for (const auto& r : rs.roots)
        if (std::abs(r.z) > std::abs(far)) far = r.z;
    if (far == 0.0) throw Error(ErrorCode::ClassificationFailure, "phi has only the root 0");
    const cplx dir = far / std::abs(far);
    cplx sum[2] = {0.0, 0.0};
    int mult[2] = {0, 0};
    for (const auto& r : rs.roots) {
        const int g = (r.z * std::conj(dir)).real() >= 0.0 ? 0 : 1;
        sum[g] += static_cast<double>(r.multiplicity) * r.z;
        mult[g] += r.multiplicity;
    }
    if (mult[1] == 0) throw Error(ErrorCode::ClassificationFailure, "phi has a single root cluster away from 0");
    Root g0{refine_multiple_root(phi, sum[0] / static_cast<double>(mult[0]), mult[0]), mult[0]};
    Root g1{refine_multiple_root(phi, sum[1] / static_cast<double>(mult[1]), mult[1]), mult[1]};
    if (!reconstructs(unit, unit.s[d], {g0, g1}, 1e-6))
        throw Error(ErrorCode::ClassificationFailure, "phi does not factor over two root clusters");
    if (std::abs(std::abs(g0.z * g1.z) - 1.0) > 1e-6)
        throw Error(ErrorCode::ClassificationFailure, "root pair does not satisfy |ab| = 1");
    const cplx ratio = g1.z / g0.z;
    if (std::abs(ratio.imag()) > 1e-6 * std::abs(ratio) || ratio.real() >= 0.0)
        throw Error(ErrorCode::ClassificationFailure, "roots are not on opposite sides of 0");

    // -a is the higher-multiplicity root; ties go to the smaller modulus
    auto first = [](const Root& x, const Root& y) {
        if (x.multiplicity != y.multiplicity) return x.multiplicity > y.multiplicity;
        if (std::abs(std::abs(x.z) - std::abs(y.z)) > 1e-9) return std::abs(x.z) < std::abs(y.z);
        if (x.z.real() != y.z.real()) return x.z.real() < y.z.real();
        return x.z.imag() < y.z.imag();
    };
    if (!first(g0, g1)) std::swap(g0, g1);
    cls.roots = {g0, g1};
    cls.A = st.s[d];
    cls.p = g0.multiplicity;
    const cplx a = -g0.z;
    if (unit.is_real && std::abs(a.imag()) <= 1e-9 * std::abs(a)) {
        cls.c = a.real();
        cls.phase_s = 0.0;
    } else {
        cls.c = std::abs(a);
        cls.phase_s = -std::arg(a);
    }
    fill_alpha_beta(cls, d);
    const bool unit_pair = std::abs(std::abs(cls.c) - 1.0) <= 1e-6;
    const bool imaginary = std::abs(g0.z.real()) <= 1e-6 && std::abs(g1.z.real()) <= 1e-6;
    if (d % 2 == 0 && cls.p == d / 2 && unit_pair && imaginary) cls.kind = ExceptionalKind::circle;
    else cls.kind = ExceptionalKind::two_root;
    return cls;
}

double norm_monomial(const ExceptionalClass& cls, int d)
{
    if (cls.kind != ExceptionalKind::monomial) throw Error(ErrorCode::WrongKind, "norm_monomial needs a monomial class");
    const int k = cls.k;
    const double r = static_cast<double>(k) / d;
    return std::abs(cls.A) * binom(d, k) * std::pow(1.0 - r, (d - k) / 2.0) * std::pow(r, k / 2.0);
}

SpectralResult monomial_result(const ExceptionalClass& cls, int d, Field field)
{
    SpectralResult r;
    r.field = field;
    r.method = Method::exceptional_monomial;
    r.sigma = r.sigma_check = norm_monomial(cls, d);
    const double r1 = static_cast<double>(cls.k) / d;
    r.witness = {std::sqrt(1.0 - r1), std::sqrt(r1)};
    r.witness_root = std::sqrt(r1 / (1.0 - r1));
    return r;
}

SpectralResult norm_two_root_real(const ExceptionalClass& cls, const QubitState& st)
{
    if (cls.kind != ExceptionalKind::two_root && cls.kind != ExceptionalKind::circle)
        throw Error(ErrorCode::WrongKind, "norm_two_root_real needs a two_root or circle class");
    if (!st.is_real) throw Error(ErrorCode::NotReal, "real spectral norm of a complex state");
    SpectralResult r;
    r.field = Field::real;
    r.method = Method::exceptional_real;
    if (cls.kind == ExceptionalKind::circle) {
        r.sigma = r.sigma_check = std::abs(st.s[0]);
        r.witness = {1.0, 0.0};
        r.witness_root = 0.0;
        return r;
    }
    const int d = st.d;
    const double al = cls.alpha, be = cls.beta;
    std::vector<double> ts;
    if (std::abs(be) <= 1e-12) {
        ts.push_back(std::abs(al) <= 1e-12 ? 0.0 : -al / (2.0 * d));
    } else {
        const double disc = static_cast<double>(d) * d + al * be;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            // stable pair: t1 t2 = -alpha/beta
            const double t1 = (d + std::copysign(sq, static_cast<double>(d))) / be;
            ts.push_back(t1);
            if (t1 != 0.0) ts.push_back(-al / (be * t1));
            else ts.push_back(2.0 * d / be);
        }
    }
    double best = std::abs(st.s[d]);
    r.witness = {0.0, 1.0};
    r.witness_at_infinity = true;
    for (double t : ts) {
        const double lq = lambda_q_at(st, t);
        if (lq > best) {
            best = lq;
            const double n = std::hypot(1.0, t);
            r.witness = {1.0 / n, t / n};
            r.witness_root = t;
            r.witness_at_infinity = false;
        }
    }
    r.sigma = r.sigma_check = best;
    return r;
}

QubitState perturb(const QubitState& st, double eps, PerturbScheme scheme)
{
    std::vector<cplx> s = st.s;
    if (scheme == PerturbScheme::normalized_shift) {
        s[st.d] += eps;
    } else {
        s[st.d] *= std::sqrt(1.0 - eps);
        s[0] *= std::sqrt(1.0 + eps);
    }
    return normalize(make_state(st.d, s));
}

SpectralResult bracket_at(const QubitState& st, double eps, PerturbScheme scheme, Field field)
{
    const double hs = hs_norm(st);
    const QubitState unit = normalize(st);
    const QubitState pert = perturb(unit, eps, scheme);
    std::vector<cplx> diff(st.d + 1);
    for (int k = 0; k <= st.d; ++k) diff[k] = pert.s[k] - unit.s[k];
    QubitState dst;
    dst.d = st.d;
    dst.s = diff;
    SpectralResult r = spectral_norm_generic(pert, field);
    r.method = Method::exceptional_bracket;
    r.sigma *= hs;
    r.sigma_check *= hs;
    r.bracket_halfwidth = hs_norm(dst) * hs;
    return r;
}

SpectralResult norm_two_root_complex(const ExceptionalClass& cls, const QubitState& st, double eps_target,
                                     PerturbScheme scheme)
{
    if (cls.kind != ExceptionalKind::two_root && cls.kind != ExceptionalKind::circle)
        throw Error(ErrorCode::WrongKind, "norm_two_root_complex needs a two_root or circle class");
    const double hs = hs_norm(st);
    for (double eps = eps_target / 2.0; eps > 1e-300; eps /= 2.0) {
        if (fixed_point_polynomial(perturb(normalize(st), eps, scheme)).vanishes) continue;
        try {
            SpectralResult r = bracket_at(st, eps, scheme, Field::complex);
            if (r.bracket_halfwidth <= eps_target * hs) return r;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ExceptionalFamily) throw;
        }
    }
    throw Error(ErrorCode::BracketNotReached, "perturbation underflowed before leaving the exceptional family");
}

} // namespace specnorm
