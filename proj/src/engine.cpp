#include "specnorm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "specnorm/exceptional.hpp"

namespace specnorm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Dual {
    cplx v, d;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

Dual dpow(Dual a, int n)
{
    Dual r{1.0, 0.0};
    while (n > 0) {
        if (n & 1) r = r * a;
        a = a * a;
        n >>= 1;
    }
    return r;
}

// Everything needed to evaluate F, H and the fixed-point map of a unit state
// at a point of the projective line, with derivatives in the affine chart.
struct Evaluator {
    int d;
    int m;  // d - 1
    std::vector<double> cb;       // C(d-1, j)
    std::vector<cplx> lo, hi;     // s_0..s_{d-1}, s_1..s_d scaled by C(d-1,j)
    std::vector<cplx> clo, chi;   // conjugates

    explicit Evaluator(const QubitState& st) : d(st.d), m(st.d - 1)
    {
        cb.resize(m + 1);
        lo.resize(m + 1);
        hi.resize(m + 1);
        clo.resize(m + 1);
        chi.resize(m + 1);
        for (int j = 0; j <= m; ++j) {
            cb[j] = binom(m, j);
            lo[j] = cb[j] * st.s[j];
            hi[j] = cb[j] * st.s[j + 1];
            clo[j] = cb[j] * std::conj(st.s[j]);
            chi[j] = cb[j] * std::conj(st.s[j + 1]);
        }
    }

    // sum_j w_j a^(m-j) b^j with w already binomially weighted
    static Dual form(const std::vector<cplx>& w, Dual a, Dual b)
    {
        const int m = static_cast<int>(w.size()) - 1;
        if (m == 0) return {w[0], 0.0};
        if (a.v == 0.0 && b.v == 0.0) {
            if (m == 1) return {0.0, w[0] * a.d + w[1] * b.d};
            return {0.0, 0.0};
        }
        if (std::abs(a.v) >= std::abs(b.v)) {
            const Dual t = b / a;
            Dual acc{w[m], 0.0};
            for (int j = m - 1; j >= 0; --j) acc = acc * t + Dual{w[j], 0.0};
            return acc * dpow(a, m);
        }
        const Dual t = a / b;
        Dual acc{w[0], 0.0};
        for (int j = 1; j <= m; ++j) acc = acc * t + Dual{w[j], 0.0};
        return acc * dpow(b, m);
    }

    struct Point {
        double n;     // sqrt(1 + |z|^2)
        Dual x0, x1;  // unit representative, derivative in z with n frozen
        Dual F0, F1;  // q and p, homogeneous
        Dual V, U;
        Dual G;       // x1 V - x0 U
    };

    Point at(cplx z, bool with_h = true) const
    {
        Point P;
        P.n = std::hypot(1.0, std::abs(z));
        P.x0 = {1.0 / P.n, 0.0};
        P.x1 = {z / P.n, 1.0 / P.n};
        P.F0 = form(lo, P.x0, P.x1);
        P.F1 = form(hi, P.x0, P.x1);
        if (with_h) {
            P.V = form(clo, P.F0, P.F1);
            P.U = form(chi, P.F0, P.F1);
            P.G = P.x1 * P.V - P.x0 * P.U;
        }
        return P;
    }

    // |zbar q - p| / n^d
    static double r_residual(const Point& P)
    {
        return std::abs(std::conj(P.x1.v) * P.F0.v - std::conj(P.x0.v) * P.F1.v);
    }
    static double lambda_q(const Point& P) { return std::abs(P.F0.v) * P.n; }
    double lambda_v(const Point& P) const
    {
        return std::pow(std::abs(P.V.v), 1.0 / d) * std::pow(P.n, 1.0 / d);
    }
};

std::vector<cplx> conv(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    std::vector<cplx> r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

std::vector<double> conv(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

struct NormalizedInput {
    QubitState st;  // unit state
    double hs;
};

NormalizedInput prepare(const QubitState& st)
{
    const double hs = hs_norm(st);
    if (!(hs > 0.0)) throw Error(ErrorCode::ZeroState, "spectral norm of the zero state");
    return {normalize(st), hs};
}

// Newton on the composed map, with a guard against jumping to a neighbour.
cplx polish(const Evaluator& ev, cplx z, double sep, bool anti)
{
    auto value = [&](cplx w) {
        auto P = ev.at(w, anti);
        if (anti) return P.G;
        // t q(t) - p(t), homogeneous
        return P.x1 * P.F0 - P.x0 * P.F1;
    };
    const cplx z0 = z;
    const double g0 = std::abs(value(z).v);
    if (g0 == 0.0) return z;
    for (int it = 0; it < 16; ++it) {
        const Dual g = value(z);
        if (g.d == 0.0) break;
        const cplx step = g.v / g.d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(z - z0) > 0.25 * sep) return z0;
        if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
    }
    return std::abs(value(z).v) <= g0 ? z : z0;
}

// Simultaneous Aberth steps on the composed map. The expanded zv - u loses
// up to ~12 digits per coefficient to cancellation at d ~ 30, while the
// composition through F evaluates accurately; clusters stay fixed.
void aberth_refine(const Evaluator& ev, std::vector<Root>& roots, int max_iters = 100)
{
    const size_t n = roots.size();
    std::vector<char> done(n, 0);
    for (size_t i = 0; i < n; ++i)
        if (roots[i].multiplicity != 1) done[i] = 1;
    for (int it = 0; it < max_iters; ++it) {
        bool moving = false;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const Dual g = ev.at(roots[i].z).G;
            if (g.v == 0.0 || g.d == 0.0) {
                done[i] = 1;
                continue;
            }
            const cplx ratio = g.v / g.d;
            cplx sum = 0.0;
            for (size_t j = 0; j < n; ++j)
                if (j != i) sum += static_cast<double>(roots[j].multiplicity) / (roots[i].z - roots[j].z);
            const cplx w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                done[i] = 1;
                continue;
            }
            roots[i].z -= w;
            if (std::abs(w) <= 4.0 * kEps * std::max(1.0, std::abs(roots[i].z))) done[i] = 1;
            else moving = true;
        }
        if (!moving) break;
    }
}

std::vector<double> separations(const std::vector<Root>& roots)
{
    std::vector<double> sep(roots.size(), std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = 0; j < roots.size(); ++j)
            if (i != j) sep[i] = std::min(sep[i], std::abs(roots[i].z - roots[j].z));
    for (size_t i = 0; i < roots.size(); ++i)
        if (!std::isfinite(sep[i])) sep[i] = std::max(1.0, std::abs(roots[i].z));
    return sep;
}

bool on_axis(cplx z, double tol)
{
    return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real()));
}

std::vector<CandidateRoot> annotate_roots(const QubitState& unit, double hs, const FixedPointPoly& fp,
                                          const EngineOptions& opt)
{
    const Evaluator ev(unit);
    RootSet rs = roots_all(fp.f, opt.tol);
    aberth_refine(ev, rs.roots);
    const auto sep = separations(rs.roots);
    std::vector<CandidateRoot> out;
    out.reserve(rs.roots.size());
    for (size_t i = 0; i < rs.roots.size(); ++i) {
        cplx z = rs.roots[i].z;
        if (rs.roots[i].multiplicity == 1) z = polish(ev, z, sep[i], true);
        if (unit.is_real && on_axis(z, opt.tol)) z = z.real();
        const auto P = ev.at(z);
        CandidateRoot c;
        c.z = z;
        c.multiplicity = rs.roots[i].multiplicity;
        c.lambda_q = Evaluator::lambda_q(P) * hs;
        c.lambda_v = ev.lambda_v(P) * hs;
        c.r_residual = Evaluator::r_residual(P);
        c.in_R1 = true;
        c.in_R = c.r_residual <= opt.tol_R;
        c.in_R1prime = on_axis(z, opt.tol);
        c.in_Rprime = c.in_R && c.in_R1prime;
        c.q_at_z = P.F0.v * std::pow(P.n, unit.d - 1) * hs;
        c.v_at_z = P.V.v * std::pow(P.n, (unit.d - 1) * (unit.d - 1)) * std::pow(hs, unit.d);
        out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(), [](const CandidateRoot& a, const CandidateRoot& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return out;
}

UnitVector2 unit_at(cplx z)
{
    const double n = std::hypot(1.0, std::abs(z));
    return {1.0 / n, z / n};
}

UnitVector2 infinity_witness(const QubitState& st)
{
    if (st.s[st.d] == 0.0) throw Error(ErrorCode::SdVanishes, "witness at infinity needs s_d != 0");
    return {0.0, std::polar(1.0, -std::arg(st.s[st.d]) / st.d)};
}

SpectralResult d2_closed_form(const QubitState& unit, double hs, Field field)
{
    SpectralResult r;
    r.field = field;
    r.method = Method::matrix_d2;
    const cplx s0 = unit.s[0], s1 = unit.s[1], s2 = unit.s[2];
    if (field == Field::real) {
        Eigen::Matrix2d M;
        M << s0.real(), s1.real(), s1.real(), s2.real();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
        int k = std::abs(es.eigenvalues()[0]) >= std::abs(es.eigenvalues()[1]) ? 0 : 1;
        r.sigma = std::abs(es.eigenvalues()[k]) * hs;
        r.witness = {es.eigenvectors()(0, k), es.eigenvectors()(1, k)};
    } else {
        Eigen::Matrix2cd M;
        M << s0, s1, s1, s2;
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double sig = svd.singularValues()[0];
        Eigen::Vector2cd v = svd.matrixV().col(0);
        Eigen::Vector2cd u = svd.matrixU().col(0);
        // M ubar = sigma vbar, so ubar = e^{i phi} v for a simple top value
        const cplx ph = v.dot(u.conjugate());  // v^H ubar
        Eigen::Vector2cd w = v * std::polar(1.0, std::arg(ph) / 2.0);
        UnitVector2 x{w(0), w(1)};
        if (std::abs(std::abs(eval_form(unit, x.x0, x.x1)) - sig) > 1e-10) {
            // degenerate singular values: settle with the anti-fixed-point map
            Eigen::Vector2cd y = v;
            for (int it = 0; it < 2000; ++it) {
                Eigen::Vector2cd Fy = M * y;
                if (Fy.norm() == 0.0) break;
                y = Fy.conjugate() / Fy.norm();
            }
            x = {y(0), y(1)};
        }
        r.sigma = sig * hs;
        r.witness = x;
    }
    r.sigma_check = r.sigma;
    return r;
}

} // namespace

const char* method_name(Method m)
{
    switch (m) {
    case Method::generic: return "generic";
    case Method::matrix_d2: return "matrix-d2";
    case Method::exceptional_monomial: return "exceptional-monomial";
    case Method::exceptional_real: return "exceptional-real";
    case Method::exceptional_bracket: return "exceptional-bracket";
    }
    return "unknown";
}

PqPair build_pq(const QubitState& st)
{
    const int d = st.d;
    std::vector<cplx> p(d), q(d);
    for (int j = 0; j < d; ++j) {
        p[j] = binom(d - 1, j) * st.s[j + 1];
        q[j] = binom(d - 1, j) * st.s[j];
    }
    return {DensePolynomial(p), DensePolynomial(q)};
}

namespace {

struct UvRaw {
    std::vector<cplx> u, v;
    std::vector<double> ub, vb;
};

UvRaw build_uv_raw(const QubitState& st)
{
    const int d = st.d, m = d - 1;
    std::vector<cplx> p(d), q(d);
    std::vector<double> pa(d), qa(d);
    for (int j = 0; j < d; ++j) {
        p[j] = binom(m, j) * st.s[j + 1];
        q[j] = binom(m, j) * st.s[j];
        pa[j] = std::abs(p[j]);
        qa[j] = std::abs(q[j]);
    }
    std::vector<std::vector<cplx>> P(d), Q(d);
    std::vector<std::vector<double>> PA(d), QA(d);
    P[0] = Q[0] = {1.0};
    PA[0] = QA[0] = {1.0};
    for (int j = 1; j < d; ++j) {
        P[j] = conv(P[j - 1], p);
        Q[j] = conv(Q[j - 1], q);
        PA[j] = conv(PA[j - 1], pa);
        QA[j] = conv(QA[j - 1], qa);
    }
    const size_t len = static_cast<size_t>(m) * m + 1;
    UvRaw r{std::vector<cplx>(len, 0.0), std::vector<cplx>(len, 0.0), std::vector<double>(len, 0.0),
            std::vector<double>(len, 0.0)};
    for (int j = 0; j <= m; ++j) {
        const cplx a = binom(m, j) * std::conj(st.s[j + 1]);
        const cplx b = binom(m, j) * std::conj(st.s[j]);
        if (a == 0.0 && b == 0.0) continue;
        const auto T = conv(P[j], Q[m - j]);
        const auto TA = conv(PA[j], QA[m - j]);
        for (size_t k = 0; k < T.size(); ++k) {
            r.u[k] += a * T[k];
            r.v[k] += b * T[k];
            r.ub[k] += std::abs(a) * TA[k];
            r.vb[k] += std::abs(b) * TA[k];
        }
    }
    return r;
}

} // namespace

UvPair build_uv(const QubitState& st)
{
    auto r = build_uv_raw(st);
    return {DensePolynomial(r.u), DensePolynomial(r.v)};
}

FixedPointPoly fixed_point_polynomial(const QubitState& st, const EngineOptions& opt)
{
    const QubitState unit = normalize(st);
    const auto r = build_uv_raw(unit);
    const size_t len = r.u.size() + 1;
    FixedPointPoly fp;
    fp.raw.assign(len, 0.0);
    fp.bound.assign(len, 0.0);
    for (size_t k = 0; k < len; ++k) {
        if (k >= 1) {
            fp.raw[k] += r.v[k - 1];
            fp.bound[k] += r.vb[k - 1];
        }
        if (k < r.u.size()) {
            fp.raw[k] -= r.u[k];
            fp.bound[k] += r.ub[k];
        }
    }
    // every coefficient must be cancellation noise relative to its own terms;
    // a single global scale fails at large d where the bounds span 1e140
    fp.vanishes = true;
    for (size_t k = 0; k < len; ++k) {
        fp.max_coef = std::max(fp.max_coef, std::abs(fp.raw[k]));
        fp.max_bound = std::max(fp.max_bound, fp.bound[k]);
        if (std::abs(fp.raw[k]) > opt.zero_poly * fp.bound[k]) fp.vanishes = false;
    }
    if (fp.vanishes) return fp;
    std::vector<cplx> c = fp.raw;
    auto cancelled = [&](size_t k) { return std::abs(c[k]) <= opt.trim * fp.bound[k]; };
    while (!c.empty() && cancelled(c.size() - 1)) c.pop_back();
    for (size_t k = 0; k < c.size() && cancelled(k); ++k) c[k] = 0.0;
    fp.f = DensePolynomial(std::move(c));
    return fp;
}

std::vector<CandidateRoot> candidate_roots(const QubitState& st, double tol)
{
    EngineOptions opt;
    opt.tol = tol;
    return candidate_roots(st, opt);
}

std::vector<CandidateRoot> candidate_roots(const QubitState& st, const EngineOptions& opt)
{
    const auto in = prepare(st);
    const auto fp = fixed_point_polynomial(in.st, opt);
    if (fp.vanishes || fp.f.degree() < 1)
        throw Error(ErrorCode::ExceptionalFamily, "zv(z) - u(z) vanishes identically");
    return annotate_roots(in.st, in.hs, fp, opt);
}

std::vector<CandidateRoot> real_anti_roots(const QubitState& st, const EngineOptions& opt)
{
    if (!st.is_real) throw Error(ErrorCode::NotReal, "real roots of t q(t) - p(t) need a real state");
    const auto in = prepare(st);
    const QubitState& u = in.st;
    const int d = u.d;
    // t q(t) - p(t), degree <= d
    std::vector<cplx> c(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
        if (k >= 1) c[k] += binom(d - 1, k - 1) * u.s[k - 1];
        if (k <= d - 1) c[k] -= binom(d - 1, k) * u.s[k + 1];
    }
    DensePolynomial f(c);
    if (f.is_zero()) throw Error(ErrorCode::ExceptionalFamily, "t q(t) - p(t) vanishes identically");
    std::vector<CandidateRoot> out;
    if (f.degree() < 1) return out;
    const Evaluator ev(u);
    RootSet rs = roots_all(f, opt.tol);
    const auto sep = separations(rs.roots);
    for (size_t i = 0; i < rs.roots.size(); ++i) {
        cplx z = rs.roots[i].z;
        if (rs.roots[i].multiplicity == 1) z = polish(ev, z, sep[i], false);
        if (!on_axis(z, opt.tol)) continue;
        z = z.real();
        const auto P = ev.at(z);
        CandidateRoot cr;
        cr.z = z;
        cr.multiplicity = rs.roots[i].multiplicity;
        cr.lambda_q = Evaluator::lambda_q(P) * in.hs;
        cr.lambda_v = ev.lambda_v(P) * in.hs;
        cr.r_residual = Evaluator::r_residual(P);
        cr.in_R = cr.in_Rprime = cr.in_R1 = cr.in_R1prime = true;
        cr.q_at_z = P.F0.v * std::pow(P.n, d - 1) * in.hs;
        cr.v_at_z = P.V.v * std::pow(P.n, (d - 1) * (d - 1)) * std::pow(in.hs, d);
        out.push_back(cr);
    }
    return out;
}

UnitVector2 witness(const QubitState& st, std::optional<cplx> root)
{
    if (!root) return infinity_witness(st);
    const cplx z = *root;
    const auto ev = Evaluator(st);
    const auto P = ev.at(z, false);
    const double scale = std::max(1.0, hs_norm(st));
    if (std::abs(P.F0.v) <= 1e-14 * scale) throw Error(ErrorCode::QVanishes, "q(z) vanishes at the witness root");
    // arg x0 = -arg q(z)/d; the modulus is fixed by normalization
    const cplx ph = std::polar(1.0, -std::arg(P.F0.v) / st.d);
    const UnitVector2 u = unit_at(z);
    return {ph * u.x0, ph * u.x1};
}

SpectralResult spectral_norm_generic(const QubitState& st, Field field, const EngineOptions& opt)
{
    if (field == Field::real && !st.is_real) throw Error(ErrorCode::NotReal, "real spectral norm of a complex state");
    const auto in = prepare(st);
    const QubitState& u = in.st;
    const int d = u.d;
    if (d == 2) return d2_closed_form(u, in.hs, field);

    SpectralResult r;
    r.field = field;
    r.method = Method::generic;
    const double sd = std::abs(u.s[d]);

    bool only_sd = true;
    for (int k = 0; k < d; ++k)
        if (u.s[k] != 0.0) only_sd = false;
    if (only_sd) {
        r.sigma = r.sigma_check = sd * in.hs;
        r.witness = field == Field::real ? UnitVector2{0.0, 1.0} : infinity_witness(u);
        r.witness_at_infinity = true;
        return r;
    }

    const auto fp = fixed_point_polynomial(u, opt);
    if (fp.vanishes || fp.f.degree() < 1)
        throw Error(ErrorCode::ExceptionalFamily, "zv(z) - u(z) vanishes identically");
    const auto cands = annotate_roots(u, 1.0, fp, opt);

    double best_q = sd, best_v = sd;
    std::optional<cplx> arg;
    if (field == Field::complex) {
        for (const auto& c : cands) {
            best_v = std::max(best_v, c.lambda_v);
            if (c.in_R && c.lambda_q > best_q) {
                best_q = c.lambda_q;
                arg = c.z;
            }
        }
    } else {
        for (const auto& c : cands)
            if (c.in_R1prime) best_v = std::max(best_v, c.lambda_v);
        for (const auto& c : real_anti_roots(u, opt))
            if (c.lambda_q > best_q) {
                best_q = c.lambda_q;
                arg = c.z;
            }
    }
    if (std::abs(best_q - best_v) > opt.cross_check) {
        std::ostringstream os;
        os.precision(12);
        os << "max lambda_q = " << best_q << " but max lambda_v = " << best_v << " (" << field_name(field) << ")";
        throw Error(ErrorCode::InternalInconsistency, os.str());
    }
    r.sigma = best_q * in.hs;
    r.sigma_check = best_v * in.hs;
    if (!arg) {
        r.witness_at_infinity = true;
        r.witness = field == Field::real ? UnitVector2{0.0, 1.0} : infinity_witness(u);
    } else {
        r.witness_root = *arg;
        r.witness = field == Field::real ? unit_at(arg->real()) : witness(u, *arg);
    }
    return r;
}

SpectralResult spectral_norm(const QubitState& st, Field field, double tol)
{
    EngineOptions opt;
    opt.tol = tol;
    return spectral_norm(st, field, opt);
}

SpectralResult spectral_norm(const QubitState& st, Field field, const EngineOptions& opt)
{
    if (field == Field::real && !st.is_real) throw Error(ErrorCode::NotReal, "real spectral norm of a complex state");
    const auto in = prepare(st);
    if (in.st.d > 2) {
        const auto cls = detect_exceptional(in.st, opt.zero_poly);
        if (cls.kind != ExceptionalKind::not_exceptional) {
            SpectralResult r;
            if (cls.kind == ExceptionalKind::monomial) {
                r = monomial_result(cls, in.st.d, field);
            } else if (field == Field::real) {
                r = norm_two_root_real(cls, in.st);
            } else {
                r = norm_two_root_complex(cls, in.st, opt.eps_target, opt.scheme);
            }
            r.sigma *= in.hs;
            r.sigma_check *= in.hs;
            r.bracket_halfwidth *= in.hs;
            return r;
        }
    }
    return spectral_norm_generic(st, field, opt);
}

bool is_nonsingular(const QubitState& st)
{
    // F0, F1 share a projective zero iff one form vanishes at a root of the other.
    // The Hadamard-scaled resultant decays like 1e-3^d on generic inputs, so it
    // cannot carry a fixed threshold.
    const QubitState unit = normalize(st);
    const int d = unit.d;
    std::vector<cplx> p(d), q(d);
    double scale = 0.0;
    for (int j = 0; j < d; ++j) {
        p[j] = binom(d - 1, j) * unit.s[j + 1];
        q[j] = binom(d - 1, j) * unit.s[j];
        scale = std::max({scale, std::abs(p[j]), std::abs(q[j])});
    }
    const DensePolynomial P(p), Q(q);
    if (P.is_zero() || Q.is_zero()) return false;
    const double tol = 1e-8 * scale;
    auto common = [&](const DensePolynomial& a, const DensePolynomial& b, cplx b_top) {
        if (a.degree() < d - 1 && std::abs(b_top) <= tol) return true;
        for (const auto& r : roots_all(a).roots) {
            const double n = std::hypot(1.0, std::abs(r.z));
            if (std::abs(poly_eval(b, r.z)) / std::pow(n, d - 1) <= tol) return true;
        }
        return false;
    };
    return !common(Q, P, p[d - 1]) && !common(P, Q, q[d - 1]);
}

int census_lower_bound(int d)
{
    const int a = (d - 1) * (d - 1) - 1;
    return (a + d - 1) / d;
}

int census_upper_bound(int d)
{
    return (d - 1) * (d - 1) + 1;
}

Census anti_eigen_census(const QubitState& st, const EngineOptions& opt)
{
    const auto in = prepare(st);
    const auto fp = fixed_point_polynomial(in.st, opt);
    if (fp.vanishes || fp.f.degree() < 1)
        throw Error(ErrorCode::ExceptionalFamily, "census undefined on the exceptional family");
    const auto cands = annotate_roots(in.st, 1.0, fp, opt);
    Census c;
    const int d = in.st.d;
    c.fixed_point_degree = fp.f.degree();
    c.distinct_roots = static_cast<int>(cands.size());
    for (const auto& r : cands) {
        if (r.in_R1prime) ++c.real_roots;
        if (r.in_R && r.lambda_q > 1e-12) c.mu_reported += r.multiplicity;
    }
    if (std::abs(in.st.s[d - 1]) <= 1e-14 && in.st.s[d] != 0.0) c.mu_reported += 1;
    c.lower_bound = census_lower_bound(d);
    c.upper_bound = census_upper_bound(d);
    c.nonsingular = is_nonsingular(in.st);
    if (c.nonsingular) c.bounds_satisfied = c.mu_reported >= c.lower_bound && c.mu_reported <= c.upper_bound;
    return c;
}

} // namespace specnorm
