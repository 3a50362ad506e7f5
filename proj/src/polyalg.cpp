#include "specnorm/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

namespace specnorm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

bool canonical_less(cplx a, cplx b)
{
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

struct NewtonEval {
    cplx ratio;   // p/p'
    double berr;  // |p| / sum |c_k||z|^k
    bool exact;   // p(z) == 0
};

NewtonEval newton_eval(const std::vector<cplx>& c, cplx z)
{
    const int n = static_cast<int>(c.size()) - 1;
    if (std::abs(z) <= 1.0) {
        cplx p = c[n], dp = 0.0;
        double a = std::abs(c[n]);
        const double az = std::abs(z);
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + c[k];
            a = a * az + std::abs(c[k]);
        }
        if (p == 0.0) return {0.0, 0.0, true};
        return {p / dp, std::abs(p) / a, false};
    }
    // p(z) = z^n r(w), w = 1/z; p'/p = w (n - w r'(w)/r(w))
    const cplx w = 1.0 / z;
    const double aw = std::abs(w);
    cplx r = c[0], dr = 0.0;
    double a = std::abs(c[0]);
    for (int k = 1; k <= n; ++k) {
        dr = dr * w + r;
        r = r * w + c[k];
        a = a * aw + std::abs(c[k]);
    }
    if (r == 0.0) return {0.0, 0.0, true};
    const cplx dlog = w * (static_cast<double>(n) - w * dr / r);
    return {1.0 / dlog, std::abs(r) / a, false};
}

// Starting points on circles from the upper convex hull of (k, log|c_k|).
std::vector<cplx> initial_guesses(const std::vector<cplx>& c)
{
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<int> idx;
    std::vector<double> lg(n + 1, -std::numeric_limits<double>::infinity());
    for (int k = 0; k <= n; ++k)
        if (c[k] != 0.0) lg[k] = std::log(std::abs(c[k]));
    std::vector<int> hull;
    for (int k = 0; k <= n; ++k) {
        if (c[k] == 0.0) continue;
        while (hull.size() >= 2) {
            const int i = hull[hull.size() - 2], j = hull.back();
            // drop j if it lies on or below segment i-k
            const double cross = (lg[j] - lg[i]) * (k - i) - (lg[k] - lg[i]) * (j - i);
            if (cross <= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    std::vector<cplx> z;
    z.reserve(n);
    const double sigma = 0.7;
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        const int i = hull[e], j = hull[e + 1];
        const int m = j - i;
        const double r = std::exp((lg[i] - lg[j]) / m);
        for (int t = 0; t < m; ++t) {
            const double th = 2.0 * kPi * t / m + 2.0 * kPi * i / n + sigma;
            z.push_back(std::polar(r, th));
        }
    }
    return z;
}

// Aberth-Ehrlich with Gauss-Seidel updates. Returns max backward error.
double aberth(const std::vector<cplx>& c, std::vector<cplx>& z, int max_iter)
{
    const int n = static_cast<int>(z.size());
    const double stop = 8.0 * n * kEps;
    std::vector<char> done(n, 0);
    std::vector<double> berr(n, std::numeric_limits<double>::infinity());
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            const NewtonEval e = newton_eval(c, z[i]);
            berr[i] = e.berr;
            if (e.exact || e.berr <= stop) {
                done[i] = 1;
                continue;
            }
            all = false;
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            cplx corr = e.ratio / (1.0 - e.ratio * sum);
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = e.ratio;
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
            z[i] -= corr;
            if (std::abs(corr) <= 2.0 * kEps * std::abs(z[i])) done[i] = 1;
        }
        if (all) break;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        berr[i] = newton_eval(c, z[i]).berr;
        worst = std::max(worst, berr[i]);
    }
    return worst;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& c)
{
    const int n = static_cast<int>(c.size()) - 1;
    // scale z = rho y so the end coefficients balance; work in logs to avoid overflow
    const double lrho = (std::log(std::abs(c[0])) - std::log(std::abs(c[n]))) / n;
    std::vector<cplx> a(n + 1);
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> la(n + 1);
    for (int k = 0; k <= n; ++k) {
        la[k] = c[k] == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(c[k])) + k * lrho;
        lmax = std::max(lmax, la[k]);
    }
    for (int k = 0; k <= n; ++k)
        a[k] = c[k] == 0.0 ? cplx(0.0) : std::polar(std::exp(la[k] - lmax), std::arg(c[k]));
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) M(i, n - 1) = -a[i] / a[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<cplx> z(n);
    const double rho = std::exp(lrho);
    for (int i = 0; i < n; ++i) z[i] = es.eigenvalues()[i] * rho;
    return z;
}

struct Dsu {
    std::vector<int> parent, size;
    explicit Dsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

} // namespace

DensePolynomial::DensePolynomial(std::vector<cplx> coeffs) : c(std::move(coeffs))
{
    trim();
}

void DensePolynomial::trim()
{
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

DensePolynomial poly_mul(const DensePolynomial& a, const DensePolynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> r(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0.0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return DensePolynomial(std::move(r));
}

DensePolynomial poly_axpy(cplx alpha, const DensePolynomial& a, const DensePolynomial& b)
{
    std::vector<cplx> r(std::max(a.c.size(), b.c.size()), 0.0);
    if (alpha != 0.0)
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += alpha * a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return DensePolynomial(std::move(r));
}

cplx poly_eval(const DensePolynomial& p, cplx z)
{
    cplx acc = 0.0;
    for (size_t k = p.c.size(); k-- > 0;) acc = acc * z + p.c[k];
    return acc;
}

DensePolynomial trim_relative(const DensePolynomial& p, double rel)
{
    double m = 0.0;
    for (const auto& v : p.c) m = std::max(m, std::abs(v));
    std::vector<cplx> c = p.c;
    while (!c.empty() && std::abs(c.back()) <= rel * m) c.pop_back();
    return DensePolynomial(std::move(c));
}

double backward_error(const DensePolynomial& p, cplx z)
{
    if (p.is_zero()) return 0.0;
    if (p.c.size() == 1) return 1.0;
    return newton_eval(p.c, z).berr;
}

cplx refine_multiple_root(const DensePolynomial& p, cplx z, int m)
{
    // an m-fold root is a simple root of the (m-1)-th derivative
    std::vector<cplx> d = p.c;
    for (int r = 1; r < m && d.size() > 1; ++r) {
        for (size_t k = 1; k < d.size(); ++k) d[k - 1] = static_cast<double>(k) * d[k];
        d.pop_back();
    }
    if (d.size() < 2) return z;
    const cplx z0 = z;
    const double limit = 1e-2 * std::max(1.0, std::abs(z0));
    const double b0 = newton_eval(d, z).berr;
    for (int it = 0; it < 30; ++it) {
        const auto e = newton_eval(d, z);
        if (e.exact) break;
        z -= e.ratio;
        if (std::abs(z - z0) > limit || !std::isfinite(z.real()) || !std::isfinite(z.imag())) return z0;
        if (std::abs(e.ratio) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
    }
    const auto e = newton_eval(d, z);
    return e.exact || e.berr <= b0 ? z : z0;
}

RootSet roots_all(const DensePolynomial& p, double tol)
{
    RootOptions opt;
    opt.tol = tol;
    return roots_all(p, opt);
}

RootSet roots_all(const DensePolynomial& p, const RootOptions& opt)
{
    if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
    RootSet out;
    if (p.degree() == 0) return out;

    // exact zeros at the low end are roots at the origin
    size_t k0 = 0;
    while (p.c[k0] == 0.0) ++k0;
    std::vector<cplx> c(p.c.begin() + k0, p.c.end());
    const int n = static_cast<int>(c.size()) - 1;

    std::vector<cplx> z;
    double worst = 0.0;
    if (n == 1) {
        z = {-c[0] / c[1]};
    } else if (n >= 2) {
        z = initial_guesses(c);
        worst = aberth(c, z, opt.max_iter);
        if (worst > 1e-10) {
            std::vector<cplx> z2 = companion_roots(c);
            const double w2 = aberth(c, z2, 50);
            out.used_fallback = true;
            if (w2 < worst) {
                z.swap(z2);
                worst = w2;
            }
        }
        if (worst > opt.tol)
            throw Error(ErrorCode::DidNotConverge,
                        "root iteration stalled, best relative residual " + std::to_string(worst));
    }

    // single-linkage clustering; radius tol^(1/m) for an m-fold merge, capped
    const int m = static_cast<int>(z.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return canonical_less(z[a], z[b]); });
    std::vector<cplx> zs(m);
    for (int i = 0; i < m; ++i) zs[i] = z[order[i]];
    Dsu dsu(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const int merged = dsu.size[dsu.find(i)] + dsu.size[dsu.find(j)];
            if (dsu.find(i) == dsu.find(j)) continue;
            const double rad = std::min(opt.cluster_cap, std::pow(opt.tol, 1.0 / merged)) *
                               std::max(1.0, std::max(std::abs(zs[i]), std::abs(zs[j])));
            if (std::abs(zs[i] - zs[j]) <= rad) dsu.unite(i, j);
        }
    std::vector<cplx> sum(m, 0.0);
    std::vector<int> cnt(m, 0);
    for (int i = 0; i < m; ++i) {
        const int r = dsu.find(i);
        sum[r] += zs[i];
        cnt[r] += 1;
    }
    const DensePolynomial reduced(c);
    for (int i = 0; i < m; ++i) {
        if (cnt[i] == 0) continue;
        const cplx centre = sum[i] / static_cast<double>(cnt[i]);
        out.roots.push_back({cnt[i] > 1 ? refine_multiple_root(reduced, centre, cnt[i]) : centre, cnt[i]});
    }
    if (k0 > 0) out.roots.push_back({0.0, static_cast<int>(k0)});
    std::sort(out.roots.begin(), out.roots.end(),
              [](const Root& a, const Root& b) { return canonical_less(a.z, b.z); });
    out.residual = 0.0;
    for (const auto& r : out.roots) out.residual = std::max(out.residual, backward_error(p, r.z));
    return out;
}

cplx sylvester_resultant(const std::vector<cplx>& a, int deg_a, const std::vector<cplx>& b, int deg_b,
                         double* hadamard)
{
    const int N = deg_a + deg_b;
    if (N == 0) {
        if (hadamard) *hadamard = 1.0;
        return 1.0;
    }
    auto coef = [](const std::vector<cplx>& v, int k) { return k >= 0 && k < static_cast<int>(v.size()) ? v[k] : cplx(0.0); };
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    // rows list coefficients from the highest nominal power down
    for (int r = 0; r < deg_b; ++r)
        for (int k = 0; k <= deg_a; ++k) S(r, r + k) = coef(a, deg_a - k);
    for (int r = 0; r < deg_a; ++r)
        for (int k = 0; k <= deg_b; ++k) S(deg_b + r, r + k) = coef(b, deg_b - k);
    if (hadamard) {
        double h = 1.0;
        for (int r = 0; r < N; ++r) h *= S.row(r).norm();
        *hadamard = h;
    }
    return S.partialPivLu().determinant();
}

cplx resultant(const DensePolynomial& a, const DensePolynomial& b)
{
    if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant with the zero polynomial");
    return sylvester_resultant(a.c, a.degree(), b.c, b.degree());
}

} // namespace specnorm
