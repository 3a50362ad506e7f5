#include "specnorm/golden.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace specnorm {

using nlohmann::json;

namespace {

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InputError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InputError, path + ": " + e.what());
    }
}

} // namespace

std::string data_dir()
{
#ifdef SPECNORM_DATA_DIR
    return SPECNORM_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<GoldenExample> load_appendix(const std::string& path)
{
    const json doc = read_json(path);
    std::vector<GoldenExample> out;
    for (const auto& e : doc.at("examples")) {
        GoldenExample g;
        g.id = e.at("id").get<std::string>();
        g.d = e.at("d").get<int>();
        g.s = e.at("s").get<std::vector<double>>();
        g.sigma_complex = e.at("sigma_complex").get<double>();
        g.sigma_real = e.at("sigma_real").get<double>();
        g.fixed_point_degree = e.at("fixed_point_degree").get<int>();
        g.distinct_roots = e.at("distinct_roots").get<int>();
        g.real_roots = e.at("real_roots").get<int>();
        if (e.contains("R_excluded")) g.R_excluded = e.at("R_excluded").get<std::vector<int>>();
        if (e.contains("roots"))
            for (const auto& r : e.at("roots")) {
                GoldenRoot gr;
                gr.no = r.at("no").get<int>();
                gr.z = {r.at("z")[0].get<double>(), r.at("z")[1].get<double>()};
                gr.real = r.at("field").get<std::string>() == "R";
                gr.lambda_q = r.at("lambda_q").get<double>();
                gr.lambda_v = r.at("lambda_v").get<double>();
                g.roots.push_back(gr);
            }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GoldenFamily> load_families(const std::string& path)
{
    const json doc = read_json(path);
    std::vector<GoldenFamily> out;
    for (const auto& f : doc.at("families")) {
        GoldenFamily g;
        g.m = f.at("m").get<int>();
        g.closed_form = f.at("closed_form").get<double>();
        for (const auto& r : f.at("rows"))
            g.rows.push_back({r.at("eps").get<double>(), r.at("sigma_real").get<double>(),
                              r.at("sigma_complex").get<double>()});
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GoldenEtaRow> load_table1(const std::string& path)
{
    const json doc = read_json(path);
    std::vector<GoldenEtaRow> out;
    for (const auto& r : doc.at("rows")) {
        GoldenEtaRow g;
        g.d = r.at("d").get<int>();
        g.eta = r.at("eta").get<double>();
        g.eta_rel = r.at("eta_rel").get<double>();
        if (r.contains("dicke")) g.dicke = r.at("dicke").get<std::vector<int>>();
        out.push_back(g);
    }
    return out;
}

QubitState family_state(int m)
{
    const int d = 2 * m;
    std::vector<double> s(d + 1, 0.0);
    for (int k = 0; k <= m; ++k) s[2 * k] = ((m - k) % 2 ? -1.0 : 1.0) * binom(m, k) / binom(d, 2 * k);
    return normalize(make_real_state(d, s));
}

std::vector<int> match_rows(const std::vector<CandidateRoot>& cands, const std::vector<GoldenRoot>& rows)
{
    std::vector<int> idx(rows.size(), -1);
    for (size_t i = 0; i < rows.size(); ++i) {
        double best = INFINITY;
        for (size_t j = 0; j < cands.size(); ++j) {
            const double dz = std::abs(cands[j].z - rows[i].z);
            if (dz < best) {
                best = dz;
                idx[i] = static_cast<int>(j);
            }
        }
    }
    return idx;
}

ExampleCheck check_example(const GoldenExample& ex)
{
    const auto t0 = std::chrono::steady_clock::now();
    ExampleCheck c;
    c.id = ex.id;
    const QubitState st = ex.state();
    c.sigma_complex = spectral_norm(st, Field::complex).sigma;
    c.sigma_real = spectral_norm(st, Field::real).sigma;
    c.dev_complex = std::abs(c.sigma_complex - ex.sigma_complex);
    c.dev_real = std::abs(c.sigma_real - ex.sigma_real);

    const auto fp = fixed_point_polynomial(st);
    const auto cands = candidate_roots(st);
    c.fixed_point_degree = fp.f.degree();
    c.distinct_roots = static_cast<int>(cands.size());
    for (const auto& r : cands) c.real_roots += r.in_R1prime ? 1 : 0;
    c.counts_match = c.fixed_point_degree == ex.fixed_point_degree && c.distinct_roots == ex.distinct_roots &&
                     c.real_roots == ex.real_roots;

    const auto idx = match_rows(cands, ex.roots);
    for (size_t i = 0; i < ex.roots.size(); ++i) {
        if (idx[i] < 0) {
            c.max_root_dev = INFINITY;
            continue;
        }
        const auto& cr = cands[idx[i]];
        c.max_root_dev = std::max(c.max_root_dev, std::abs(cr.z - ex.roots[i].z));
        c.max_lambda_dev = std::max(c.max_lambda_dev, std::abs(cr.lambda_q - ex.roots[i].lambda_q));
        // where q vanishes, lambda_v is the d-th root of a rounding-level |v|
        if (ex.roots[i].lambda_q >= 5e-5 || cr.lambda_q >= 5e-5)
            c.max_lambda_dev = std::max(c.max_lambda_dev, std::abs(cr.lambda_v - ex.roots[i].lambda_v));
    }
    if (ex.R_excluded) {
        c.has_membership = true;
        std::vector<int> mine;
        if (!ex.roots.empty()) {
            for (size_t i = 0; i < ex.roots.size(); ++i)
                if (idx[i] >= 0 && !cands[idx[i]].in_R) mine.push_back(ex.roots[i].no);
        } else {
            for (size_t j = 0; j < cands.size(); ++j)
                if (!cands[j].in_R) mine.push_back(static_cast<int>(j) + 1);
        }
        c.excluded = mine;
        c.membership_match = mine == *ex.R_excluded;
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

} // namespace specnorm
