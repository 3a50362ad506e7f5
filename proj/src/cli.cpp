#include "specnorm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "specnorm/exceptional.hpp"
#include "specnorm/golden.hpp"
#include "specnorm/measures.hpp"
#include "specnorm/oracle.hpp"

namespace specnorm {

using nlohmann::json;

namespace {

cplx parse_entry(const json& v)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw Error(ErrorCode::InputError, "coefficient must be a number or a [re, im] pair");
}

json cjson(cplx z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string zstr(cplx z)
{
    char buf[96];
    if (z.imag() == 0.0) std::snprintf(buf, sizeof buf, "%.4f", z.real());
    else std::snprintf(buf, sizeof buf, "%.4f %c %.4fi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
    return buf;
}

json result_json(const SpectralResult& r)
{
    json j;
    j["field"] = field_name(r.field);
    j["sigma"] = r.sigma;
    j["method"] = method_name(r.method);
    j["witness"] = json::array({cjson(r.witness.x0), cjson(r.witness.x1)});
    j["witness_root"] = r.witness_at_infinity ? json("inf") : cjson(r.witness_root);
    j["bracket_halfwidth"] = r.bracket_halfwidth;
    j["sigma_check"] = r.sigma_check;
    return j;
}

json class_json(const ExceptionalClass& c)
{
    json j;
    j["kind"] = exceptional_kind_name(c.kind);
    if (c.kind == ExceptionalKind::not_exceptional) return j;
    j["A"] = cjson(c.A);
    if (c.kind == ExceptionalKind::monomial) {
        j["k"] = c.k;
        return j;
    }
    j["c"] = c.c;
    j["p"] = c.p;
    j["phase_s"] = c.phase_s;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    return j;
}

json census_json(const Census& c)
{
    json j;
    j["fixed_point_degree"] = c.fixed_point_degree;
    j["distinct_roots"] = c.distinct_roots;
    j["real_roots"] = c.real_roots;
    j["mu"] = c.mu_reported;
    j["lower_bound"] = c.lower_bound;
    j["upper_bound"] = c.upper_bound;
    j["nonsingular"] = c.nonsingular;
    j["bounds_satisfied"] = c.bounds_satisfied ? json(*c.bounds_satisfied) : json(nullptr);
    return j;
}

void dump_rec(const json& j, int indent, int level, std::string& out)
{
    const std::string pad = indent > 0 ? std::string(static_cast<size_t>(indent) * (level + 1), ' ') : "";
    const std::string close = indent > 0 ? std::string(static_cast<size_t>(indent) * level, ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        return;
    }
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{";
        out += nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",";
                out += nl;
            }
            first = false;
            out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
            dump_rec(it.value(), indent, level + 1, out);
        }
        out += nl + close + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // short numeric arrays stay on one line
        bool flat = j.size() <= 2;
        for (const auto& v : j)
            if (!v.is_number() && !v.is_string()) flat = false;
        if (flat || indent == 0) {
            out += "[";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += indent > 0 ? ", " : ",";
                dump_rec(j[i], 0, 0, out);
            }
            out += "]";
            return;
        }
        out += "[";
        out += nl;
        for (size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ",";
                out += nl;
            }
            out += pad;
            dump_rec(j[i], indent, level + 1, out);
        }
        out += nl + close + "]";
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace

QubitState parse_state(const json& doc, std::optional<int> d)
{
    json arr;
    if (doc.is_object()) {
        if (!doc.contains("s")) throw Error(ErrorCode::InputError, "state object needs an \"s\" member");
        arr = doc.at("s");
        if (doc.contains("d")) {
            if (!doc.at("d").is_number_integer()) throw Error(ErrorCode::InputError, "\"d\" must be an integer");
            const int dd = doc.at("d").get<int>();
            if (d && *d != dd) throw Error(ErrorCode::InputError, "--d disagrees with the document's d");
            d = dd;
        }
    } else if (doc.is_array()) {
        arr = doc;
    } else {
        throw Error(ErrorCode::InputError, "expected a JSON object or array of coefficients");
    }
    if (!arr.is_array()) throw Error(ErrorCode::InputError, "\"s\" must be an array");
    std::vector<cplx> s;
    for (const auto& v : arr) s.push_back(parse_entry(v));
    const int deg = d ? *d : static_cast<int>(s.size()) - 1;
    return make_state(deg, s);
}

QubitState load_coeffs(const std::string& path_or_inline, std::optional<int> d)
{
    std::string text = path_or_inline;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw Error(ErrorCode::InputError, "empty coefficient argument");
    if (text[first] != '[' && text[first] != '{') {
        std::ifstream in(path_or_inline);
        if (!in) throw Error(ErrorCode::InputError, "cannot open " + path_or_inline);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InputError, std::string("malformed JSON: ") + e.what());
    }
    return parse_state(doc, d);
}

std::vector<Field> parse_fields(const std::string& spec)
{
    std::vector<Field> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Field f;
        if (tok == "complex") f = Field::complex;
        else if (tok == "real") f = Field::real;
        else throw Error(ErrorCode::InputError, "unknown field '" + tok + "'");
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    if (out.empty()) throw Error(ErrorCode::InputError, "no field requested");
    return out;
}

std::vector<int> parse_index(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InputError, "bad index entry '" + tok + "'");
        }
    }
    return out;
}

json state_json(const QubitState& st)
{
    json s = json::array();
    for (const auto& c : st.s) s.push_back(cjson(c));
    return {{"d", st.d}, {"s", s}};
}

json cmd_compute(const ComputeRequest& req)
{
    const QubitState& st = req.state;
    for (Field f : req.fields)
        if (f == Field::real && !st.is_real)
            throw Error(ErrorCode::NotReal, "real field requested for a state with complex coefficients");
    json rep;
    rep["tool"] = "specnorm";
    rep["version"] = kToolVersion;
    rep["input"] = state_json(st);
    const double hs = hs_norm(st);
    rep["hs_norm"] = hs;
    json results = json::object();
    std::optional<double> sigma_c;
    for (Field f : req.fields) {
        const auto r = spectral_norm(st, f, req.opt);
        results[field_name(f)] = result_json(r);
        if (f == Field::complex) sigma_c = r.sigma;
    }
    rep["results"] = results;
    if (sigma_c && std::abs(hs - 1.0) <= 1e-8) {
        const auto m = measure_from_sigma(*sigma_c, st.d);
        rep["eta"] = m.eta;
        rep["eta_rel"] = m.eta_rel;
    }
    const auto cls = st.d > 2 ? detect_exceptional(st, req.opt.zero_poly) : ExceptionalClass{};
    rep["exceptional"] = class_json(cls);
    if (cls.kind == ExceptionalKind::not_exceptional) {
        rep["census"] = census_json(anti_eigen_census(st, req.opt));
        if (req.emit_roots) {
            json rows = json::array();
            int no = 1;
            for (const auto& c : candidate_roots(st, req.opt)) {
                rows.push_back({{"no", no++},
                                {"z", cjson(c.z)},
                                {"multiplicity", c.multiplicity},
                                {"field", c.in_R1prime ? "R" : "C"},
                                {"lambda_q", c.lambda_q},
                                {"lambda_v", c.lambda_v},
                                {"in_R", c.in_R},
                                {"in_Rprime", c.in_Rprime},
                                {"residual", c.r_residual}});
            }
            rep["roots"] = rows;
        }
    } else {
        rep["census"] = nullptr;
        if (req.emit_roots) rep["roots"] = json::array();
    }
    if (req.oracle_check) rep["oracle"] = cmd_oracle(st, req.fields, req.seed);
    return rep;
}

json cmd_census(const QubitState& st, const EngineOptions& opt)
{
    json rep;
    rep["input"] = state_json(st);
    rep["census"] = census_json(anti_eigen_census(st, opt));
    return rep;
}

json cmd_oracle(const QubitState& st, const std::vector<Field>& fields, std::uint64_t seed)
{
    OracleConfig cfg;
    cfg.seed = seed;
    json j = json::object();
    for (Field f : fields) {
        const auto o = oracle_max(st, f, cfg);
        j[field_name(f)] = {{"value", o.value},
                            {"argmax", json::array({cjson(o.argmax.x0), cjson(o.argmax.x1)})},
                            {"restarts", cfg.restarts},
                            {"seed", seed}};
    }
    return j;
}

ComputeRequest request_from_json(const json& line)
{
    ComputeRequest req;
    req.state = parse_state(line);
    if (line.is_object()) {
        if (line.contains("field")) req.fields = parse_fields(line.at("field").get<std::string>());
        if (line.contains("tol")) req.opt.tol = line.at("tol").get<double>();
        if (line.contains("roots")) req.emit_roots = line.at("roots").get<bool>();
        if (line.contains("oracle")) req.oracle_check = line.at("oracle").get<bool>();
        if (line.contains("seed")) req.seed = line.at("seed").get<std::uint64_t>();
    }
    return req;
}

std::vector<json> run_batch(const std::vector<std::string>& lines)
{
    std::vector<json> out(lines.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < lines.size(); i = next++) {
            try {
                json doc;
                try {
                    doc = json::parse(lines[i]);
                } catch (const json::exception& e) {
                    throw Error(ErrorCode::InputError, std::string("malformed JSON: ") + e.what());
                }
                out[i] = cmd_compute(request_from_json(doc));
            } catch (const Error& e) {
                out[i] = {{"error", error_name(e.code())}, {"message", e.what()}, {"line", i + 1}};
            } catch (const json::exception& e) {
                out[i] = {{"error", "InputError"}, {"message", e.what()}, {"line", i + 1}};
            }
        }
    };
    const unsigned nt = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(lines.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

namespace {

std::string join(const std::vector<int>& v)
{
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

ReproduceOutcome reproduce_appendix()
{
    ReproduceOutcome out;
    std::ostringstream os;
    os << "example  d   sigma_C   ref      |dC|      sigma_R   ref      |dR|      deg  roots  real  R-exclusions\n";
    for (const auto& ex : load_appendix()) {
        const auto c = check_example(ex);
        const bool ok = c.dev_complex <= 5e-4 && c.dev_real <= 5e-4;
        out.ok = out.ok && ok;
        char line[256];
        std::snprintf(line, sizeof line, "%-7s %2d  %.5f  %.4f  %.2e  %.5f  %.4f  %.2e  %3d  %5d  %4d  ", ex.id.c_str(), ex.d,
                      c.sigma_complex, ex.sigma_complex, c.dev_complex, c.sigma_real, ex.sigma_real, c.dev_real,
                      c.fixed_point_degree, c.distinct_roots, c.real_roots);
        os << line;
        if (c.has_membership) os << (c.membership_match ? "match" : "differs: computed " + join(c.excluded) + " printed " + join(*ex.R_excluded));
        else os << "-";
        if (!c.counts_match)
            os << "  [printed counts " << ex.fixed_point_degree << "/" << ex.distinct_roots << "/" << ex.real_roots << "]";
        os << (ok ? "" : "  FAIL") << "\n";
    }
    out.text = os.str();
    return out;
}

ReproduceOutcome reproduce_tables()
{
    ReproduceOutcome out;
    std::ostringstream os;
    for (const auto& fam : load_families()) {
        const QubitState st = family_state(fam.m);
        const auto cls = detect_exceptional(st);
        const auto closed = norm_two_root_real(cls, st);
        os << "m = " << fam.m << " (d = " << 2 * fam.m << "), closed real value " << fmt("%.10f", closed.sigma)
           << " vs " << fmt("%.10f", fam.closed_form) << "\n";
        out.ok = out.ok && std::abs(closed.sigma - fam.closed_form) <= 1e-9;
        os << "  eps       sigma_R    ref       |d|       sigma_C    ref       |d|\n";
        for (const auto& row : fam.rows) {
            const auto r = bracket_at(st, row.eps, PerturbScheme::endpoint_reweight, Field::real);
            const auto c = bracket_at(st, row.eps, PerturbScheme::endpoint_reweight, Field::complex);
            const double dr = std::abs(r.sigma - row.sigma_real), dc = std::abs(c.sigma - row.sigma_complex);
            const bool ok = dr <= 5e-5 && dc <= 5e-5;
            out.ok = out.ok && ok;
            char line[200];
            std::snprintf(line, sizeof line, "  %-8g  %.6f   %.5f   %.2e  %.6f   %.5f   %.2e%s\n", row.eps, r.sigma,
                          row.sigma_real, dr, c.sigma, row.sigma_complex, dc, ok ? "" : "  FAIL");
            os << line;
        }
    }
    out.text = os.str();
    return out;
}

ReproduceOutcome reproduce_table1()
{
    ReproduceOutcome out;
    std::ostringstream os;
    os << " d   eta      ref      eta_rel   ref\n";
    for (const auto& row : load_table1()) {
        char line[160];
        if (row.dicke.empty()) {
            std::snprintf(line, sizeof line, "%2d   -        %-7g  -         %-7g  reference only\n", row.d, row.eta,
                          row.eta_rel);
        } else {
            const auto m = measure_report(standard_basis_state(row.d, row.dicke));
            const bool ok = std::abs(m.eta - row.eta) <= 1e-4 && std::abs(m.eta_rel - row.eta_rel) <= 1e-4;
            out.ok = out.ok && ok;
            std::snprintf(line, sizeof line, "%2d   %.5f  %.4f   %.5f  %.4f%s\n", row.d, m.eta, row.eta, m.eta_rel,
                          row.eta_rel, ok ? "" : "  FAIL");
        }
        os << line;
    }
    out.text = os.str();
    return out;
}

} // namespace

ReproduceOutcome cmd_reproduce(const std::string& target)
{
    if (target == "appendixA") return reproduce_appendix();
    if (target == "tables2to4") return reproduce_tables();
    if (target == "table1") return reproduce_table1();
    throw Error(ErrorCode::UnknownTarget, "unknown reproduce target '" + target + "'");
}

std::string dump17(const json& j, int indent)
{
    std::string out;
    dump_rec(j, indent, 0, out);
    return out;
}

std::string render_table(const json& rep)
{
    std::ostringstream os;
    os << "d = " << rep.at("input").at("d").get<int>() << ", hs_norm = " << fmt("%.6f", rep.at("hs_norm").get<double>())
       << "\n";
    for (const auto& [name, r] : rep.at("results").items()) {
        os << "sigma (" << name << ") = " << fmt("%.6f", r.at("sigma").get<double>()) << "  ["
           << r.at("method").get<std::string>() << "]";
        if (r.at("bracket_halfwidth").get<double>() > 0.0)
            os << " +- " << fmt("%.2e", r.at("bracket_halfwidth").get<double>());
        os << "\n";
    }
    if (rep.contains("eta"))
        os << "eta = " << fmt("%.4f", rep.at("eta").get<double>()) << ", eta_rel = " << fmt("%.4f", rep.at("eta_rel").get<double>())
           << "\n";
    os << "exceptional: " << rep.at("exceptional").at("kind").get<std::string>() << "\n";
    if (rep.contains("oracle"))
        for (const auto& [name, o] : rep.at("oracle").items())
            os << "oracle (" << name << ") = " << fmt("%.6f", o.at("value").get<double>()) << "\n";
    if (rep.contains("roots") && !rep.at("roots").empty()) {
        os << "\n No.  z                          Field  lambda_q  lambda_v  in R\n";
        for (const auto& r : rep.at("roots")) {
            const cplx z{r.at("z")[0].get<double>(), r.at("z")[1].get<double>()};
            char line[160];
            std::snprintf(line, sizeof line, "%4d  %-26s %-5s  %.4f    %.4f    %s\n", r.at("no").get<int>(), zstr(z).c_str(),
                          r.at("field").get<std::string>().c_str(), r.at("lambda_q").get<double>(),
                          r.at("lambda_v").get<double>(), r.at("in_R").get<bool>() ? "yes" : "no");
            os << line;
        }
    }
    return os.str();
}

int exit_code_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::InternalInconsistency:
    case ErrorCode::DidNotConverge:
    case ErrorCode::ClassificationFailure:
    case ErrorCode::BracketNotReached:
    case ErrorCode::ExceptionalFamily:
        return 3;
    default:
        return 2;
    }
}

} // namespace specnorm
