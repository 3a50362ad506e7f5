#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specnorm/cli.hpp"
#include "specnorm/measures.hpp"

using namespace specnorm;

namespace {

struct Common {
    int d = -1;
    std::string coeffs;
    std::vector<std::string> dicke;
    std::string field = "complex";
    double tol = 1e-8;
    bool roots = false;
    bool oracle = false;
    std::uint64_t seed = 0x5eed;
    std::string format = "json";
    std::string batch;
};

void add_state_options(CLI::App* cmd, Common& o)
{
    cmd->add_option("--d", o.d, "Degree (number of qubits)");
    cmd->add_option("--coeffs", o.coeffs, "Coefficient file or inline JSON");
    cmd->add_option("--dicke", o.dicke, "Dicke state: <d> <j1,j2>")->expected(2);
    cmd->add_option("--field", o.field, "complex, real or complex,real");
    cmd->add_option("--tol", o.tol, "Root and real-axis tolerance");
    cmd->add_option("--seed", o.seed, "Oracle seed");
    cmd->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

QubitState state_from(const Common& o)
{
    if (!o.dicke.empty()) {
        int d = 0;
        try {
            d = std::stoi(o.dicke[0]);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InputError, "bad Dicke degree '" + o.dicke[0] + "'");
        }
        return standard_basis_state(d, parse_index(o.dicke[1]));
    }
    if (o.coeffs.empty()) throw Error(ErrorCode::InputError, "one of --coeffs or --dicke is required");
    return load_coeffs(o.coeffs, o.d >= 0 ? std::optional<int>(o.d) : std::nullopt);
}

void emit(const nlohmann::json& rep, const std::string& format)
{
    if (format == "table") std::cout << render_table(rep);
    else std::cout << dump17(rep) << "\n";
}

int run_compute(const Common& o)
{
    if (!o.batch.empty()) {
        std::ifstream in(o.batch);
        if (!in) throw Error(ErrorCode::InputError, "cannot open " + o.batch);
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);)
            if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
        int code = 0;
        for (const auto& rep : run_batch(lines)) {
            std::cout << dump17(rep, 0) << "\n";
            if (rep.contains("error")) code = 2;
        }
        return code;
    }
    ComputeRequest req;
    req.state = state_from(o);
    req.fields = parse_fields(o.field);
    req.opt.tol = o.tol;
    req.emit_roots = o.roots;
    req.oracle_check = o.oracle;
    req.seed = o.seed;
    emit(cmd_compute(req), o.format);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral norms of symmetric d-qubit tensors"};
    app.require_subcommand(1);
    Common o;
    std::string target;

    auto* compute = app.add_subcommand("compute", "Spectral norms, measures and diagnostics of one state");
    add_state_options(compute, o);
    compute->add_flag("--roots", o.roots, "Include the candidate root table");
    compute->add_flag("--oracle", o.oracle, "Run the alternating-maximization oracle");
    compute->add_option("--batch", o.batch, "JSON-lines file, one request per line");

    auto* reproduce = app.add_subcommand("reproduce", "Regenerate a reference table");
    reproduce->add_option("target", target, "table1, tables2to4 or appendixA")->required();

    auto* oracle = app.add_subcommand("oracle", "Oracle lower bound only");
    add_state_options(oracle, o);

    auto* census = app.add_subcommand("census", "Anti-eigenvector census");
    add_state_options(census, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*compute) return run_compute(o);
        if (*reproduce) {
            const auto r = cmd_reproduce(target);
            std::cout << r.text;
            return r.ok ? 0 : 1;
        }
        if (*oracle) {
            const QubitState st = state_from(o);
            nlohmann::json rep{{"input", state_json(st)}, {"oracle", cmd_oracle(st, parse_fields(o.field), o.seed)}};
            std::cout << dump17(rep) << "\n";
            return 0;
        }
        if (*census) {
            EngineOptions opt;
            opt.tol = o.tol;
            std::cout << dump17(cmd_census(state_from(o), opt)) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "specnorm: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "specnorm: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
