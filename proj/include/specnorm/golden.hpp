#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specnorm/core.hpp"
#include "specnorm/engine.hpp"

namespace specnorm {

struct GoldenRoot {
    int no = 0;
    cplx z;
    bool real = false;
    double lambda_q = 0.0;
    double lambda_v = 0.0;
};

struct GoldenExample {
    std::string id;
    int d = 0;
    std::vector<double> s;
    double sigma_complex = 0.0;
    double sigma_real = 0.0;
    int fixed_point_degree = 0;
    int distinct_roots = 0;
    int real_roots = 0;
    std::optional<std::vector<int>> R_excluded;
    std::vector<GoldenRoot> roots;

    QubitState state() const { return make_real_state(d, s); }
};

struct GoldenEpsRow {
    double eps = 0.0;
    double sigma_real = 0.0;
    double sigma_complex = 0.0;
};

struct GoldenFamily {
    int m = 0;
    double closed_form = 0.0;
    std::vector<GoldenEpsRow> rows;
};

struct GoldenEtaRow {
    int d = 0;
    double eta = 0.0;
    double eta_rel = 0.0;
    std::vector<int> dicke;  // empty when coefficients are unknown
};

std::string data_dir();
std::vector<GoldenExample> load_appendix(const std::string& path = data_dir() + "/appendix_a.json");
std::vector<GoldenFamily> load_families(const std::string& path = data_dir() + "/tables2to4.json");
std::vector<GoldenEtaRow> load_table1(const std::string& path = data_dir() + "/table1.json");

// State of the (z^2-1)^m family, unit norm.
QubitState family_state(int m);

struct ExampleCheck {
    std::string id;
    double sigma_complex = 0.0, sigma_real = 0.0;
    double dev_complex = 0.0, dev_real = 0.0;
    int fixed_point_degree = 0, distinct_roots = 0, real_roots = 0;
    bool counts_match = false;
    bool has_membership = false;
    std::vector<int> excluded;  // in the printed numbering
    bool membership_match = false;
    double max_root_dev = 0.0;    // printed row vs nearest computed root
    double max_lambda_dev = 0.0;
    double seconds = 0.0;
};

// Candidate roots matched to printed rows: index into cands per row, -1 if none.
std::vector<int> match_rows(const std::vector<CandidateRoot>& cands, const std::vector<GoldenRoot>& rows);

ExampleCheck check_example(const GoldenExample& ex);

} // namespace specnorm
