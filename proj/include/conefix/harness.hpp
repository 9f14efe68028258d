#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conefix/solver.hpp"

namespace conefix {

/// Parsed and fully validated problem description (one JSON file with
/// space / maps / contraction / solve sections).
struct ProblemFile {
    std::string origin;  // path or fixture name

    // space
    std::size_t grid_size = 33;
    std::string weight_source = "exp(t)";
    MapExpr weight;
    BaseDistance base = BaseDistance::absolute_difference;
    double cone_margin = 1e-12;
    double normal_constant = 1.0;
    double membership_slack = 0.0;

    // maps
    std::string T_source = "x";
    std::string S_source = "x";
    MapExpr T, S;
    MapCapabilities capabilities;

    // contraction
    ContractionKind kind = ContractionKind::TK1;
    double constant = 0.0;

    // solve
    MPoint x0 = MPoint::scalar(0.0);
    DomainBox domain;
    double tol = 1e-9;
    std::size_t max_iter = 10000;
    std::vector<MPoint> extra_starts;

    ConeMetricSpace to_space() const;
    Problem to_problem() const;
};

/// Loads and validates a problem file; fixture names resolve to the bundled
/// problems when no such file exists.
ProblemFile load_problem(const std::string& path_or_fixture);

/// Parses a problem from JSON text. `origin` labels error messages.
ProblemFile parse_problem_json(const std::string& text, const std::string& origin);

std::vector<std::string> fixture_names();
bool is_fixture_name(const std::string& name);
const std::string& fixture_json(const std::string& name);

enum class Subcommand { check, estimate, solve, verify, all };

Subcommand subcommand_from_string(const std::string& name);
std::string to_string(Subcommand sc);

struct RunOptions {
    Subcommand subcommand = Subcommand::all;
    std::uint64_t seed = 42;
    std::optional<double> tol;            // overrides the problem file
    std::optional<std::size_t> max_iter;  // overrides the problem file
    std::size_t check_pairs = 100000;
    std::size_t verify_samples = 10000;
    bool timings = false;  // adds wall-clock times to the report (breaks byte-identity)
};

struct VerifySection {
    AxiomReport cone_axioms;
    NormalityReport normality;
    AxiomReport metric_axioms;
    bool pass() const {
        return cone_axioms.pass() && normality.pass && metric_axioms.pass();
    }
};

/// Machine-readable outcome of one CLI run. Serializes to JSON with a stable
/// field order; identical problem + seed produce byte-identical text.
struct RunReport {
    std::string problem;
    std::string subcommand;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::uint64_t max_iter = 10000;
    std::optional<ContractionReport> contraction;
    std::optional<FixedPointResult> solve;
    std::optional<VerifySection> verify;
    std::optional<double> wall_ms;  // present only when RunOptions::timings

    bool success() const;
    std::string to_json_text() const;
    static RunReport from_json_text(const std::string& text);
    bool operator==(const RunReport& other) const;
};

/// Executes a subcommand against a problem file or fixture name.
RunReport run(const std::string& path_or_fixture, const RunOptions& options);

/// CLI-shaped entry point: JSON report to `report_out` (and `out_file` when
/// set), human summary to `summary_out`. Returns the process exit status:
/// 0 success, 1 violations or divergence, 2 input error.
int run_to_streams(const std::string& path_or_fixture, const RunOptions& options,
                   std::ostream& report_out, std::ostream& summary_out,
                   const std::optional<std::string>& out_file = std::nullopt);

}  // namespace conefix
