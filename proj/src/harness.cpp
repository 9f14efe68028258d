#include "conefix/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace conefix {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------- input ----

const json& require_field(const json& obj, const std::string& section, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error("missing field " + section + "." + key);
    return *it;
}

void reject_unknown_keys(const json& obj, const std::string& section,
                         std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw Error("unknown field " + section + "." + it.key());
    }
}

double get_number(const json& obj, const std::string& section, const char* key) {
    const json& v = require_field(obj, section, key);
    if (!v.is_number()) throw Error("field " + section + "." + key + " must be a number");
    return v.get<double>();
}

std::string get_string(const json& obj, const std::string& section, const char* key) {
    const json& v = require_field(obj, section, key);
    if (!v.is_string()) throw Error("field " + section + "." + key + " must be a string");
    return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& section, const char* key) {
    const json& v = require_field(obj, section, key);
    if (!v.is_boolean()) throw Error("field " + section + "." + key + " must be a boolean");
    return v.get<bool>();
}

MPoint parse_point(const json& v, const std::string& where) {
    if (v.is_number()) return MPoint::scalar(v.get<double>());
    if (v.is_array() && !v.empty()) {
        std::vector<double> coords;
        for (const auto& c : v) {
            if (!c.is_number()) throw Error(where + " must contain numbers");
            coords.push_back(c.get<double>());
        }
        return MPoint(std::move(coords));
    }
    throw Error(where + " must be a number or a nonempty array of numbers");
}

DomainBox parse_domain(const json& v, const std::string& where) {
    DomainBox box;
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        box.push_back({v[0].get<double>(), v[1].get<double>()});
    } else if (v.is_array()) {
        for (const auto& iv : v) {
            if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
                throw Error(where + " intervals must be [lo, hi] pairs");
            box.push_back({iv[0].get<double>(), iv[1].get<double>()});
        }
    }
    if (box.empty()) throw Error(where + " must be [lo, hi] or a list of [lo, hi] pairs");
    for (const auto& iv : box)
        if (!(iv.lo <= iv.hi)) throw Error(where + " has an interval with lo > hi");
    return box;
}

MapExpr parse_expression_field(const std::string& source, const std::string& field) {
    try {
        return parse_map(source);
    } catch (const ParseError& e) {
        throw Error("field " + field + ": " + e.what());
    }
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what(), e.byte);
    }
    if (!doc.is_object()) throw Error(origin + ": problem file must be a JSON object");
    reject_unknown_keys(doc, origin, {"space", "maps", "contraction", "solve"});

    ProblemFile pf;
    pf.origin = origin;

    const json& space = require_field(doc, origin, "space");
    reject_unknown_keys(space, "space",
                        {"grid_size", "weight", "base", "cone_margin", "normal_constant",
                         "membership_slack"});
    const double m = get_number(space, "space", "grid_size");
    if (m < 2 || m != static_cast<double>(static_cast<std::size_t>(m)))
        throw Error("field space.grid_size must be an integer >= 2");
    pf.grid_size = static_cast<std::size_t>(m);
    pf.weight_source = get_string(space, "space", "weight");
    pf.weight = parse_expression_field(pf.weight_source, "space.weight");
    const std::string base = get_string(space, "space", "base");
    if (base == "absolute_difference")
        pf.base = BaseDistance::absolute_difference;
    else if (base == "euclidean")
        pf.base = BaseDistance::euclidean;
    else
        throw Error("field space.base must be 'absolute_difference' or 'euclidean'");
    pf.cone_margin = get_number(space, "space", "cone_margin");
    if (!(pf.cone_margin > 0.0)) throw Error("field space.cone_margin must be > 0");
    pf.normal_constant = get_number(space, "space", "normal_constant");
    if (!(pf.normal_constant > 0.0)) throw Error("field space.normal_constant must be > 0");
    if (space.contains("membership_slack")) {
        pf.membership_slack = get_number(space, "space", "membership_slack");
        if (pf.membership_slack < 0.0) throw Error("field space.membership_slack must be >= 0");
    }

    const json& maps = require_field(doc, origin, "maps");
    reject_unknown_keys(maps, "maps", {"T", "S", "capabilities"});
    pf.T_source = get_string(maps, "maps", "T");
    pf.S_source = get_string(maps, "maps", "S");
    pf.T = parse_expression_field(pf.T_source, "maps.T");
    pf.S = parse_expression_field(pf.S_source, "maps.S");
    const json& caps = require_field(maps, "maps", "capabilities");
    reject_unknown_keys(caps, "maps.capabilities",
                        {"injective", "continuous", "subsequentially_convergent",
                         "sequentially_convergent"});
    pf.capabilities.injective = get_bool(caps, "maps.capabilities", "injective");
    pf.capabilities.continuous = get_bool(caps, "maps.capabilities", "continuous");
    pf.capabilities.subsequentially_convergent =
        get_bool(caps, "maps.capabilities", "subsequentially_convergent");
    pf.capabilities.sequentially_convergent =
        get_bool(caps, "maps.capabilities", "sequentially_convergent");
    if (pf.capabilities.sequentially_convergent && !pf.capabilities.subsequentially_convergent)
        throw Error(
            "field maps.capabilities: sequentially_convergent requires "
            "subsequentially_convergent");

    const json& contraction = require_field(doc, origin, "contraction");
    reject_unknown_keys(contraction, "contraction", {"kind", "constant"});
    pf.kind = contraction_kind_from_string(get_string(contraction, "contraction", "kind"));
    pf.constant = get_number(contraction, "contraction", "constant");
    if (!(pf.constant >= 0.0 && pf.constant < 0.5))
        throw Error("field contraction.constant out of [0, 1/2)");

    const json& solve = require_field(doc, origin, "solve");
    reject_unknown_keys(solve, "solve",
                        {"x0", "domain", "tol", "max_iter", "extra_starts"});
    pf.x0 = parse_point(require_field(solve, "solve", "x0"), "solve.x0");
    pf.domain = parse_domain(require_field(solve, "solve", "domain"), "solve.domain");
    if (pf.domain.size() != pf.x0.dimension())
        throw Error("solve.domain and solve.x0 must have the same dimension");
    for (std::size_t i = 0; i < pf.domain.size(); ++i)
        if (!pf.domain[i].contains(pf.x0[i]))
            throw Error("solve.x0 lies outside solve.domain");
    pf.tol = get_number(solve, "solve", "tol");
    if (!(pf.tol > 0.0)) throw Error("field solve.tol must be > 0");
    const double mi = get_number(solve, "solve", "max_iter");
    if (mi < 1 || mi != static_cast<double>(static_cast<std::size_t>(mi)))
        throw Error("field solve.max_iter must be an integer >= 1");
    pf.max_iter = static_cast<std::size_t>(mi);
    if (solve.contains("extra_starts")) {
        const json& starts = solve["extra_starts"];
        if (!starts.is_array()) throw Error("solve.extra_starts must be an array");
        for (const auto& s : starts) {
            MPoint p = parse_point(s, "solve.extra_starts entry");
            if (p.dimension() != pf.x0.dimension())
                throw Error("solve.extra_starts entry has wrong dimension");
            for (std::size_t i = 0; i < pf.domain.size(); ++i)
                if (!pf.domain[i].contains(p[i]))
                    throw Error("solve.extra_starts entry lies outside solve.domain");
            pf.extra_starts.push_back(std::move(p));
        }
    }
    return pf;
}

ProblemFile load_problem(const std::string& path_or_fixture) {
    std::ifstream in(path_or_fixture);
    if (!in) {
        if (is_fixture_name(path_or_fixture))
            return parse_problem_json(fixture_json(path_or_fixture), path_or_fixture);
        throw Error("cannot open problem file '" + path_or_fixture + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty()) throw Error("problem file '" + path_or_fixture + "' is empty");
    return parse_problem_json(text, path_or_fixture);
}

ConeMetricSpace ProblemFile::to_space() const {
    ConeMetricSpace space = ConeMetricSpace::make(x0.dimension(), grid_size, weight, base,
                                                  cone_margin, normal_constant);
    space.cone.membership_slack = membership_slack;
    return space;
}

Problem ProblemFile::to_problem() const {
    Problem p;
    p.space = to_space();
    p.T = T;
    p.T_capabilities = capabilities;
    p.S = S;
    p.kind = kind;
    p.constant = constant;
    p.x0 = x0;
    p.domain = domain;
    return p;
}

// --------------------------------------------------------------- output ----

namespace {

ordered_json point_to_json(const MPoint& p) { return ordered_json(p.coords); }

MPoint point_from_json(const ordered_json& v) {
    return MPoint(v.get<std::vector<double>>());
}

ordered_json axiom_report_to_json(const AxiomReport& r) {
    ordered_json violations = ordered_json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"axiom", v.axiom}, {"detail", v.detail}});
    return {{"samples_checked", r.samples_checked}, {"violations", violations}};
}

AxiomReport axiom_report_from_json(const ordered_json& j) {
    AxiomReport r;
    r.samples_checked = j.at("samples_checked").get<std::size_t>();
    for (const auto& v : j.at("violations"))
        r.violations.push_back({v.at("axiom").get<std::string>(),
                                v.at("detail").get<std::string>()});
    return r;
}

ordered_json normality_to_json(const NormalityReport& r) {
    ordered_json j;
    j["k_observed"] = r.k_observed;
    j["pass"] = r.pass;
    j["witness_x"] = r.witness_x ? ordered_json(r.witness_x->samples()) : ordered_json(nullptr);
    j["witness_y"] = r.witness_y ? ordered_json(r.witness_y->samples()) : ordered_json(nullptr);
    return j;
}

NormalityReport normality_from_json(const ordered_json& j) {
    NormalityReport r;
    r.k_observed = j.at("k_observed").get<double>();
    r.pass = j.at("pass").get<bool>();
    if (!j.at("witness_x").is_null())
        r.witness_x = EVector(j.at("witness_x").get<std::vector<double>>());
    if (!j.at("witness_y").is_null())
        r.witness_y = EVector(j.at("witness_y").get<std::vector<double>>());
    return r;
}

ordered_json contraction_to_json(const ContractionReport& r) {
    ordered_json violations = ordered_json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"pair_index", v.pair_index},
                              {"x", point_to_json(v.x)},
                              {"y", point_to_json(v.y)},
                              {"lhs_norm", v.lhs_norm},
                              {"rhs_norm", v.rhs_norm}});
    }
    ordered_json j;
    j["kind"] = to_string(r.kind);
    j["constant"] = r.constant;
    j["pairs_checked"] = r.pairs_checked;
    j["estimated_min_constant"] =
        r.estimated_min_constant ? ordered_json(*r.estimated_min_constant)
                                 : ordered_json(nullptr);
    j["violations"] = violations;
    return j;
}

ContractionReport contraction_from_json(const ordered_json& j) {
    ContractionReport r;
    r.kind = contraction_kind_from_string(j.at("kind").get<std::string>());
    r.constant = j.at("constant").get<double>();
    r.pairs_checked = j.at("pairs_checked").get<std::size_t>();
    if (!j.at("estimated_min_constant").is_null())
        r.estimated_min_constant = j.at("estimated_min_constant").get<double>();
    for (const auto& v : j.at("violations")) {
        ContractionViolation cv;
        cv.pair_index = v.at("pair_index").get<std::size_t>();
        cv.x = point_from_json(v.at("x"));
        cv.y = point_from_json(v.at("y"));
        cv.lhs_norm = v.at("lhs_norm").get<double>();
        cv.rhs_norm = v.at("rhs_norm").get<double>();
        r.violations.push_back(std::move(cv));
    }
    return r;
}

ordered_json solve_to_json(const FixedPointResult& r) {
    ordered_json j;
    j["converged"] = r.converged;
    j["u"] = point_to_json(r.u);
    j["iterations"] = r.iterations;
    j["v_norm_gap"] = r.v_norm_gap;
    j["subsequential_only"] = r.subsequential_only;
    j["unique_probe"] = r.unique_probe ? ordered_json(*r.unique_probe) : ordered_json(nullptr);
    j["trace"] = r.trace;
    j["certificate"] = {{"h", r.certificate.h},
                        {"d0_norm", r.certificate.d0_norm},
                        {"aposteriori_residual", r.certificate.aposteriori_residual},
                        {"decay_verified", r.certificate.decay_verified},
                        {"apriori_curve", r.certificate.apriori_curve}};
    return j;
}

FixedPointResult solve_from_json(const ordered_json& j) {
    FixedPointResult r;
    r.converged = j.at("converged").get<bool>();
    r.u = point_from_json(j.at("u"));
    r.iterations = j.at("iterations").get<std::size_t>();
    r.v_norm_gap = j.at("v_norm_gap").get<double>();
    r.subsequential_only = j.at("subsequential_only").get<bool>();
    if (!j.at("unique_probe").is_null()) r.unique_probe = j.at("unique_probe").get<bool>();
    r.trace = j.at("trace").get<std::vector<double>>();
    const ordered_json& c = j.at("certificate");
    r.certificate.h = c.at("h").get<double>();
    r.certificate.d0_norm = c.at("d0_norm").get<double>();
    r.certificate.aposteriori_residual = c.at("aposteriori_residual").get<double>();
    r.certificate.decay_verified = c.at("decay_verified").get<bool>();
    r.certificate.apriori_curve = c.at("apriori_curve").get<std::vector<double>>();
    return r;
}

bool axiom_reports_equal(const AxiomReport& a, const AxiomReport& b) {
    if (a.samples_checked != b.samples_checked || a.violations.size() != b.violations.size())
        return false;
    for (std::size_t i = 0; i < a.violations.size(); ++i)
        if (a.violations[i].axiom != b.violations[i].axiom ||
            a.violations[i].detail != b.violations[i].detail)
            return false;
    return true;
}

bool normality_equal(const NormalityReport& a, const NormalityReport& b) {
    return a.k_observed == b.k_observed && a.pass == b.pass && a.witness_x == b.witness_x &&
           a.witness_y == b.witness_y;
}

bool solve_equal(const FixedPointResult& a, const FixedPointResult& b) {
    return a.converged == b.converged && a.u == b.u && a.iterations == b.iterations &&
           a.v_norm_gap == b.v_norm_gap && a.subsequential_only == b.subsequential_only &&
           a.unique_probe == b.unique_probe && a.trace == b.trace &&
           a.certificate.h == b.certificate.h && a.certificate.d0_norm == b.certificate.d0_norm &&
           a.certificate.aposteriori_residual == b.certificate.aposteriori_residual &&
           a.certificate.decay_verified == b.certificate.decay_verified &&
           a.certificate.apriori_curve == b.certificate.apriori_curve;
}

}  // namespace

bool RunReport::success() const {
    if (contraction && !contraction->clean()) return false;
    if (contraction && subcommand == "estimate" && !contraction->estimated_min_constant)
        return false;
    if (solve && !(solve->converged && solve->unique_probe.value_or(true))) return false;
    if (verify && !verify->pass()) return false;
    return true;
}

std::string RunReport::to_json_text() const {
    ordered_json j;
    j["problem"] = problem;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["tol"] = tol;
    j["max_iter"] = max_iter;
    if (contraction) j["contraction"] = contraction_to_json(*contraction);
    if (solve) j["solve"] = solve_to_json(*solve);
    if (verify) {
        j["verify"] = {{"cone_axioms", axiom_report_to_json(verify->cone_axioms)},
                       {"normality", normality_to_json(verify->normality)},
                       {"metric_axioms", axiom_report_to_json(verify->metric_axioms)}};
    }
    j["success"] = success();
    if (wall_ms) j["wall_ms"] = *wall_ms;
    return j.dump(2) + "\n";
}

RunReport RunReport::from_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    RunReport r;
    r.problem = j.at("problem").get<std::string>();
    r.subcommand = j.at("subcommand").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tol = j.at("tol").get<double>();
    r.max_iter = j.at("max_iter").get<std::uint64_t>();
    if (j.contains("contraction")) r.contraction = contraction_from_json(j.at("contraction"));
    if (j.contains("solve")) r.solve = solve_from_json(j.at("solve"));
    if (j.contains("verify")) {
        VerifySection v;
        v.cone_axioms = axiom_report_from_json(j.at("verify").at("cone_axioms"));
        v.normality = normality_from_json(j.at("verify").at("normality"));
        v.metric_axioms = axiom_report_from_json(j.at("verify").at("metric_axioms"));
        r.verify = std::move(v);
    }
    if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

bool RunReport::operator==(const RunReport& other) const {
    if (problem != other.problem || subcommand != other.subcommand || seed != other.seed ||
        tol != other.tol || max_iter != other.max_iter)
        return false;
    if (contraction.has_value() != other.contraction.has_value()) return false;
    if (contraction && !(*contraction == *other.contraction)) return false;
    if (solve.has_value() != other.solve.has_value()) return false;
    if (solve && !solve_equal(*solve, *other.solve)) return false;
    if (verify.has_value() != other.verify.has_value()) return false;
    if (verify) {
        if (!axiom_reports_equal(verify->cone_axioms, other.verify->cone_axioms) ||
            !normality_equal(verify->normality, other.verify->normality) ||
            !axiom_reports_equal(verify->metric_axioms, other.verify->metric_axioms))
            return false;
    }
    return wall_ms == other.wall_ms;
}

// ------------------------------------------------------------- dispatch ----

Subcommand subcommand_from_string(const std::string& name) {
    if (name == "check") return Subcommand::check;
    if (name == "estimate") return Subcommand::estimate;
    if (name == "solve") return Subcommand::solve;
    if (name == "verify") return Subcommand::verify;
    if (name == "all") return Subcommand::all;
    throw Error("unknown subcommand '" + name + "'");
}

std::string to_string(Subcommand sc) {
    switch (sc) {
        case Subcommand::check: return "check";
        case Subcommand::estimate: return "estimate";
        case Subcommand::solve: return "solve";
        case Subcommand::verify: return "verify";
        case Subcommand::all: return "all";
    }
    return "?";
}

RunReport run(const std::string& path_or_fixture, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const ProblemFile pf = load_problem(path_or_fixture);
    const ConeMetricSpace space = pf.to_space();
    const double tol = options.tol.value_or(pf.tol);
    const std::size_t max_iter = options.max_iter.value_or(pf.max_iter);

    RunReport report;
    report.problem = path_or_fixture;
    report.subcommand = to_string(options.subcommand);
    report.seed = options.seed;
    report.tol = tol;
    report.max_iter = max_iter;

    const bool want_check = options.subcommand == Subcommand::check ||
                            options.subcommand == Subcommand::estimate ||
                            options.subcommand == Subcommand::all;
    const bool want_solve =
        options.subcommand == Subcommand::solve || options.subcommand == Subcommand::all;
    const bool want_verify =
        options.subcommand == Subcommand::verify || options.subcommand == Subcommand::all;

    if (want_check) {
        report.contraction = check_condition(space, pf.T, pf.S, pf.kind, pf.constant,
                                             options.check_pairs, pf.domain, options.seed);
    }
    if (want_solve) {
        Problem problem = pf.to_problem();
        FixedPointResult result = solve(problem, tol, max_iter);
        if (!pf.extra_starts.empty()) {
            std::vector<MPoint> starts;
            starts.push_back(pf.x0);
            starts.insert(starts.end(), pf.extra_starts.begin(), pf.extra_starts.end());
            result.unique_probe = uniqueness_probe(problem, starts, tol, max_iter);
        }
        report.solve = std::move(result);
    }
    if (want_verify) {
        VerifySection v;
        v.cone_axioms = verify_cone_axioms(space.cone, options.verify_samples, options.seed);
        v.normality = verify_normality(space.cone, options.verify_samples, options.seed + 1);
        v.metric_axioms = verify_metric_axioms(space, options.verify_samples, options.seed + 2);
        report.verify = std::move(v);
    }

    if (options.timings) {
        const auto t1 = std::chrono::steady_clock::now();
        report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    return report;
}

namespace {

void write_summary(const RunReport& report, std::ostream& os) {
    os << "conefix " << report.subcommand << " " << report.problem << " (seed " << report.seed
       << ")\n";
    if (report.contraction) {
        const auto& c = *report.contraction;
        os << "  contraction " << to_string(c.kind) << " constant " << c.constant << ": "
           << c.violations.size() << " violation(s) over " << c.pairs_checked << " pairs";
        if (c.estimated_min_constant)
            os << ", estimated min constant " << *c.estimated_min_constant;
        else
            os << ", no finite constant admissible";
        os << "\n";
    }
    if (report.solve) {
        const auto& s = *report.solve;
        os << "  solve: " << (s.converged ? "converged" : "did not converge") << " in "
           << s.iterations << " iteration(s), |u|_inf = ";
        double m = 0.0;
        for (double v : s.u.coords) m = std::max(m, std::fabs(v));
        os << m << ", a posteriori residual " << s.certificate.aposteriori_residual;
        if (s.unique_probe) os << ", uniqueness probe " << (*s.unique_probe ? "pass" : "FAIL");
        if (s.subsequential_only) os << " [subsequential-only]";
        os << "\n";
    }
    if (report.verify) {
        const auto& v = *report.verify;
        os << "  verify: cone axioms " << (v.cone_axioms.pass() ? "pass" : "FAIL")
           << ", normality " << (v.normality.pass ? "pass" : "FAIL") << " (K_observed "
           << v.normality.k_observed << ")"
           << ", metric axioms " << (v.metric_axioms.pass() ? "pass" : "FAIL") << "\n";
    }
    os << "  result: " << (report.success() ? "OK" : "FAILED") << "\n";
}

}  // namespace

int run_to_streams(const std::string& path_or_fixture, const RunOptions& options,
                   std::ostream& report_out, std::ostream& summary_out,
                   const std::optional<std::string>& out_file) {
    try {
        const auto t0 = std::chrono::steady_clock::now();
        RunReport report = run(path_or_fixture, options);
        const std::string text = report.to_json_text();
        report_out << text;
        if (out_file) {
            std::ofstream f(*out_file);
            if (!f) throw Error("cannot write report to '" + *out_file + "'");
            f << text;
        }
        write_summary(report, summary_out);
        const auto t1 = std::chrono::steady_clock::now();
        summary_out << "  wall time "
                    << std::chrono::duration<double, std::milli>(t1 - t0).count() << " ms\n";
        return report.success() ? 0 : 1;
    } catch (const Error& e) {
        summary_out << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace conefix
