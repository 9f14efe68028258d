#include "conefix/contraction.hpp"

#include <cmath>

namespace conefix {

namespace {

constexpr double kSlack = 1e-9;

struct ScanResult {
    double max_ratio = 0.0;
    bool any_ratio = false;
    bool undefined = false;
};

/// Folds one pair into the running minimal-constant estimate.
void scan_ratio(const PairEvaluation& pe, ScanResult& scan) {
    for (std::size_t i = 0; i < pe.lhs.dimension(); ++i) {
        const double lhs = pe.lhs[i];
        const double rhs = pe.rhs_sum[i];
        if (rhs == 0.0) {
            if (lhs != 0.0) scan.undefined = true;
            continue;  // lhs = rhs = 0: no constraint from this coordinate
        }
        const double r = lhs / rhs;
        scan.any_ratio = true;
        if (r > scan.max_ratio) scan.max_ratio = r;
    }
}

}  // namespace

std::string to_string(ContractionKind kind) {
    switch (kind) {
        case ContractionKind::TK1: return "TK1";
        case ContractionKind::TK2: return "TK2";
        case ContractionKind::K1: return "K1";
        case ContractionKind::K2: return "K2";
    }
    return "?";
}

ContractionKind contraction_kind_from_string(const std::string& name) {
    if (name == "TK1") return ContractionKind::TK1;
    if (name == "TK2") return ContractionKind::TK2;
    if (name == "K1") return ContractionKind::K1;
    if (name == "K2") return ContractionKind::K2;
    throw Error("unknown contraction kind '" + name + "' (expected TK1, TK2, K1 or K2)");
}

bool PairEvaluation::satisfied(double constant) const {
    for (std::size_t i = 0; i < lhs.dimension(); ++i)
        if (constant * rhs_sum[i] - lhs[i] < -kSlack) return false;
    return true;
}

PairEvaluation evaluate_condition_pair(const ConeMetricSpace& space, const MapExpr& T,
                                       const MapExpr& S, ContractionKind kind, const MPoint& x,
                                       const MPoint& y) {
    const MapExpr id = MapExpr::identity();
    const MapExpr& t_map = uses_identity_t(kind) ? id : T;

    const MPoint Sx = eval_map(S, x);
    const MPoint Sy = eval_map(S, y);
    const MPoint Tx = eval_map(t_map, x);
    const MPoint Ty = eval_map(t_map, y);
    const MPoint TSx = eval_map(t_map, Sx);
    const MPoint TSy = eval_map(t_map, Sy);

    PairEvaluation pe;
    pe.lhs = distance(space, TSx, TSy);
    pe.rhs_sum = is_chatterjea(kind)
                     ? distance(space, Tx, TSy) + distance(space, Ty, TSx)
                     : distance(space, Tx, TSx) + distance(space, Ty, TSy);
    return pe;
}

std::vector<std::pair<MPoint, MPoint>> sample_condition_pairs(const DomainBox& domain,
                                                              std::size_t count,
                                                              std::uint64_t seed) {
    validate_box(domain);
    require(count >= 1, "sample_pairs must be >= 1");
    std::vector<std::pair<MPoint, MPoint>> pairs;
    pairs.reserve(count);
    const std::size_t k = domain.size();

    if (k == 1) {
        // Inclusive lattice: symmetric boxes hit the midpoint exactly, which
        // covers the extremal boundary pairs (x, 0) of the worked example.
        std::size_t g = static_cast<std::size_t>(std::sqrt(static_cast<double>(count) / 2.0));
        if (g % 2 == 0 && g > 0) --g;
        if (g >= 3) {
            const auto pts = lattice(domain[0], g);
            for (double a : pts)
                for (double b : pts) {
                    if (pairs.size() >= count) break;
                    pairs.emplace_back(MPoint::scalar(a), MPoint::scalar(b));
                }
        }
    } else {
        const std::size_t halton_count = count / 2;
        for (std::size_t i = 0; i < halton_count; ++i) {
            auto p = halton_point(i, 2 * k, domain);
            pairs.emplace_back(MPoint(std::vector<double>(p.begin(), p.begin() + k)),
                               MPoint(std::vector<double>(p.begin() + k, p.end())));
        }
    }

    Rng rng(seed);
    while (pairs.size() < count) {
        std::vector<double> a(k), b(k);
        for (std::size_t j = 0; j < k; ++j) {
            a[j] = rng.uniform(domain[j]);
            b[j] = rng.uniform(domain[j]);
        }
        pairs.emplace_back(MPoint(std::move(a)), MPoint(std::move(b)));
    }
    return pairs;
}

namespace {

ContractionReport run_check(const ConeMetricSpace& space, const MapExpr& T, const MapExpr& S,
                            ContractionKind kind, std::optional<double> constant,
                            std::size_t sample_pairs, const DomainBox& domain,
                            std::uint64_t seed) {
    if (constant)
        require(*constant >= 0.0 && *constant < 0.5, "constant out of [0, 1/2)");
    require(sample_pairs >= 1, "sample_pairs must be >= 1");

    ContractionReport report;
    report.kind = kind;
    report.constant = constant.value_or(0.0);

    ScanResult scan;
    const auto pairs = sample_condition_pairs(domain, sample_pairs, seed);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const PairEvaluation pe = evaluate_condition_pair(space, T, S, kind, pairs[i].first,
                                                          pairs[i].second);
        scan_ratio(pe, scan);
        if (constant && !pe.satisfied(*constant)) {
            ContractionViolation v;
            v.pair_index = i;
            v.x = pairs[i].first;
            v.y = pairs[i].second;
            v.lhs_norm = pe.lhs.sup_norm();
            v.rhs_norm = (*constant * pe.rhs_sum).sup_norm();
            report.violations.push_back(std::move(v));
        }
        report.pairs_checked++;
    }
    if (!scan.undefined) report.estimated_min_constant = scan.max_ratio;
    return report;
}

}  // namespace

ContractionReport check_condition(const ConeMetricSpace& space, const MapExpr& T,
                                  const MapExpr& S, ContractionKind kind, double constant,
                                  std::size_t sample_pairs, const DomainBox& domain,
                                  std::uint64_t seed) {
    return run_check(space, T, S, kind, constant, sample_pairs, domain, seed);
}

std::optional<double> estimate_min_constant(const ConeMetricSpace& space, const MapExpr& T,
                                            const MapExpr& S, ContractionKind kind,
                                            std::size_t sample_pairs, const DomainBox& domain,
                                            std::uint64_t seed) {
    return run_check(space, T, S, kind, std::nullopt, sample_pairs, domain, seed)
        .estimated_min_constant;
}

ContractionReport kannan_reduction_check(const ConeMetricSpace& space, const MapExpr& S,
                                         double constant, std::size_t sample_pairs,
                                         const DomainBox& domain, std::uint64_t seed) {
    return check_condition(space, MapExpr::identity(), S, ContractionKind::K1, constant,
                           sample_pairs, domain, seed);
}

}  // namespace conefix
