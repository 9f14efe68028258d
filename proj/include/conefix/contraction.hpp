#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conefix/metric.hpp"

namespace conefix {

/// TK1 = T-Kannan, TK2 = T-Chatterjea; K1/K2 are the same conditions with
/// T = identity.
enum class ContractionKind { TK1, TK2, K1, K2 };

std::string to_string(ContractionKind kind);
ContractionKind contraction_kind_from_string(const std::string& name);

inline bool is_chatterjea(ContractionKind kind) {
    return kind == ContractionKind::TK2 || kind == ContractionKind::K2;
}
inline bool uses_identity_t(ContractionKind kind) {
    return kind == ContractionKind::K1 || kind == ContractionKind::K2;
}

struct ContractionViolation {
    std::size_t pair_index = 0;
    MPoint x, y;
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;  // constant * bracketed sum

    bool operator==(const ContractionViolation& o) const {
        return pair_index == o.pair_index && x == o.x && y == o.y && lhs_norm == o.lhs_norm &&
               rhs_norm == o.rhs_norm;
    }
};

struct ContractionReport {
    ContractionKind kind = ContractionKind::TK1;
    double constant = 0.0;
    std::vector<ContractionViolation> violations;
    std::size_t pairs_checked = 0;
    std::optional<double> estimated_min_constant;  // nullopt: no finite constant works

    bool clean() const { return violations.empty(); }

    bool operator==(const ContractionReport& o) const {
        return kind == o.kind && constant == o.constant && violations == o.violations &&
               pairs_checked == o.pairs_checked &&
               estimated_min_constant == o.estimated_min_constant;
    }
};

/// lhs = d(TSx, TSy) and the bracketed sum of the right side, without the
/// constant: d(Tx,TSx) + d(Ty,TSy) for TK1, d(Tx,TSy) + d(Ty,TSx) for TK2.
struct PairEvaluation {
    EVector lhs = EVector::zeros(1);
    EVector rhs_sum = EVector::zeros(1);

    /// rhs - lhs in the cone, with 1e-9 per-coordinate slack.
    bool satisfied(double constant) const;
};

PairEvaluation evaluate_condition_pair(const ConeMetricSpace& space, const MapExpr& T,
                                       const MapExpr& S, ContractionKind kind, const MPoint& x,
                                       const MPoint& y);

/// Deterministic sample of point pairs: a low-discrepancy grid over the
/// domain box (an inclusive lattice in one dimension, Halton points above)
/// plus seeded uniform pairs.
std::vector<std::pair<MPoint, MPoint>> sample_condition_pairs(const DomainBox& domain,
                                                              std::size_t count,
                                                              std::uint64_t seed);

/// Checks the Definition-3.1 inequality with the declared constant on sampled
/// pairs; the inequality is compared coordinatewise in the cone order.
ContractionReport check_condition(const ConeMetricSpace& space, const MapExpr& T,
                                  const MapExpr& S, ContractionKind kind, double constant,
                                  std::size_t sample_pairs, const DomainBox& domain,
                                  std::uint64_t seed);

/// Supremum over sampled pairs of the per-pair minimal constant; nullopt when
/// some pair admits no finite constant (zero bracketed sum, nonzero lhs).
std::optional<double> estimate_min_constant(const ConeMetricSpace& space, const MapExpr& T,
                                            const MapExpr& S, ContractionKind kind,
                                            std::size_t sample_pairs, const DomainBox& domain,
                                            std::uint64_t seed);

/// Kannan condition with T = identity (the classical reduction), as a named
/// preset.
ContractionReport kannan_reduction_check(const ConeMetricSpace& space, const MapExpr& S,
                                         double constant, std::size_t sample_pairs,
                                         const DomainBox& domain, std::uint64_t seed);

}  // namespace conefix
