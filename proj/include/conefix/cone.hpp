#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conefix/evector.hpp"

namespace conefix {

enum class ConeKind { orthant };

/// The cone P inside E, with the numerical knobs needed to decide membership,
/// interior membership and normality at a fixed discretization.
///
/// `membership_slack` widens the membership test to coordinates >= -slack. It
/// defaults to 0 (the exact orthant) and exists so that axiom-suite fixtures
/// can express a deliberately broken cone.
struct ConeSpec {
    std::size_t dimension = 1;
    ConeKind kind = ConeKind::orthant;
    double interior_margin = 1e-12;
    double normal_constant = 1.0;
    double membership_slack = 0.0;

    void validate() const {
        require(dimension >= 1, "cone dimension must be >= 1");
        require(interior_margin > 0.0, "interior_margin must be > 0");
        require(normal_constant > 0.0, "normal_constant must be > 0");
        require(membership_slack >= 0.0, "membership_slack must be >= 0");
    }
};

enum class OrderRelation { incomparable, leq, lt, ll };

/// Outcome of comparing two E-vectors in the cone order. `witness` holds a
/// coordinate violating y - x in P when the pair is incomparable.
struct OrderReport {
    OrderRelation relation = OrderRelation::incomparable;
    std::optional<std::size_t> witness;
};

struct AxiomViolation {
    std::string axiom;    // "P1".."P3" or "d1".."d3"
    std::string detail;   // human-readable counterexample
};

struct AxiomReport {
    std::size_t samples_checked = 0;
    std::vector<AxiomViolation> violations;
    bool pass() const { return violations.empty(); }
};

struct NormalityReport {
    double k_observed = 0.0;
    bool pass = false;
    std::optional<EVector> witness_x;  // pair maximizing the ratio when failing
    std::optional<EVector> witness_y;
};

/// x in P. Exact, no tolerance (membership_slack widens the test when set).
bool cone_contains(const ConeSpec& cone, const EVector& x);

/// Numerical stand-in for x in Int P: every coordinate >= interior_margin.
bool cone_interior_contains(const ConeSpec& cone, const EVector& x);

/// Strongest relation between x and y under the partial order induced by P.
OrderReport compare(const ConeSpec& cone, const EVector& x, const EVector& y);

/// Samples the cone axioms P1-P3 on random members and combinations.
AxiomReport verify_cone_axioms(const ConeSpec& cone, std::size_t sample_count, std::uint64_t seed);

/// As above but against an arbitrary membership predicate (used to probe
/// deliberately corrupted membership tests).
AxiomReport verify_cone_axioms(const ConeSpec& cone, std::size_t sample_count, std::uint64_t seed,
                               const std::function<bool(const EVector&)>& contains);

/// Samples pairs 0 <= x <= y and reports the largest observed norm ratio
/// ||x||/||y|| against the declared normal constant.
NormalityReport verify_normality(const ConeSpec& cone, std::size_t sample_count, std::uint64_t seed);

}  // namespace conefix
