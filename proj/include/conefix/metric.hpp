#pragma once

#include <cstdint>
#include <vector>

#include "conefix/cone.hpp"
#include "conefix/expr.hpp"

namespace conefix {

enum class BaseDistance { absolute_difference, euclidean };

/// Cone metric space (M, d): points are real vectors of `point_dimension`,
/// d(x,y) = rho(x,y) * w where rho is a scalar base distance and w is a
/// positive weight vector evaluated on the E-grid t_i = i/(m-1).
///
/// Construction does not enforce weight positivity; verify_metric_axioms
/// reports d1 counterexamples for a weight that leaves the cone.
struct ConeMetricSpace {
    std::size_t point_dimension = 1;
    ConeSpec cone;
    EVector weight = EVector::zeros(1);
    BaseDistance base = BaseDistance::absolute_difference;

    static std::vector<double> grid(std::size_t m);

    static ConeMetricSpace make(std::size_t point_dimension, std::size_t grid_size,
                                const MapExpr& weight_expr, BaseDistance base,
                                double interior_margin, double normal_constant);

    double min_weight() const { return weight.min_coordinate(); }

    /// True when the weight satisfies the space invariant (all coordinates
    /// at or above the interior margin).
    bool weight_valid() const { return min_weight() >= cone.interior_margin; }
};

/// Scalar base distance rho(x, y).
double base_distance(const ConeMetricSpace& space, const MPoint& x, const MPoint& y);

/// d(x, y) = rho(x, y) * w, an element of E.
EVector distance(const ConeMetricSpace& space, const MPoint& x, const MPoint& y);

/// Samples triples and checks d1 (cone membership, zero iff equal), d2
/// (exact symmetry) and d3 (triangle inequality in the cone order with 1e-9
/// per-coordinate slack).
AxiomReport verify_metric_axioms(const ConeMetricSpace& space, std::size_t sample_count,
                                 std::uint64_t seed);

/// Distance record of a finite sequence against a candidate limit.
struct SequenceTrace {
    std::vector<MPoint> points;
    std::vector<double> distance_norms_to_limit;
    std::vector<std::vector<double>> pairwise_tail;  // ||d(x_n, x_m)|| over the tail window
    std::size_t tail_start = 0;
};

/// Tail convention for "eventually": the final max(5, len/4) terms.
std::size_t tail_window(std::size_t length);

SequenceTrace analyze_sequence(const ConeMetricSpace& space, const std::vector<MPoint>& seq,
                               const MPoint& limit);

/// Norm characterization of convergence (valid because the cone is normal):
/// ||d(x_n, limit)|| <= tol on the whole tail window.
bool sequence_converges(const ConeMetricSpace& space, const std::vector<MPoint>& seq,
                        const MPoint& limit, double tol);

/// ||d(x_n, x_m)|| <= tol over the trailing-window pairwise matrix.
bool is_cauchy(const ConeMetricSpace& space, const std::vector<MPoint>& seq, double tol);

}  // namespace conefix
