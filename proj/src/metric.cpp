#include "conefix/metric.hpp"

#include <cmath>
#include <sstream>

#include "conefix/sampling.hpp"

namespace conefix {

namespace {

void check_point(const ConeMetricSpace& space, const MPoint& p) {
    require(p.dimension() == space.point_dimension,
            "point dimension does not match space point_dimension");
    for (double v : p.coords)
        if (!std::isfinite(v)) throw Error("point coordinate is not finite");
}

std::string format_point(const MPoint& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        if (i) os << ", ";
        os << p[i];
    }
    os << ")";
    return os.str();
}

}  // namespace

std::vector<double> ConeMetricSpace::grid(std::size_t m) {
    require(m >= 1, "grid size must be >= 1");
    if (m == 1) return {0.0};
    std::vector<double> t(m);
    for (std::size_t i = 0; i < m; ++i)
        t[i] = static_cast<double>(i) / static_cast<double>(m - 1);
    return t;
}

ConeMetricSpace ConeMetricSpace::make(std::size_t point_dimension, std::size_t grid_size,
                                      const MapExpr& weight_expr, BaseDistance base,
                                      double interior_margin, double normal_constant) {
    require(point_dimension >= 1, "point_dimension must be >= 1");
    const auto ts = grid(grid_size);
    std::vector<double> w(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) w[i] = eval_weight(weight_expr, ts[i]);

    ConeMetricSpace space;
    space.point_dimension = point_dimension;
    space.cone = ConeSpec{grid_size, ConeKind::orthant, interior_margin, normal_constant, 0.0};
    space.weight = EVector(std::move(w));
    space.base = base;
    return space;
}

double base_distance(const ConeMetricSpace& space, const MPoint& x, const MPoint& y) {
    check_point(space, x);
    check_point(space, y);
    if (space.point_dimension == 1) return std::fabs(x[0] - y[0]);
    if (space.base == BaseDistance::euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.dimension(); ++i) {
            const double d = x[i] - y[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.dimension(); ++i) s += std::fabs(x[i] - y[i]);
    return s;
}

EVector distance(const ConeMetricSpace& space, const MPoint& x, const MPoint& y) {
    return base_distance(space, x, y) * space.weight;
}

AxiomReport verify_metric_axioms(const ConeMetricSpace& space, std::size_t sample_count,
                                 std::uint64_t seed) {
    require(sample_count >= 1, "sample_count must be >= 1");
    AxiomReport report;
    Rng rng(seed);
    const double slack = 1e-9;

    auto sample_point = [&]() {
        std::vector<double> c(space.point_dimension);
        for (auto& v : c) v = rng.uniform(-10.0, 10.0);
        return MPoint(std::move(c));
    };

    for (std::size_t s = 0; s < sample_count; ++s) {
        MPoint x = sample_point();
        MPoint y = sample_point();
        MPoint z = sample_point();
        // exercise the degenerate branches too
        if (s % 7 == 1) y = x;
        if (s % 11 == 2) z = y;

        const EVector dxy = distance(space, x, y);
        const EVector dyx = distance(space, y, x);
        const EVector dxz = distance(space, x, z);
        const EVector dyz = distance(space, y, z);

        // d1: d(x,y) lies in the cone, and is the zero vector iff x = y.
        if (!cone_contains(space.cone, dxy)) {
            report.violations.push_back(
                {"d1", "d(x,y) outside the cone for x=" + format_point(x) +
                           " y=" + format_point(y)});
        } else if ((x == y) != dxy.is_zero()) {
            report.violations.push_back(
                {"d1", "d(x,y) = 0 iff x = y violated for x=" + format_point(x) +
                           " y=" + format_point(y)});
        }

        // d2: exact coordinatewise symmetry.
        if (!(dxy == dyx)) {
            report.violations.push_back(
                {"d2", "d(x,y) != d(y,x) for x=" + format_point(x) + " y=" + format_point(y)});
        }

        // d3: d(x,y) <= d(x,z) + d(y,z) in the cone order, with per-coordinate slack.
        const EVector rhs = dxz + dyz;
        for (std::size_t i = 0; i < dxy.dimension(); ++i) {
            if (rhs[i] - dxy[i] < -slack) {
                report.violations.push_back(
                    {"d3", "triangle inequality fails at coordinate " + std::to_string(i) +
                               " for x=" + format_point(x) + " y=" + format_point(y) +
                               " z=" + format_point(z)});
                break;
            }
        }

        report.samples_checked++;
        if (report.violations.size() >= 16) break;
    }
    return report;
}

std::size_t tail_window(std::size_t length) {
    return std::min(length, std::max<std::size_t>(5, length / 4));
}

SequenceTrace analyze_sequence(const ConeMetricSpace& space, const std::vector<MPoint>& seq,
                               const MPoint& limit) {
    require(!seq.empty(), "sequence must be nonempty");
    SequenceTrace trace;
    trace.points = seq;
    trace.distance_norms_to_limit.reserve(seq.size());
    for (const auto& p : seq)
        trace.distance_norms_to_limit.push_back(distance(space, p, limit).sup_norm());

    const std::size_t w = tail_window(seq.size());
    trace.tail_start = seq.size() - w;
    trace.pairwise_tail.assign(w, std::vector<double>(w, 0.0));
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j)
            trace.pairwise_tail[i][j] =
                distance(space, seq[trace.tail_start + i], seq[trace.tail_start + j]).sup_norm();
    return trace;
}

bool sequence_converges(const ConeMetricSpace& space, const std::vector<MPoint>& seq,
                        const MPoint& limit, double tol) {
    require(tol > 0.0, "tol must be > 0");
    require(!seq.empty(), "sequence must be nonempty");
    const std::size_t w = tail_window(seq.size());
    for (std::size_t n = seq.size() - w; n < seq.size(); ++n)
        if (distance(space, seq[n], limit).sup_norm() > tol) return false;
    return true;
}

bool is_cauchy(const ConeMetricSpace& space, const std::vector<MPoint>& seq, double tol) {
    require(tol > 0.0, "tol must be > 0");
    require(seq.size() >= 2, "sequence must have at least 2 terms");
    const std::size_t w = tail_window(seq.size());
    for (std::size_t n = seq.size() - w; n < seq.size(); ++n)
        for (std::size_t m = n + 1; m < seq.size(); ++m)
            if (distance(space, seq[n], seq[m]).sup_norm() > tol) return false;
    return true;
}

}  // namespace conefix
