#pragma once

#include <cmath>
#include <vector>

#include "conefix/harness.hpp"

namespace conefix::testing {

/// The worked example's space: M = R, d(x,y) = |x-y| e^t on an m-point grid.
inline ConeMetricSpace example_space(std::size_t m = 33) {
    return ConeMetricSpace::make(1, m, parse_map("exp(t)"), BaseDistance::absolute_difference,
                                 1e-12, 1.0);
}

inline DomainBox box1d(double lo, double hi) { return DomainBox{{lo, hi}}; }

inline Problem example_problem(double x0 = 1.0) {
    Problem p;
    p.space = example_space();
    p.T = parse_map("x^2");
    p.S = parse_map("x/2");
    p.kind = ContractionKind::TK1;
    p.constant = 1.0 / 3.0;
    p.x0 = MPoint::scalar(x0);
    p.domain = box1d(-10.0, 10.0);
    return p;
}

}  // namespace conefix::testing
