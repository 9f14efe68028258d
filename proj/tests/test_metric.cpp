#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace conefix;
using conefix::testing::example_space;

TEST_CASE("distance of the worked example is |x-y| e^t on the grid") {
    const ConeMetricSpace space = example_space(33);
    const EVector d = distance(space, MPoint::scalar(2.0), MPoint::scalar(0.0));
    REQUIRE(d.dimension() == 33);
    for (std::size_t i = 0; i < 33; ++i) {
        const double t = static_cast<double>(i) / 32.0;
        CHECK(d[i] == doctest::Approx(2.0 * std::exp(t)).epsilon(1e-15));
    }
    CHECK(cone_contains(space.cone, d));

    CHECK(distance(space, MPoint::scalar(1.5), MPoint::scalar(1.5)).is_zero());

    const ConeMetricSpace two = example_space(2);
    const EVector d2 = distance(two, MPoint::scalar(1.0), MPoint::scalar(0.0));
    CHECK(d2[0] == 1.0);
    CHECK(d2[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("distance rejects dimension mismatches") {
    const ConeMetricSpace space = example_space();
    CHECK_THROWS_AS(distance(space, MPoint(std::vector<double>{1.0, 2.0}), MPoint::scalar(0.0)),
                    Error);
}

TEST_CASE("metric axioms hold for the worked example's space") {
    const AxiomReport report = verify_metric_axioms(example_space(), 1000, 5);
    CHECK(report.pass());
    CHECK(report.samples_checked == 1000);
}

TEST_CASE("sign-changing weight produces a d1 counterexample") {
    const ConeMetricSpace bad = ConeMetricSpace::make(
        1, 33, parse_map("1 - 2*t"), BaseDistance::absolute_difference, 1e-12, 1.0);
    CHECK_FALSE(bad.weight_valid());
    const AxiomReport report = verify_metric_axioms(bad, 200, 5);
    CHECK_FALSE(report.pass());
    bool d1 = false;
    for (const auto& v : report.violations) d1 = d1 || v.axiom == "d1";
    CHECK(d1);
}

TEST_CASE("euclidean base distance on R^2") {
    const ConeMetricSpace space = ConeMetricSpace::make(
        2, 5, parse_map("1 + t"), BaseDistance::euclidean, 1e-12, 1.0);
    const MPoint a(std::vector<double>{0.0, 0.0});
    const MPoint b(std::vector<double>{3.0, 4.0});
    CHECK(base_distance(space, a, b) == doctest::Approx(5.0));
    CHECK(verify_metric_axioms(space, 500, 2).pass());
}

namespace {

std::vector<MPoint> geometric_sequence(double start, double ratio, std::size_t n) {
    std::vector<MPoint> seq;
    double v = start;
    for (std::size_t i = 0; i < n; ++i) {
        seq.push_back(MPoint::scalar(v));
        v *= ratio;
    }
    return seq;
}

}  // namespace

TEST_CASE("sequence convergence on the tail window") {
    const ConeMetricSpace space = example_space();
    const MPoint zero = MPoint::scalar(0.0);

    // x_n = 1/2^n: ||d(x_n, 0)|| = e/2^n, below 1e-6 from n = 22 on
    const auto seq = geometric_sequence(1.0, 0.5, 40);
    CHECK(sequence_converges(space, seq, zero, 1e-6));
    CHECK_FALSE(sequence_converges(space, seq, zero, 1e-13));

    // a constant sequence converges to its own value at any tolerance
    const std::vector<MPoint> constant(12, MPoint::scalar(3.25));
    CHECK(sequence_converges(space, constant, MPoint::scalar(3.25), 1e-15));

    // alternating +-1 does not converge to 0
    std::vector<MPoint> alternating;
    for (int n = 0; n < 40; ++n) alternating.push_back(MPoint::scalar(n % 2 ? -1.0 : 1.0));
    CHECK_FALSE(sequence_converges(space, alternating, zero, 1e-3));

    CHECK_THROWS_AS(sequence_converges(space, {}, zero, 1e-6), Error);
    CHECK_THROWS_AS(sequence_converges(space, seq, zero, 0.0), Error);
}

TEST_CASE("cauchy test over the trailing pairwise window") {
    const ConeMetricSpace space = example_space();
    CHECK(is_cauchy(space, geometric_sequence(1.0, 0.5, 40), 1e-6));

    std::vector<MPoint> alternating;
    for (int n = 0; n < 40; ++n) alternating.push_back(MPoint::scalar(n % 2 ? -1.0 : 1.0));
    CHECK_FALSE(is_cauchy(space, alternating, 1e-3));

    const std::vector<MPoint> pair(2, MPoint::scalar(0.4));
    CHECK(is_cauchy(space, pair, 1e-15));

    CHECK_THROWS_AS(is_cauchy(space, {MPoint::scalar(1.0)}, 1e-6), Error);
}

TEST_CASE("tail window convention") {
    CHECK(tail_window(40) == 10);
    CHECK(tail_window(100) == 25);
    CHECK(tail_window(12) == 5);
    CHECK(tail_window(3) == 3);
}

TEST_CASE("analyze_sequence records distances and the pairwise tail") {
    const ConeMetricSpace space = example_space();
    const auto seq = geometric_sequence(1.0, 0.5, 8);
    const SequenceTrace trace = analyze_sequence(space, seq, MPoint::scalar(0.0));
    CHECK(trace.points.size() == 8);
    CHECK(trace.distance_norms_to_limit.size() == 8);
    CHECK(trace.distance_norms_to_limit[0] == doctest::Approx(std::exp(1.0)));
    CHECK(trace.pairwise_tail.size() == tail_window(8));
    CHECK(trace.tail_start == 8 - tail_window(8));
    for (const auto& row : trace.pairwise_tail)
        for (double v : row) CHECK(v >= 0.0);
}

TEST_CASE("limit uniqueness surrogate: two accepted limits are 2K tol close") {
    const ConeMetricSpace space = example_space();
    const double K = space.cone.normal_constant;
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const double limit = rng.uniform(-5.0, 5.0);
        const double ratio = rng.uniform(0.3, 0.7);
        std::vector<MPoint> seq;
        double gap = rng.uniform(0.1, 10.0);
        for (int n = 0; n < 80; ++n) {
            seq.push_back(MPoint::scalar(limit + gap));
            gap *= ratio;
        }
        const double tol = 1e-6;
        const MPoint x = MPoint::scalar(limit);
        // a second accepted limit must lie within 2 K tol in distance norm
        const MPoint y = MPoint::scalar(limit + 1e-7 / std::exp(1.0));
        REQUIRE(sequence_converges(space, seq, x, tol));
        if (sequence_converges(space, seq, y, tol))
            CHECK(distance(space, x, y).sup_norm() <= 2.0 * K * tol);
    }
}

TEST_CASE("convergent implies cauchy at twice the tolerance") {
    const ConeMetricSpace space = example_space();
    const double K = space.cone.normal_constant;
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const double limit = rng.uniform(-5.0, 5.0);
        const double ratio = rng.uniform(0.3, 0.7);
        const double amp = rng.uniform(0.1, 100.0);
        std::vector<MPoint> seq;
        for (int n = 0; n < 80; ++n) {
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            seq.push_back(MPoint::scalar(limit + sign * amp * std::pow(ratio, n)));
        }
        const double tol = 1e-3;
        if (sequence_converges(space, seq, MPoint::scalar(limit), tol))
            CHECK(is_cauchy(space, seq, 2.0 * K * tol));
    }
}

TEST_CASE("distance is jointly continuous along converging pairs") {
    const ConeMetricSpace space = example_space();
    const double K = space.cone.normal_constant;
    const double tol = 1e-5;
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const double lx = rng.uniform(-3.0, 3.0);
        const double ly = rng.uniform(-3.0, 3.0);
        std::vector<MPoint> xs, ys;
        for (int n = 0; n < 60; ++n) {
            xs.push_back(MPoint::scalar(lx + std::pow(0.5, n)));
            ys.push_back(MPoint::scalar(ly - std::pow(0.4, n)));
        }
        const MPoint x = MPoint::scalar(lx), y = MPoint::scalar(ly);
        REQUIRE(sequence_converges(space, xs, x, tol));
        REQUIRE(sequence_converges(space, ys, y, tol));
        const double dxy = distance(space, x, y).sup_norm();
        for (std::size_t n = xs.size() - tail_window(xs.size()); n < xs.size(); ++n) {
            const double dn = distance(space, xs[n], ys[n]).sup_norm();
            CHECK(std::fabs(dn - dxy) <= 2.0 * K * tol);
        }
    }
}

TEST_CASE("distance symmetry is bit-exact") {
    const ConeMetricSpace space = example_space();
    Rng rng(51);
    for (int i = 0; i < 300; ++i) {
        const MPoint x = MPoint::scalar(rng.uniform(-10.0, 10.0));
        const MPoint y = MPoint::scalar(rng.uniform(-10.0, 10.0));
        CHECK(distance(space, x, y) == distance(space, y, x));
    }
}
