#include "conefix/cone.hpp"

#include <cmath>
#include <sstream>

#include "conefix/sampling.hpp"

namespace conefix {

namespace {

void check_dimension(const ConeSpec& cone, const EVector& x) {
    require(x.dimension() == cone.dimension, "vector dimension does not match cone dimension");
}

std::string format_vector(const EVector& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.dimension(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ")";
    return os.str();
}

/// Nonnegative vector, coordinates uniform in [0, scale); a member of the
/// orthant and of any widened membership test.
EVector sample_member(Rng& rng, std::size_t dim, double scale) {
    std::vector<double> c(dim);
    for (auto& v : c) v = scale * rng.uniform();
    return EVector(std::move(c));
}

}  // namespace

bool cone_contains(const ConeSpec& cone, const EVector& x) {
    check_dimension(cone, x);
    for (std::size_t i = 0; i < x.dimension(); ++i)
        if (x[i] < -cone.membership_slack) return false;
    return true;
}

bool cone_interior_contains(const ConeSpec& cone, const EVector& x) {
    check_dimension(cone, x);
    for (std::size_t i = 0; i < x.dimension(); ++i)
        if (x[i] < cone.interior_margin) return false;
    return true;
}

OrderReport compare(const ConeSpec& cone, const EVector& x, const EVector& y) {
    check_dimension(cone, x);
    check_dimension(cone, y);
    const EVector diff = y - x;
    if (!cone_contains(cone, diff)) {
        OrderReport r;
        r.relation = OrderRelation::incomparable;
        for (std::size_t i = 0; i < diff.dimension(); ++i) {
            if (diff[i] < -cone.membership_slack) {
                r.witness = i;
                break;
            }
        }
        return r;
    }
    if (cone_interior_contains(cone, diff)) return {OrderRelation::ll, std::nullopt};
    if (!(x == y)) return {OrderRelation::lt, std::nullopt};
    return {OrderRelation::leq, std::nullopt};
}

AxiomReport verify_cone_axioms(const ConeSpec& cone, std::size_t sample_count, std::uint64_t seed) {
    return verify_cone_axioms(cone, sample_count, seed,
                              [&cone](const EVector& v) { return cone_contains(cone, v); });
}

AxiomReport verify_cone_axioms(const ConeSpec& cone, std::size_t sample_count, std::uint64_t seed,
                               const std::function<bool(const EVector&)>& contains) {
    require(sample_count >= 1, "sample_count must be >= 1");
    cone.validate();
    const std::size_t dim = cone.dimension;
    AxiomReport report;
    Rng rng(seed);

    // P1: closedness and non-emptiness hold structurally for the orthant kind;
    // spot-check that 0 is accepted.
    if (!contains(EVector::zeros(dim)))
        report.violations.push_back({"P1", "membership test rejects the zero vector"});

    static constexpr double scales[] = {0.01, 0.1, 1.0, 10.0};

    for (std::size_t s = 0; s < sample_count; ++s) {
        const double scale = scales[s % 4];

        // P2: ax + by stays in P for members x, y and a, b >= 0.
        EVector x = sample_member(rng, dim, scale);
        EVector y = sample_member(rng, dim, scale);
        if (contains(x) && contains(y)) {
            const double a = 10.0 * rng.uniform();
            const double b = 10.0 * rng.uniform();
            const EVector combo = a * x + b * y;
            if (!contains(combo)) {
                report.violations.push_back(
                    {"P2", "a*x + b*y left the cone: a=" + std::to_string(a) +
                               " b=" + std::to_string(b) + " x=" + format_vector(x) +
                               " y=" + format_vector(y)});
            }
        }

        // P3: no nonzero x with x and -x both members. Random small vectors
        // catch membership tests widened on every coordinate; axis candidates
        // catch a single corrupted coordinate.
        std::vector<double> z(dim);
        for (auto& v : z) v = scale * (rng.uniform() - 0.5);
        EVector cand(std::move(z));
        if (!cand.is_zero() && contains(cand) && contains(-1.0 * cand)) {
            report.violations.push_back(
                {"P3", "x and -x both accepted: x=" + format_vector(cand)});
        }
        const std::size_t axis = static_cast<std::size_t>(rng.index(dim));
        const double t = scale * (rng.uniform() - 0.5);
        if (t != 0.0) {
            std::vector<double> e(dim, 0.0);
            e[axis] = t;
            EVector axis_cand(std::move(e));
            if (contains(axis_cand) && contains(-1.0 * axis_cand)) {
                report.violations.push_back(
                    {"P3", "axis candidate and its negation both accepted: x=" +
                               format_vector(axis_cand)});
            }
        }

        report.samples_checked++;
        if (report.violations.size() >= 16) break;  // enough counterexamples
    }
    return report;
}

NormalityReport verify_normality(const ConeSpec& cone, std::size_t sample_count, std::uint64_t seed) {
    require(sample_count >= 1, "sample_count must be >= 1");
    cone.validate();
    NormalityReport report;
    Rng rng(seed);

    for (std::size_t s = 0; s < sample_count; ++s) {
        std::vector<double> yc(cone.dimension);
        for (auto& v : yc) v = 10.0 * rng.uniform();
        EVector y(std::move(yc));
        if (y.sup_norm() == 0.0) continue;

        // First sample is the equality pair x = y so the ratio 1 is observed.
        std::vector<double> xc(cone.dimension);
        for (std::size_t i = 0; i < cone.dimension; ++i)
            xc[i] = (s == 0 ? 1.0 : rng.uniform()) * y[i];
        EVector x(std::move(xc));

        const double ratio = x.sup_norm() / y.sup_norm();
        if (ratio > report.k_observed) {
            report.k_observed = ratio;
            report.witness_x = x;
            report.witness_y = y;
        }
    }
    report.pass = report.k_observed <= cone.normal_constant + 1e-12;
    return report;
}

}  // namespace conefix
