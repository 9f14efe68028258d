// Acceptance suite: end-to-end checks of the library against the worked
// example and the certificate formulas, one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "conefix/harness.hpp"

using namespace conefix;

namespace {

const double kE = std::exp(1.0);

ConeMetricSpace example_space(std::size_t m = 33) {
    return ConeMetricSpace::make(1, m, parse_map("exp(t)"),
                                 BaseDistance::absolute_difference, 1e-12, 1.0);
}

Problem example_problem(double x0) {
    Problem p;
    p.space = example_space();
    p.T = parse_map("x^2");
    p.S = parse_map("x/2");
    p.kind = ContractionKind::TK1;
    p.constant = 1.0 / 3.0;
    p.x0 = MPoint::scalar(x0);
    p.domain = {{-10.0, 10.0}};
    return p;
}

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> body;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) detail = what;
    return ok;
}

// 1. TK1 check of the worked example: 1e5 pairs, zero violations, < 5 s.
bool criterion_tk1_check(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const ContractionReport report =
        check_condition(example_space(), parse_map("x^2"), parse_map("x/2"),
                        ContractionKind::TK1, 1.0 / 3.0, 100000, {{-10.0, 10.0}}, 42);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = true;
    ok &= expect(report.pairs_checked == 100000, "pair budget not met", detail);
    ok &= expect(report.clean(),
                 "found " + std::to_string(report.violations.size()) + " violations", detail);
    ok &= expect(secs < 5.0, "runtime " + std::to_string(secs) + " s >= 5 s", detail);
    return ok;
}

// 2. TK2 check at c = 1/5 + 1e-6 and the grid estimate of the minimal c.
bool criterion_tk2_check(std::string& detail) {
    const ConeMetricSpace space = example_space();
    const ContractionReport report =
        check_condition(space, parse_map("x^2"), parse_map("x/2"), ContractionKind::TK2,
                        0.2 + 1e-6, 100000, {{-10.0, 10.0}}, 42);
    bool ok = expect(report.clean(),
                     "found " + std::to_string(report.violations.size()) + " violations", detail);
    const auto estimate = estimate_min_constant(space, parse_map("x^2"), parse_map("x/2"),
                                                ContractionKind::TK2, 100000,
                                                {{-10.0, 10.0}}, 42);
    ok &= expect(estimate.has_value(), "estimate undefined", detail);
    if (estimate)
        ok &= expect(std::fabs(*estimate - 0.2) <= 1e-3,
                     "estimate " + std::to_string(*estimate) + " not within 1e-3 of 0.2", detail);
    return ok;
}

// 3. Solve from three starts: |u| <= 1e-9 in at most 40 iterations; probe agrees.
bool criterion_solve(std::string& detail) {
    bool ok = true;
    for (double x0 : {1.0, -5.0, 0.3}) {
        const FixedPointResult r = solve(example_problem(x0), 1e-9, 10000);
        ok &= expect(r.converged, "did not converge from " + std::to_string(x0), detail);
        ok &= expect(std::fabs(r.u[0]) <= 1e-9,
                     "|u| = " + std::to_string(std::fabs(r.u[0])) + " from " +
                         std::to_string(x0), detail);
        ok &= expect(r.iterations <= 40,
                     std::to_string(r.iterations) + " iterations from " + std::to_string(x0),
                     detail);
    }
    ok &= expect(uniqueness_probe(example_problem(1.0),
                                  {MPoint::scalar(1.0), MPoint::scalar(-5.0),
                                   MPoint::scalar(0.3)},
                                  1e-9),
                 "uniqueness probe failed", detail);
    return ok;
}

// 4. Geometric decay of the trace with the observed per-step ratio 1/4.
bool criterion_decay(std::string& detail) {
    const FixedPointResult r = solve(example_problem(1.0), 1e-9, 10000);
    bool ok = expect(r.converged, "no trace", detail);
    double envelope = r.trace.empty() ? 0.0 : r.trace[0];
    for (std::size_t n = 0; n < r.trace.size(); ++n) {
        ok &= expect(r.trace[n] <= envelope + 1e-9,
                     "trace[" + std::to_string(n) + "] above (1/2)^n trace[0]", detail);
        envelope *= 0.5;
    }
    for (std::size_t n = 0; n + 1 < r.trace.size(); ++n) {
        const double ratio = r.trace[n + 1] / r.trace[n];
        ok &= expect(std::fabs(ratio - 0.25) <= 1e-9,
                     "step ratio " + std::to_string(ratio) + " at n=" + std::to_string(n),
                     detail);
    }
    ok &= expect(verify_decay(r.trace, 0.5), "verify_decay rejected the trace", detail);
    return ok;
}

// 5. The a priori curve dominates the recorded gaps to Tu: (3/2) e / 2^n.
bool criterion_bound_domination(std::string& detail) {
    const Problem p = example_problem(1.0);
    const FixedPointResult r = solve(p, 1e-9, 10000);
    bool ok = expect(r.converged, "did not converge", detail);
    const double K = p.space.cone.normal_constant;
    const double d0 = distance(p.space, eval_map(p.T, p.x0),
                               eval_map(p.T, eval_map(p.S, p.x0)))
                          .sup_norm();
    ok &= expect(std::fabs(d0 - 0.75 * kE) <= 1e-12, "d0 is not (3/4) e", detail);
    MPoint x = p.x0;
    for (std::size_t n = 0; n < r.trace.size(); ++n) {
        const double gap = distance(p.space, eval_map(p.T, x), eval_map(p.T, r.u)).sup_norm();
        const double bound = K * std::pow(0.5, static_cast<double>(n)) * d0 * 2.0;
        ok &= expect(gap <= bound + 1e-9,
                     "gap " + std::to_string(gap) + " exceeds bound at n=" + std::to_string(n),
                     detail);
        x = eval_map(p.S, x);
    }
    return ok;
}

// 6. iterations_needed is the exact threshold of the a priori bound.
bool criterion_iterations_needed(std::string& detail) {
    Rng rng(777);
    bool ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const double h = rng.uniform(0.0, 0.95);
        const double d0 = rng.uniform() < 0.05 ? 0.0 : rng.uniform(1e-6, 100.0);
        const double K = rng.uniform(1.0, 4.0);
        const double tol = std::pow(10.0, rng.uniform(-12.0, 1.0));
        const std::size_t n = iterations_needed(h, d0, K, tol);
        ok &= expect(apriori_bound(h, d0, K, n) <= tol, "bound(n*) > tol", detail);
        if (n > 0)
            ok &= expect(apriori_bound(h, d0, K, n - 1) > tol, "bound(n*-1) <= tol", detail);
        if (!ok) break;
    }
    return ok;
}

// 7. Classical Kannan reduction: x/5 with b = 1/4, and TK1 with T = identity
// produces the identical report.
bool criterion_kannan_reduction(std::string& detail) {
    const ConeMetricSpace space = example_space();
    const ContractionReport preset =
        kannan_reduction_check(space, parse_map("x/5"), 0.25, 100000, {{-10.0, 10.0}}, 42);
    bool ok = expect(preset.clean(),
                     std::to_string(preset.violations.size()) + " violations", detail);
    ok &= expect(preset.pairs_checked == 100000, "pair budget not met", detail);

    const ContractionReport via_tk1 =
        check_condition(space, parse_map("x"), parse_map("x/5"), ContractionKind::TK1, 0.25,
                        100000, {{-10.0, 10.0}}, 42);
    ok &= expect(via_tk1.constant == preset.constant &&
                     via_tk1.pairs_checked == preset.pairs_checked &&
                     via_tk1.violations == preset.violations &&
                     via_tk1.estimated_min_constant == preset.estimated_min_constant,
                 "TK1-with-identity report differs from the K1 preset", detail);

    Problem p;
    p.space = space;
    p.T = MapExpr::identity();
    p.S = parse_map("x/5");
    p.kind = ContractionKind::K1;
    p.constant = 0.25;
    p.x0 = MPoint::scalar(1.0);
    p.domain = {{-10.0, 10.0}};
    const FixedPointResult r = solve(p, 1e-9, 10000);
    ok &= expect(r.converged && std::fabs(r.u[0]) <= 1e-9, "x/5 did not converge to 0", detail);
    return ok;
}

// 8. Axiom suites across grid sizes, plus the two corrupted setups.
bool criterion_axiom_suites(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (std::size_t m : {2UL, 33UL, 101UL}) {
        const ConeMetricSpace space = example_space(m);
        ok &= expect(verify_cone_axioms(space.cone, 10000, 42).pass(),
                     "cone axioms failed at m=" + std::to_string(m), detail);
        const NormalityReport norm = verify_normality(space.cone, 10000, 43);
        ok &= expect(norm.pass && norm.k_observed <= 1.0 + 1e-12,
                     "normality failed at m=" + std::to_string(m), detail);
        ok &= expect(verify_metric_axioms(space, 10000, 44).pass(),
                     "metric axioms failed at m=" + std::to_string(m), detail);
    }

    ConeSpec corrupted{33};
    corrupted.membership_slack = 0.1;
    ok &= expect(!verify_cone_axioms(corrupted, 10000, 42).pass(),
                 "corrupted cone not detected", detail);

    const ConeMetricSpace bad = ConeMetricSpace::make(
        1, 33, parse_map("1 - 2*t"), BaseDistance::absolute_difference, 1e-12, 1.0);
    ok &= expect(!verify_metric_axioms(bad, 10000, 42).pass(),
                 "sign-changing weight not detected", detail);

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= expect(secs < 10.0, "runtime " + std::to_string(secs) + " s >= 10 s", detail);
    return ok;
}

// 9. Convergent sequences are Cauchy at 2 K tol; non-Cauchy sequences are not.
bool criterion_sequences(std::string& detail) {
    const ConeMetricSpace space = example_space();
    const double K = space.cone.normal_constant;
    Rng rng(31);
    bool ok = true;

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
        ok &= expect(sequence_converges(space, seq, MPoint::scalar(limit), tol),
                     "generated sequence rejected", detail);
        ok &= expect(is_cauchy(space, seq, 2.0 * K * tol),
                     "convergent sequence not Cauchy at 2 K tol", detail);
        if (!ok) break;
    }

    for (int trial = 0; ok && trial < 100; ++trial) {
        const double a = rng.uniform(-5.0, 5.0);
        const double b = a + (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 3.0);
        std::vector<MPoint> seq;
        for (int n = 0; n < 60; ++n)
            seq.push_back(MPoint::scalar((n % 2 ? a : b) + 0.01 * rng.uniform()));
        ok &= expect(!is_cauchy(space, seq, 1e-6), "oscillating sequence accepted as Cauchy",
                     detail);
    }
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"TK1 check of the worked example, 1e5 pairs, zero violations, < 5 s",
         criterion_tk1_check},
        {"TK2 check of the worked example at c = 1/5 + 1e-6; min-constant estimate ~ 0.2",
         criterion_tk2_check},
        {"solve from {1, -5, 0.3}: |u| <= 1e-9 within 40 iterations, probe agrees",
         criterion_solve},
        {"trace decays under (1/2)^n with per-step ratio 0.25 +- 1e-9", criterion_decay},
        {"a priori curve (3/2) e / 2^n dominates the gaps to Tu", criterion_bound_domination},
        {"iterations_needed is the exact bound threshold on 1000 random triples",
         criterion_iterations_needed},
        {"Kannan reduction x/5 at b = 1/4: clean check, identical TK1 report, u -> 0",
         criterion_kannan_reduction},
        {"axiom suites pass at m in {2, 33, 101}; corrupted setups are detected, < 10 s",
         criterion_axiom_suites},
        {"convergent sequences are Cauchy at 2 K tol; oscillating ones are rejected",
         criterion_sequences},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%zu/%zu] %s  %s (%.2f s)%s%s\n", i + 1, criteria.size(),
                    ok ? "PASS" : "FAIL", criteria[i].name.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
