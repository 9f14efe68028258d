#include "conefix/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conefix {

void Problem::validate() const {
    require(constant >= 0.0 && constant < 0.5, "constant out of [0, 1/2)");
    require(space.cone.normal_constant >= 1.0, "normal constant must be >= 1 for solving");
    require(x0.dimension() == space.point_dimension, "x0 dimension does not match the space");
    T_capabilities.validate();
    if (!domain.empty()) {
        validate_box(domain);
        require(domain.size() == space.point_dimension,
                "domain box dimension does not match the space");
        for (std::size_t i = 0; i < domain.size(); ++i)
            require(domain[i].contains(x0[i]), "x0 lies outside the domain box");
    }
}

double apriori_bound(double h, double d0_norm, double K, std::size_t n) {
    require(h >= 0.0 && h < 1.0, "h must lie in [0, 1)");
    require(d0_norm >= 0.0, "d0_norm must be >= 0");
    require(K >= 1.0, "K must be >= 1");
    return K * std::pow(h, static_cast<double>(n)) * d0_norm / (1.0 - h);
}

std::size_t iterations_needed(double h, double d0_norm, double K, double tol) {
    require(tol > 0.0, "tol must be > 0");
    require(h >= 0.0 && h < 1.0, "h must lie in [0, 1)");
    const double b0 = apriori_bound(h, d0_norm, K, 0);
    if (b0 <= tol) return 0;
    if (h == 0.0) return 1;  // bound is 0 for every n >= 1

    // Logarithmic estimate, then exactness adjustment against the bound itself.
    double est = std::log(tol * (1.0 - h) / (K * d0_norm)) / std::log(h);
    std::size_t n = est > 0.0 ? static_cast<std::size_t>(std::ceil(est)) : 0;
    while (apriori_bound(h, d0_norm, K, n) > tol) ++n;
    while (n > 0 && apriori_bound(h, d0_norm, K, n - 1) <= tol) --n;
    return n;
}

bool verify_decay(std::span<const double> trace, double h, double K) {
    require(!trace.empty(), "trace must be nonempty");
    require(h >= 0.0 && h < 1.0, "h must lie in [0, 1)");
    double envelope = trace[0] * K;
    for (std::size_t n = 0; n < trace.size(); ++n) {
        if (trace[n] > envelope + 1e-9) return false;
        envelope *= h;
    }
    return true;
}

FixedPointResult solve(const Problem& problem, double tol, std::size_t max_iter) {
    require(tol > 0.0, "tol must be > 0");
    require(max_iter >= 1, "max_iter must be >= 1");
    problem.validate();

    const double h = problem.contraction_ratio();
    require(h >= 0.0 && h < 1.0, "contraction ratio h must lie in [0, 1)");
    const double K = problem.space.cone.normal_constant;

    const MapExpr id = MapExpr::identity();
    const MapExpr& T = uses_identity_t(problem.kind) ? id : problem.T;
    const bool sequentially_convergent =
        uses_identity_t(problem.kind) || problem.T_capabilities.sequentially_convergent;

    FixedPointResult result;
    result.u = problem.x0;
    result.subsequential_only = !sequentially_convergent;

    MPoint x_prev = problem.x0;
    MPoint Tx_prev = eval_map(T, x_prev);

    // The recursion of the proofs certifies the T-image gap, so the a
    // posteriori residual K h step_t / (1-h) is the certified stop. The
    // returned point itself is resolved with the same geometric tail
    // argument at the iterate level, using the observed step ratio floored
    // at h (the iterates need not contract as fast as the T-images).
    double recent_ratios[3] = {0.0, 0.0, 0.0};
    std::size_t ratio_count = 0;
    double prev_step_m = -1.0;

    for (std::size_t n = 1; n <= max_iter; ++n) {
        MPoint x_cur = eval_map(problem.S, x_prev);
        MPoint Tx_cur = eval_map(T, x_cur);

        const double step_t = distance(problem.space, Tx_prev, Tx_cur).sup_norm();
        const double step_m = distance(problem.space, x_prev, x_cur).sup_norm();
        result.trace.push_back(step_t);

        if (prev_step_m >= 0.0) {
            const double ratio =
                prev_step_m > 0.0 ? step_m / prev_step_m : (step_m > 0.0 ? 1.0 : 0.0);
            recent_ratios[ratio_count % 3] = ratio;
            ++ratio_count;
        }
        double q = h;
        for (std::size_t i = 0; i < std::min<std::size_t>(ratio_count, 3); ++i)
            q = std::max(q, recent_ratios[i]);

        const double residual_t = K * h * step_t / (1.0 - h);
        double residual_m;
        if (step_m == 0.0)
            residual_m = 0.0;
        else if (q >= 1.0)
            residual_m = std::numeric_limits<double>::infinity();
        else
            residual_m = K * q * step_m / (1.0 - q);

        if (residual_t <= tol && residual_m <= tol) {
            result.u = x_cur;
            result.iterations = n;
            result.converged = true;
            break;
        }
        prev_step_m = step_m;
        x_prev = std::move(x_cur);
        Tx_prev = std::move(Tx_cur);
    }
    if (!result.converged) {
        result.u = x_prev;
        result.iterations = max_iter;
    }

    // Certificate. The decay recursion is anchored at d(Tx0, TSx0) for TK1
    // and at d(TSx0, TSx1) = d(Tx1, Tx2) for TK2.
    Certificate& cert = result.certificate;
    cert.h = h;
    const std::size_t anchor = is_chatterjea(problem.kind) ? 1 : 0;
    if (result.trace.size() > anchor) {
        cert.d0_norm = result.trace[anchor];
    } else if (is_chatterjea(problem.kind)) {
        // terminated before the anchor step was recorded; evaluate it directly
        const MPoint x1 = eval_map(problem.S, problem.x0);
        const MPoint x2 = eval_map(problem.S, x1);
        cert.d0_norm = distance(problem.space, eval_map(T, x1), eval_map(T, x2)).sup_norm();
    }
    cert.apriori_curve.reserve(result.trace.size() + 1);
    for (std::size_t n = 0; n <= result.trace.size(); ++n)
        cert.apriori_curve.push_back(apriori_bound(h, cert.d0_norm, K, n));
    cert.aposteriori_residual =
        result.trace.empty() ? 0.0 : K * h * result.trace.back() / (1.0 - h);
    const std::span<const double> tail(result.trace.data() + anchor,
                                       result.trace.size() > anchor
                                           ? result.trace.size() - anchor
                                           : 0);
    cert.decay_verified = tail.empty() ? true : verify_decay(tail, h, K);

    // How far T(u) is from being fixed under the composed map: the executable
    // form of the limit identity behind v_norm_gap.
    const MPoint Su = eval_map(problem.S, result.u);
    result.v_norm_gap =
        distance(problem.space, eval_map(T, Su), eval_map(T, result.u)).sup_norm();
    return result;
}

bool uniqueness_probe(const Problem& problem, const std::vector<MPoint>& starts, double tol,
                      std::size_t max_iter) {
    require(starts.size() >= 2, "uniqueness probe needs at least 2 starts");
    const double K = problem.space.cone.normal_constant;

    std::vector<MPoint> limits;
    limits.reserve(starts.size());
    for (const auto& start : starts) {
        Problem p = problem;
        p.x0 = start;
        try {
            FixedPointResult r = solve(p, tol, max_iter);
            if (!r.converged) return false;
            limits.push_back(std::move(r.u));
        } catch (const EvalError&) {
            return false;  // divergent orbit overflowed: report, don't throw
        }
    }
    for (std::size_t i = 0; i < limits.size(); ++i)
        for (std::size_t j = i + 1; j < limits.size(); ++j)
            if (distance(problem.space, limits[i], limits[j]).sup_norm() > 2.0 * K * tol)
                return false;
    return true;
}

}  // namespace conefix
