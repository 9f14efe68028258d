#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conefix/contraction.hpp"

namespace conefix {

/// A runnable fixed-point problem: space, maps, declared contraction and a
/// start. The contraction condition is advisory for solve; run the checker to
/// validate it.
struct Problem {
    ConeMetricSpace space;
    MapExpr T = MapExpr::identity();
    MapCapabilities T_capabilities;
    MapExpr S = MapExpr::identity();
    ContractionKind kind = ContractionKind::TK1;
    double constant = 0.0;  // b (TK1) or c (TK2)
    MPoint x0 = MPoint::scalar(0.0);
    DomainBox domain;

    double contraction_ratio() const { return constant / (1.0 - constant); }
    void validate() const;
};

/// Geometric-series error certificate. The a priori curve bounds
/// ||d(T S^n x0, v)|| by K h^n d0 / (1 - h); the a posteriori residual is the
/// same telescoping evaluated at the last recorded step.
struct Certificate {
    double h = 0.0;
    double d0_norm = 0.0;
    std::vector<double> apriori_curve;
    double aposteriori_residual = 0.0;
    bool decay_verified = false;
};

struct FixedPointResult {
    MPoint u;
    double v_norm_gap = 0.0;  // ||d(T(S(u)), T(u))||, the executable Tu = v check
    std::size_t iterations = 0;
    std::vector<double> trace;  // ||d(T x_n, T x_{n+1})|| per step
    Certificate certificate;
    std::optional<bool> unique_probe;  // set when the uniqueness probe ran
    bool converged = false;
    bool subsequential_only = false;  // T declared only subsequentially convergent
};

/// K h^n d0 / (1 - h).
double apriori_bound(double h, double d0_norm, double K, std::size_t n);

/// Smallest n >= 0 with apriori_bound(h, d0_norm, K, n) <= tol.
std::size_t iterations_needed(double h, double d0_norm, double K, double tol);

/// trace[n] <= h^n * trace[0] * K + 1e-9 for every n.
bool verify_decay(std::span<const double> trace, double h, double K = 1.0);

/// Picard iteration x_{n+1} = S(x_n) with a posteriori stopping. Termination
/// requires the certified residual K h ||d(Tx_{n-1}, Tx_n)|| / (1-h) <= tol
/// and the analogous iterate-level residual with the observed step ratio
/// floored at h, so the returned point itself is resolved to tol.
FixedPointResult solve(const Problem& problem, double tol, std::size_t max_iter = 10000);

/// Runs solve from every start; true iff all runs converge and the limits
/// agree pairwise within ||d(u_i, u_j)|| <= 2 K tol. Evaluation failures on a
/// start (overflow of a divergent orbit) count as disagreement, not errors.
bool uniqueness_probe(const Problem& problem, const std::vector<MPoint>& starts, double tol,
                      std::size_t max_iter = 10000);

}  // namespace conefix
