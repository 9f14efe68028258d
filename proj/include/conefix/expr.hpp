#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conefix/errors.hpp"
#include "conefix/sampling.hpp"

namespace conefix {

/// Point of the set M: a finite real vector (dimension 1 for maps on the line).
struct MPoint {
    std::vector<double> coords;

    MPoint() = default;
    explicit MPoint(std::vector<double> c) : coords(std::move(c)) {}
    static MPoint scalar(double v) { return MPoint(std::vector<double>{v}); }

    std::size_t dimension() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    bool operator==(const MPoint& other) const { return coords == other.coords; }
};

/// Immutable expression AST for self-maps of M and weight functions on the
/// E-grid. Variables: `x` binds the coordinate being mapped, `x0..x{k-1}` the
/// full input point, `t` the grid parameter (weight context only). Catalog
/// names (identity, square, half, scale(a), constant(c)) expand at parse time.
class MapExpr {
  public:
    enum class Kind { number, var_current, var_coordinate, var_grid, negate, binary, power, call };
    enum class Fn { abs, exp };

    struct Node {
        Kind kind;
        double value = 0.0;                    // number
        std::size_t coordinate = 0;            // var_coordinate
        char op = 0;                           // binary: + - * /
        int exponent = 0;                      // power
        Fn fn = Fn::abs;                       // call
        std::shared_ptr<const Node> lhs, rhs;  // children
    };

    MapExpr() = default;
    explicit MapExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    bool empty() const { return root_ == nullptr; }
    const std::shared_ptr<const Node>& root() const { return root_; }

    static MapExpr identity();

  private:
    std::shared_ptr<const Node> root_;
};

/// Analytic hypotheses of the fixed-point theorems. They are declarations:
/// not decidable by finite computation, only refutable by sampling.
struct MapCapabilities {
    bool injective = true;
    bool continuous = true;
    bool subsequentially_convergent = true;
    bool sequentially_convergent = true;

    void validate() const {
        require(!sequentially_convergent || subsequentially_convergent,
                "sequentially_convergent implies subsequentially_convergent");
    }
};

/// Recursive-descent parse of the map grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' integer)?
///   base   := number | ident | call | '(' expr ')'
/// Throws ParseError with the offending position.
MapExpr parse_map(const std::string& source);

/// Canonical parenthesized text form; parse(to_string(e)) evaluates identically.
std::string to_string(const MapExpr& expr);

/// Componentwise evaluation: coordinate i of the result evaluates the
/// expression with x bound to p[i]. Throws EvalError on guard trips or
/// non-finite results.
MPoint eval_map(const MapExpr& expr, const MPoint& p);

/// Scalar evaluation with the grid variable t bound (weight functions).
double eval_weight(const MapExpr& expr, double t);

struct InjectivityCollision {
    double a = 0.0;
    double b = 0.0;
    double value_gap = 0.0;  // |T(a) - T(b)|
};

struct InjectivityReport {
    std::size_t samples_used = 0;
    std::vector<InjectivityCollision> collisions;
    bool injective_on_samples() const { return collisions.empty(); }
};

/// Searches for pairs a != b (|a-b| > 1e-9) with |T(a) - T(b)| <= 1e-12 on the
/// interval. Failure to find a collision is evidence, not proof.
InjectivityReport spot_check_injective(const MapExpr& expr, std::size_t samples,
                                       const Interval& domain, std::uint64_t seed);

}  // namespace conefix
