#include "conefix/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace conefix {

namespace {

using Node = MapExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::number;
    n->value = v;
    return n;
}

NodePtr make_var_current() {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::var_current;
    return n;
}

NodePtr make_var_coordinate(std::size_t i) {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::var_coordinate;
    n->coordinate = i;
    return n;
}

NodePtr make_var_grid() {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::var_grid;
    return n;
}

NodePtr make_negate(NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::negate;
    n->lhs = std::move(child);
    return n;
}

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_power(NodePtr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::power;
    n->exponent = exponent;
    n->lhs = std::move(base);
    return n;
}

NodePtr make_call(MapExpr::Fn fn, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = MapExpr::Kind::call;
    n->fn = fn;
    n->lhs = std::move(arg);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr parse() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos_);
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            lhs = make_binary(c, lhs, parse_term());
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        while (true) {
            char c = peek();
            if (c != '*' && c != '/') break;
            ++pos_;
            lhs = make_binary(c, lhs, parse_factor());
        }
        return lhs;
    }

    NodePtr parse_factor() {
        if (accept('-')) return make_negate(parse_factor());
        NodePtr base = parse_base();
        if (accept('^')) return make_power(std::move(base), parse_integer());
        return base;
    }

    int parse_integer() {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            negative = src_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("expected integer exponent", pos_);
        long value = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            value = value * 10 + (src_[pos_] - '0');
            if (value > 1000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        return static_cast<int>(negative ? -value : value);
    }

    NodePtr parse_base() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            expect(')', "')'");
            return e;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        // exponent suffix: 1e-3, 2.5E+4
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
            if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
                pos_ = probe;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        const std::string token = src_.substr(start, pos_ - start);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0')
            throw ParseError("malformed number '" + token + "'", start);
        return make_number(v);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
            ++pos_;
        const std::string name = src_.substr(start, pos_ - start);

        if (name == "x") return make_var_current();
        if (name == "t") return make_var_grid();
        if (name.size() > 1 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
            return make_var_coordinate(static_cast<std::size_t>(std::stoul(name.substr(1))));
        }

        if (name == "abs") return make_call(MapExpr::Fn::abs, parse_call_arg(name, start));
        if (name == "exp") return make_call(MapExpr::Fn::exp, parse_call_arg(name, start));

        // catalog entries expand into plain ASTs
        if (name == "identity") return make_var_current();
        if (name == "square") return make_power(make_var_current(), 2);
        if (name == "half") return make_binary('/', make_var_current(), make_number(2.0));
        if (name == "scale") return make_binary('*', parse_call_arg(name, start), make_var_current());
        if (name == "constant") return parse_call_arg(name, start);

        throw ParseError("unknown identifier '" + name + "'", start);
    }

    NodePtr parse_call_arg(const std::string& name, std::size_t at) {
        skip_ws();
        if (!accept('(')) throw ParseError("'" + name + "' expects an argument list", at);
        NodePtr arg = parse_expr();
        expect(')', "')'");
        return arg;
    }
};

struct EvalContext {
    double current = 0.0;                      // value of `x`
    const std::vector<double>* coords = nullptr;  // x0..x{k-1}, null in weight context
    double grid_t = 0.0;                       // value of `t`
    bool has_grid_t = false;
};

constexpr double kDivisionGuard = 1e-15;

// Exponentiation by repeated squaring; exact for small integer exponents.
double eval_node_pow(double base, int e) {
    double result = 1.0;
    double acc = base;
    while (e > 0) {
        if (e & 1) result *= acc;
        acc *= acc;
        e >>= 1;
    }
    return result;
}

double eval_node(const Node& node, const EvalContext& ctx) {
    switch (node.kind) {
        case MapExpr::Kind::number:
            return node.value;
        case MapExpr::Kind::var_current:
            if (ctx.coords == nullptr)
                throw EvalError("variable 'x' is not available in a weight expression");
            return ctx.current;
        case MapExpr::Kind::var_coordinate:
            if (ctx.coords == nullptr)
                throw EvalError("coordinate variables are not available in a weight expression");
            if (node.coordinate >= ctx.coords->size())
                throw EvalError("coordinate x" + std::to_string(node.coordinate) +
                                " exceeds point dimension " + std::to_string(ctx.coords->size()));
            return (*ctx.coords)[node.coordinate];
        case MapExpr::Kind::var_grid:
            if (!ctx.has_grid_t)
                throw EvalError("variable 't' is only available in weight expressions");
            return ctx.grid_t;
        case MapExpr::Kind::negate:
            return -eval_node(*node.lhs, ctx);
        case MapExpr::Kind::binary: {
            const double a = eval_node(*node.lhs, ctx);
            const double b = eval_node(*node.rhs, ctx);
            switch (node.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (std::fabs(b) < kDivisionGuard)
                        throw EvalError("division guard tripped: |denominator| < 1e-15");
                    return a / b;
            }
            throw EvalError("unknown binary operator");
        }
        case MapExpr::Kind::power: {
            const double base = eval_node(*node.lhs, ctx);
            int e = node.exponent;
            if (e < 0) {
                if (std::fabs(base) < kDivisionGuard)
                    throw EvalError("division guard tripped: negative power of near-zero base");
                return 1.0 / eval_node_pow(base, -e);
            }
            return eval_node_pow(base, e);
        }
        case MapExpr::Kind::call: {
            const double a = eval_node(*node.lhs, ctx);
            switch (node.fn) {
                case MapExpr::Fn::abs: return std::fabs(a);
                case MapExpr::Fn::exp: return std::exp(a);
            }
            throw EvalError("unknown function");
        }
    }
    throw EvalError("malformed expression node");
}

}  // namespace

MapExpr MapExpr::identity() {
    return MapExpr(make_var_current());
}

MapExpr parse_map(const std::string& source) {
    std::size_t first = 0;
    while (first < source.size() && std::isspace(static_cast<unsigned char>(source[first])))
        ++first;
    if (first == source.size()) throw ParseError("empty expression", 0);
    return MapExpr(Parser(source).parse());
}

namespace {

void print_node(const Node& node, std::string& out) {
    char buf[64];
    switch (node.kind) {
        case MapExpr::Kind::number:
            std::snprintf(buf, sizeof(buf), "%.17g", node.value);
            out += buf;
            return;
        case MapExpr::Kind::var_current:
            out += "x";
            return;
        case MapExpr::Kind::var_coordinate:
            out += "x" + std::to_string(node.coordinate);
            return;
        case MapExpr::Kind::var_grid:
            out += "t";
            return;
        case MapExpr::Kind::negate:
            out += "(-";
            print_node(*node.lhs, out);
            out += ")";
            return;
        case MapExpr::Kind::binary:
            out += "(";
            print_node(*node.lhs, out);
            out += " ";
            out += node.op;
            out += " ";
            print_node(*node.rhs, out);
            out += ")";
            return;
        case MapExpr::Kind::power:
            out += "(";
            print_node(*node.lhs, out);
            out += "^";
            out += std::to_string(node.exponent);
            out += ")";
            return;
        case MapExpr::Kind::call:
            out += node.fn == MapExpr::Fn::abs ? "abs(" : "exp(";
            print_node(*node.lhs, out);
            out += ")";
            return;
    }
}

}  // namespace

std::string to_string(const MapExpr& expr) {
    require(!expr.empty(), "cannot print an empty expression");
    std::string out;
    print_node(*expr.root(), out);
    return out;
}

MPoint eval_map(const MapExpr& expr, const MPoint& p) {
    require(!expr.empty(), "cannot evaluate an empty expression");
    require(p.dimension() >= 1, "point must have dimension >= 1");
    std::vector<double> out(p.dimension());
    EvalContext ctx;
    ctx.coords = &p.coords;
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        ctx.current = p.coords[i];
        const double v = eval_node(*expr.root(), ctx);
        if (!std::isfinite(v))
            throw EvalError("map evaluation produced a non-finite value");
        out[i] = v;
    }
    return MPoint(std::move(out));
}

double eval_weight(const MapExpr& expr, double t) {
    require(!expr.empty(), "cannot evaluate an empty expression");
    EvalContext ctx;
    ctx.grid_t = t;
    ctx.has_grid_t = true;
    const double v = eval_node(*expr.root(), ctx);
    if (!std::isfinite(v)) throw EvalError("weight evaluation produced a non-finite value");
    return v;
}

namespace {

double eval_scalar(const MapExpr& expr, double x) {
    return eval_map(expr, MPoint::scalar(x))[0];
}

}  // namespace

InjectivityReport spot_check_injective(const MapExpr& expr, std::size_t samples,
                                       const Interval& domain, std::uint64_t seed) {
    require(samples >= 2, "injectivity spot check needs at least 2 samples");
    InjectivityReport report;
    Rng rng(seed);

    // Sample the domain (lattice + random), keep sorted by position.
    std::vector<double> xs;
    xs.reserve(samples);
    const std::size_t lattice_n = std::max<std::size_t>(2, samples / 2);
    for (double v : lattice(domain, lattice_n)) xs.push_back(v);
    while (xs.size() < samples) xs.push_back(rng.uniform(domain));
    std::sort(xs.begin(), xs.end());
    report.samples_used = xs.size();

    std::vector<double> values(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) values[i] = eval_scalar(expr, xs[i]);

    // For a set of anchors, look for a far-away segment where T crosses the
    // anchor value and refine by bisection.
    const std::size_t anchor_step = std::max<std::size_t>(1, xs.size() / 128);
    for (std::size_t a = 0; a < xs.size(); a += anchor_step) {
        const double p = xs[a];
        const double c = values[a];
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (std::fabs(xs[i] - p) <= 1e-6 || std::fabs(xs[i + 1] - p) <= 1e-6) continue;
            const double fa = values[i] - c;
            const double fb = values[i + 1] - c;
            if (fa == 0.0 && std::fabs(xs[i] - p) > 1e-9) {
                report.collisions.push_back({p, xs[i], 0.0});
                if (report.collisions.size() >= 8) return report;
                continue;
            }
            if (fa * fb > 0.0) continue;
            double lo = xs[i], hi = xs[i + 1];
            double flo = fa;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = eval_scalar(expr, mid) - c;
                if ((flo <= 0.0) == (fm <= 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double y = 0.5 * (lo + hi);
            const double gap = std::fabs(eval_scalar(expr, y) - c);
            if (gap <= 1e-12 && std::fabs(y - p) > 1e-9) {
                report.collisions.push_back({p, y, gap});
                if (report.collisions.size() >= 8) return report;
            }
        }
    }
    return report;
}

}  // namespace conefix
