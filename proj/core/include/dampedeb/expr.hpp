#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace dampedeb::expr {

enum class Var { x, y, t };

enum class BinaryOp { add, sub, mul, div, pow };

enum class Func { sin, cos, exp, sqrt, abs };

struct Node;

/// Immutable arithmetic expression over the variables x, y, t.
///
/// Copies share the underlying tree; evaluation never mutates it, so one
/// Expression may be evaluated from several threads at once.
class Expression {
public:
    /// The constant 0.
    Expression();

    double eval(double x, double y, double t) const;
    double operator()(double x, double y, double t) const { return eval(x, y, t); }

    /// Fully parenthesized text that parses back to an equivalent tree.
    std::string to_string() const;

    bool depends_on(Var v) const;

    /// True when the tree is the literal constant 0.
    bool is_zero_literal() const;

    static Expression constant(double value);

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    friend class Parser;

    std::shared_ptr<const Node> root_;
};

/// Extra identifier spellings for the three variables, e.g. {"z", Var::x}
/// for one-variable damping laws.
using VarAliases = std::map<std::string, Var, std::less<>>;

/// Pratt parser. Precedence from tightest: `^` (right-associative), unary
/// minus, `*` `/`, `+` `-`. Throws SyntaxError with the byte offset.
Expression parse(std::string_view source, const VarAliases& aliases = {});

}  // namespace dampedeb::expr
