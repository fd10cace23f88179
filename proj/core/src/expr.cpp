#include "dampedeb/expr.hpp"

#include "dampedeb/error.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

namespace dampedeb::expr {

struct Constant {
    double value;
};
struct Variable {
    Var var;
};
struct Negate {
    std::shared_ptr<const Node> operand;
};
struct Binary {
    BinaryOp op;
    std::shared_ptr<const Node> lhs, rhs;
};
struct Call {
    Func fn;
    std::shared_ptr<const Node> arg;
};

struct Node {
    std::variant<Constant, Variable, Negate, Binary, Call> data;
};

namespace {

template<class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double checked(double value, const char* what) {
    if (!std::isfinite(value)) throw DomainError(std::string("non-finite result in ") + what);
    return value;
}

double eval_node(const Node& node, double x, double y, double t) {
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.value; },
            [&](const Variable& v) {
                switch (v.var) {
                    case Var::x: return x;
                    case Var::y: return y;
                    case Var::t: return t;
                }
                return 0.0;
            },
            [&](const Negate& n) { return -eval_node(*n.operand, x, y, t); },
            [&](const Binary& b) {
                const double l = eval_node(*b.lhs, x, y, t);
                const double r = eval_node(*b.rhs, x, y, t);
                switch (b.op) {
                    case BinaryOp::add: return checked(l + r, "addition");
                    case BinaryOp::sub: return checked(l - r, "subtraction");
                    case BinaryOp::mul: return checked(l * r, "multiplication");
                    case BinaryOp::div:
                        if (r == 0.0) throw DomainError("division by zero");
                        return checked(l / r, "division");
                    case BinaryOp::pow: return checked(std::pow(l, r), "power");
                }
                return 0.0;
            },
            [&](const Call& c) {
                const double a = eval_node(*c.arg, x, y, t);
                switch (c.fn) {
                    case Func::sin: return std::sin(a);
                    case Func::cos: return std::cos(a);
                    case Func::exp: return checked(std::exp(a), "exp");
                    case Func::sqrt:
                        if (a < 0.0) throw DomainError("sqrt of negative operand");
                        return std::sqrt(a);
                    case Func::abs: return std::abs(a);
                }
                return 0.0;
            },
        },
        node.data);
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

const char* func_name(Func f) {
    switch (f) {
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::exp: return "exp";
        case Func::sqrt: return "sqrt";
        case Func::abs: return "abs";
    }
    return "?";
}

void print_node(const Node& node, std::string& out) {
    std::visit(overloaded{
                   [&](const Constant& c) { out += format_double(c.value); },
                   [&](const Variable& v) { out += v.var == Var::x ? "x" : v.var == Var::y ? "y" : "t"; },
                   [&](const Negate& n) {
                       out += "(-";
                       print_node(*n.operand, out);
                       out += ')';
                   },
                   [&](const Binary& b) {
                       static constexpr char symbols[] = {'+', '-', '*', '/', '^'};
                       out += '(';
                       print_node(*b.lhs, out);
                       out += symbols[static_cast<int>(b.op)];
                       print_node(*b.rhs, out);
                       out += ')';
                   },
                   [&](const Call& c) {
                       out += func_name(c.fn);
                       out += '(';
                       print_node(*c.arg, out);
                       out += ')';
                   },
               },
               node.data);
}

bool node_depends_on(const Node& node, Var var) {
    return std::visit(overloaded{
                          [](const Constant&) { return false; },
                          [&](const Variable& v) { return v.var == var; },
                          [&](const Negate& n) { return node_depends_on(*n.operand, var); },
                          [&](const Binary& b) {
                              return node_depends_on(*b.lhs, var) || node_depends_on(*b.rhs, var);
                          },
                          [&](const Call& c) { return node_depends_on(*c.arg, var); },
                      },
                      node.data);
}

std::shared_ptr<const Node> make(auto&& alt) {
    return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)});
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double value = 0.0;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < src.size()) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(c) || c == '.') {
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(src.data() + i, src.data() + src.size(), value);
            if (ec != std::errc{}) throw SyntaxError("malformed number", start);
            i = static_cast<std::size_t>(ptr - src.data());
            tokens.push_back({Tok::number, start, src.substr(start, i - start), value});
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            tokens.push_back({Tok::ident, start, src.substr(start, i - start)});
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-': kind = Tok::minus; break;
            case '*': kind = Tok::star; break;
            case '/': kind = Tok::slash; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            default: throw SyntaxError(std::string("unexpected character '") + src[i] + "'", start);
        }
        tokens.push_back({kind, start, src.substr(start, 1)});
        ++i;
    }
    tokens.push_back({Tok::end, src.size(), {}});
    return tokens;
}

// Binding powers.
constexpr int bp_additive = 10;
constexpr int bp_multiplicative = 20;
constexpr int bp_unary = 30;
constexpr int bp_power = 40;

int infix_power(Tok kind) {
    switch (kind) {
        case Tok::plus:
        case Tok::minus: return bp_additive;
        case Tok::star:
        case Tok::slash: return bp_multiplicative;
        case Tok::caret: return bp_power;
        default: return 0;
    }
}

}  // namespace

class Parser {
public:
    Parser(std::string_view src, const VarAliases& aliases) : tokens_(tokenize(src)), aliases_(aliases) {}

    Expression parse_all() {
        if (tokens_.front().kind == Tok::end) throw SyntaxError("empty expression", 0);
        auto root = expression(0);
        if (peek().kind != Tok::end) {
            if (peek().kind == Tok::rparen) throw SyntaxError("unbalanced ')'", peek().offset);
            throw SyntaxError("unexpected token '" + std::string(peek().text) + "'", peek().offset);
        }
        return Expression(std::move(root));
    }

    static Expression wrap(std::shared_ptr<const Node> root) { return Expression(std::move(root)); }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    std::shared_ptr<const Node> expression(int min_bp) {
        auto lhs = prefix();
        for (;;) {
            const Token& op = peek();
            const int bp = infix_power(op.kind);
            if (bp == 0 || bp <= min_bp) break;
            next();
            // `^` is right-associative: its right operand may contain another `^`.
            auto rhs = expression(op.kind == Tok::caret ? bp - 1 : bp);
            BinaryOp bop{};
            switch (op.kind) {
                case Tok::plus: bop = BinaryOp::add; break;
                case Tok::minus: bop = BinaryOp::sub; break;
                case Tok::star: bop = BinaryOp::mul; break;
                case Tok::slash: bop = BinaryOp::div; break;
                default: bop = BinaryOp::pow; break;
            }
            lhs = make(Binary{bop, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    std::shared_ptr<const Node> prefix() {
        const Token& tok = next();
        switch (tok.kind) {
            case Tok::number: return make(Constant{tok.value});
            case Tok::minus: return make(Negate{expression(bp_unary)});
            case Tok::lparen: {
                auto inner = expression(0);
                if (peek().kind != Tok::rparen) throw SyntaxError("unbalanced '('", tok.offset);
                next();
                return inner;
            }
            case Tok::ident: return identifier(tok);
            case Tok::end: throw SyntaxError("dangling operator", tok.offset);
            default: throw SyntaxError("unexpected token '" + std::string(tok.text) + "'", tok.offset);
        }
    }

    std::shared_ptr<const Node> identifier(const Token& tok) {
        const std::string_view name = tok.text;
        if (name == "x") return make(Variable{Var::x});
        if (name == "y") return make(Variable{Var::y});
        if (name == "t") return make(Variable{Var::t});
        if (name == "pi") return make(Constant{std::numbers::pi});
        if (auto it = aliases_.find(name); it != aliases_.end()) return make(Variable{it->second});

        static constexpr std::pair<std::string_view, Func> functions[] = {
            {"sin", Func::sin}, {"cos", Func::cos}, {"exp", Func::exp}, {"sqrt", Func::sqrt}, {"abs", Func::abs}};
        for (auto [fname, fn] : functions) {
            if (name != fname) continue;
            if (peek().kind != Tok::lparen)
                throw SyntaxError("expected '(' after " + std::string(name), peek().offset);
            const Token& open = next();
            auto arg = expression(0);
            if (peek().kind != Tok::rparen) throw SyntaxError("unbalanced '('", open.offset);
            next();
            return make(Call{fn, std::move(arg)});
        }
        throw SyntaxError("unknown identifier '" + std::string(name) + "'", tok.offset);
    }

    std::vector<Token> tokens_;
    const VarAliases& aliases_;
    std::size_t pos_ = 0;
};

Expression::Expression() : root_(make(Constant{0.0})) {}

Expression Expression::constant(double value) { return Parser::wrap(make(Constant{value})); }

double Expression::eval(double x, double y, double t) const { return eval_node(*root_, x, y, t); }

std::string Expression::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

bool Expression::depends_on(Var v) const { return node_depends_on(*root_, v); }

bool Expression::is_zero_literal() const {
    const auto* c = std::get_if<Constant>(&root_->data);
    return c != nullptr && c->value == 0.0;
}

Expression parse(std::string_view source, const VarAliases& aliases) {
    return Parser(source, aliases).parse_all();
}

}  // namespace dampedeb::expr
