#pragma once

// Arithmetic expression language for problem files. D and P are
// bivariate expressions in x, y; self maps T are expressions in x only.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | number | var | call | '(' expr ')'
//   var    := ('x'|'y') ('[' int ']')?
//   call   := ident '(' expr (',' expr)* ')'

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perturbed/errors.hpp"
#include "perturbed/tolerances.hpp"

namespace perturbed::dsl {

// Values are small column vectors; scalars have size 1. Binary
// operators broadcast a scalar against a vector.
using Value = std::vector<double>;

enum class Context { D, P, T };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Unary, Binary, Call };

    Kind kind;
    double number = 0.0;
    char var = 0;               // 'x' or 'y'
    int component = -1;         // -1 means the whole vector
    char op = 0;                // '+', '-', '*', '/'; unary is always '-'
    std::string callee;
    std::vector<ExprPtr> args;
};

namespace detail {

inline constexpr int kMaxDepth = 64;

struct Token {
    enum class Kind { Number, Ident, Symbol, End };
    Kind kind;
    std::string_view text;
    double number = 0.0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ >= src_.size()) return {Token::Kind::End, {}, 0.0, pos_};
        const std::size_t start = pos_;
        const char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            return lex_number(start);
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            return {Token::Kind::Ident, src_.substr(start, pos_ - start), 0.0, start};
        }
        if (std::string_view("+-*/(),[]").find(ch) != std::string_view::npos) {
            ++pos_;
            return {Token::Kind::Symbol, src_.substr(start, 1), 0.0, start};
        }
        throw SyntaxError("unexpected character '" + std::string(1, ch) + "' at offset " +
                          std::to_string(start));
    }

private:
    Token lex_number(std::size_t start) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // bare 'e' belongs to the next token
            }
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto rc = std::from_chars(text.data(), text.data() + text.size(), value);
        if (rc.ec != std::errc{} || rc.ptr != text.data() + text.size()) {
            throw SyntaxError("malformed number at offset " + std::to_string(start));
        }
        return {Token::Kind::Number, text, value, start};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

struct Builtin {
    std::string_view name;
    int arity;
};

inline constexpr Builtin kBuiltins[] = {
    {"abs", 1},   {"min", 2},   {"max", 2},     {"sqrt", 1},    {"exp", 1},     {"pow", 2},
    {"norm1", 1}, {"norm2", 1}, {"norminf", 1}, {"floorfn", 1}, {"if_lt", 4},
};

inline const Builtin* find_builtin(std::string_view name) {
    for (const auto& b : kBuiltins) {
        if (b.name == name) return &b;
    }
    return nullptr;
}

class Parser {
public:
    Parser(std::string_view src, Context context, int dimension)
        : lexer_(src), context_(context), dimension_(dimension) {
        advance();
    }

    ExprPtr parse_all() {
        ExprPtr e = parse_expr(0);
        if (tok_.kind != Token::Kind::End) {
            throw SyntaxError("trailing input at offset " + std::to_string(tok_.offset));
        }
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    static ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Binary;
        node->op = op;
        node->args = {std::move(lhs), std::move(rhs)};
        return node;
    }

    bool accept_symbol(char s) {
        if (tok_.kind == Token::Kind::Symbol && tok_.text.size() == 1 && tok_.text[0] == s) {
            advance();
            return true;
        }
        return false;
    }

    void expect_symbol(char s, const char* what) {
        if (!accept_symbol(s)) {
            throw SyntaxError(std::string("expected '") + s + "' (" + what + ") at offset " +
                              std::to_string(tok_.offset));
        }
    }

    ExprPtr parse_expr(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_term(depth);
        while (tok_.kind == Token::Kind::Symbol && (tok_.text == "+" || tok_.text == "-")) {
            const char op = tok_.text[0];
            advance();
            lhs = make_binary(op, lhs, parse_term(depth));
        }
        return lhs;
    }

    ExprPtr parse_term(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_factor(depth);
        while (tok_.kind == Token::Kind::Symbol && (tok_.text == "*" || tok_.text == "/")) {
            const char op = tok_.text[0];
            advance();
            lhs = make_binary(op, lhs, parse_factor(depth));
        }
        return lhs;
    }

    ExprPtr parse_factor(int depth) {
        check_depth(depth);
        if (accept_symbol('-')) {
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Unary;
            node->op = '-';
            node->args.push_back(parse_factor(depth + 1));
            return node;
        }
        if (tok_.kind == Token::Kind::Number) {
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Number;
            node->number = tok_.number;
            advance();
            return node;
        }
        if (tok_.kind == Token::Kind::Ident) {
            return parse_ident(depth);
        }
        if (accept_symbol('(')) {
            ExprPtr inner = parse_expr(depth + 1);
            expect_symbol(')', "closing parenthesis");
            return inner;
        }
        throw SyntaxError("expected expression at offset " + std::to_string(tok_.offset));
    }

    ExprPtr parse_ident(int depth) {
        const std::string name(tok_.text);
        const std::size_t offset = tok_.offset;
        advance();
        if (name == "x" || name == "y") {
            if (name == "y" && context_ == Context::T) {
                throw ForbiddenVariable("variable 'y' is not allowed in a self-map expression (offset " +
                                        std::to_string(offset) + ")");
            }
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Var;
            node->var = name[0];
            if (accept_symbol('[')) {
                if (tok_.kind != Token::Kind::Number || tok_.number != std::floor(tok_.number) ||
                    tok_.number < 0) {
                    throw SyntaxError("expected non-negative integer index at offset " +
                                      std::to_string(tok_.offset));
                }
                node->component = static_cast<int>(tok_.number);
                if (node->component >= dimension_) {
                    throw IndexOutOfRange("component " + std::to_string(node->component) +
                                          " out of range for dimension " + std::to_string(dimension_));
                }
                advance();
                expect_symbol(']', "closing bracket");
            }
            return node;
        }
        const Builtin* builtin = find_builtin(name);
        if (builtin == nullptr) {
            throw UnknownIdentifier("unknown identifier '" + name + "' at offset " +
                                    std::to_string(offset));
        }
        expect_symbol('(', "argument list");
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Call;
        node->callee = name;
        node->args.push_back(parse_expr(depth + 1));
        while (accept_symbol(',')) {
            node->args.push_back(parse_expr(depth + 1));
        }
        expect_symbol(')', "closing parenthesis");
        if (static_cast<int>(node->args.size()) != builtin->arity) {
            throw ArityError("'" + name + "' expects " + std::to_string(builtin->arity) +
                             " argument(s), got " + std::to_string(node->args.size()));
        }
        return node;
    }

    static void check_depth(int depth) {
        if (depth > kMaxDepth) {
            throw SyntaxError("expression nesting exceeds depth limit " + std::to_string(kMaxDepth));
        }
    }

    Lexer lexer_;
    Token tok_;
    Context context_;
    int dimension_;
};

inline double scalar_of(const Value& v, const char* what) {
    if (v.size() != 1) {
        throw DomainError(std::string(what) + " requires a scalar, got a vector of size " +
                          std::to_string(v.size()));
    }
    return v[0];
}

inline Value broadcast(char op, const Value& a, const Value& b) {
    const std::size_t n = std::max(a.size(), b.size());
    if (a.size() != b.size() && a.size() != 1 && b.size() != 1) {
        throw DomainError("operand size mismatch in '" + std::string(1, op) + "'");
    }
    Value out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lhs = a[a.size() == 1 ? 0 : i];
        const double rhs = b[b.size() == 1 ? 0 : i];
        switch (op) {
            case '+': out[i] = lhs + rhs; break;
            case '-': out[i] = lhs - rhs; break;
            case '*': out[i] = lhs * rhs; break;
            case '/':
                if (std::abs(rhs) <= kTauNum) {
                    throw DivisionNearZero("divisor within tolerance of zero");
                }
                out[i] = lhs / rhs;
                break;
            default: throw DomainError("bad operator");
        }
    }
    return out;
}

inline Value map_unary(const Value& a, double (*fn)(double)) {
    Value out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = fn(a[i]);
    return out;
}

}  // namespace detail

inline ExprPtr parse(std::string_view source, Context context, int dimension) {
    if (source.empty()) throw SyntaxError("empty expression");
    if (dimension < 1) throw DomainError("dimension must be at least 1");
    return detail::Parser(source, context, dimension).parse_all();
}

// Evaluates with x bound, and y bound when present. Values carrying
// NaN/inf are rejected at the leaves of arithmetic, so results are finite.
inline Value eval(const ExprPtr& expr, const Value& x, const Value* y = nullptr) {
    using detail::broadcast;
    using detail::map_unary;
    using detail::scalar_of;
    switch (expr->kind) {
        case Expr::Kind::Number:
            return Value{expr->number};
        case Expr::Kind::Var: {
            const Value* bound = expr->var == 'x' ? &x : y;
            if (bound == nullptr) throw DomainError("variable 'y' has no binding");
            if (expr->component < 0) return *bound;
            if (expr->component >= static_cast<int>(bound->size())) {
                throw IndexOutOfRange("component " + std::to_string(expr->component) +
                                      " out of range at evaluation");
            }
            return Value{(*bound)[static_cast<std::size_t>(expr->component)]};
        }
        case Expr::Kind::Unary: {
            Value a = eval(expr->args[0], x, y);
            for (double& v : a) v = -v;
            return a;
        }
        case Expr::Kind::Binary:
            return broadcast(expr->op, eval(expr->args[0], x, y), eval(expr->args[1], x, y));
        case Expr::Kind::Call: {
            std::vector<Value> args;
            args.reserve(expr->args.size());
            for (const auto& a : expr->args) args.push_back(eval(a, x, y));
            const std::string& f = expr->callee;
            if (f == "abs") return map_unary(args[0], [](double v) { return std::abs(v); });
            if (f == "exp") return map_unary(args[0], [](double v) { return std::exp(v); });
            if (f == "floorfn") return map_unary(args[0], [](double v) { return std::floor(v); });
            if (f == "sqrt") {
                Value out(args[0].size());
                for (std::size_t i = 0; i < out.size(); ++i) {
                    double v = args[0][i];
                    if (v < -kTauNum) throw DomainError("sqrt of negative value");
                    out[i] = std::sqrt(std::max(v, 0.0));
                }
                return out;
            }
            if (f == "min" || f == "max") {
                const bool is_min = f == "min";
                const Value &a = args[0], &b = args[1];
                const std::size_t n = std::max(a.size(), b.size());
                if (a.size() != b.size() && a.size() != 1 && b.size() != 1) {
                    throw DomainError("operand size mismatch in '" + f + "'");
                }
                Value out(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double lhs = a[a.size() == 1 ? 0 : i];
                    const double rhs = b[b.size() == 1 ? 0 : i];
                    out[i] = is_min ? std::min(lhs, rhs) : std::max(lhs, rhs);
                }
                return out;
            }
            if (f == "pow") {
                const Value &a = args[0], &b = args[1];
                const std::size_t n = std::max(a.size(), b.size());
                Value out(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = std::pow(a[a.size() == 1 ? 0 : i], b[b.size() == 1 ? 0 : i]);
                    if (!std::isfinite(r)) throw DomainError("pow result is not finite");
                    out[i] = r;
                }
                return out;
            }
            if (f == "norm1") {
                double s = 0.0;
                for (double v : args[0]) s += std::abs(v);
                return Value{s};
            }
            if (f == "norm2") {
                double s = 0.0;
                for (double v : args[0]) s += v * v;
                return Value{std::sqrt(s)};
            }
            if (f == "norminf") {
                double s = 0.0;
                for (double v : args[0]) s = std::max(s, std::abs(v));
                return Value{s};
            }
            if (f == "if_lt") {
                const double a = scalar_of(args[0], "if_lt condition");
                const double b = scalar_of(args[1], "if_lt condition");
                return a < b ? args[2] : args[3];
            }
            throw UnknownIdentifier("unknown function '" + f + "'");
        }
    }
    throw DomainError("corrupt expression node");
}

namespace detail {

inline std::string format_number(double v) {
    char buf[32];
    const auto rc = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, rc.ptr);
}

}  // namespace detail

// Canonical fully parenthesized rendering; parse(print(e)) evaluates
// identically to e.
inline std::string print(const ExprPtr& expr) {
    switch (expr->kind) {
        case Expr::Kind::Number:
            return detail::format_number(expr->number);
        case Expr::Kind::Var: {
            std::string s(1, expr->var);
            if (expr->component >= 0) s += "[" + std::to_string(expr->component) + "]";
            return s;
        }
        case Expr::Kind::Unary:
            return "(-" + print(expr->args[0]) + ")";
        case Expr::Kind::Binary:
            return "(" + print(expr->args[0]) + " " + std::string(1, expr->op) + " " +
                   print(expr->args[1]) + ")";
        case Expr::Kind::Call: {
            std::string s = expr->callee + "(";
            for (std::size_t i = 0; i < expr->args.size(); ++i) {
                if (i > 0) s += ", ";
                s += print(expr->args[i]);
            }
            return s + ")";
        }
    }
    return {};
}

}  // namespace perturbed::dsl
