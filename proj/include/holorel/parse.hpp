#pragma once

/*
 * Expression parser shared by the CLI.
 *
 * Grammar (whitespace free between tokens):
 *   expr     := term (('+' | '-') term)*
 *   term     := factor (('*' | '/') factor)*
 *   factor   := '-' factor | power
 *   power    := atom ('^' ['-'] integer)?
 *   atom     := integer | ident | pFq '[' rats ';' rats ']' | '(' expr ')'
 *   ident    := x | t | w | delta | delta_t | delta_w | Dx | Dt | Dw
 *   pFq      := digits 'F' digits           (e.g. 0F1, 2F1)
 *
 * '*' is noncommutative composition when operators are involved; '/'
 * requires a derivation-free divisor and multiplies by its inverse from
 * the left.  Hypergeometric atoms become operators or series depending
 * on the evaluation context.  Errors carry 1-based column positions.
 */

#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "holorel/error.hpp"
#include "holorel/hypergeo.hpp"
#include "holorel/ore.hpp"
#include "holorel/ratfunc.hpp"
#include "holorel/truncseries.hpp"

namespace holorel {

struct ParseError : Error {
    ParseError(const std::string& msg, size_t col)
        : Error("syntax error at column " + std::to_string(col) + ": " + msg), column(col) {}
    size_t column;
};

namespace parse_detail {

struct Token {
    enum Kind { Num, Ident, HyperTag, Plus, Minus, Star, Slash, Caret, LParen, RParen,
                LBracket, RBracket, Comma, Semi, End };
    Kind kind = End;
    std::string text;  // digits for Num, name for Ident
    long p = 0, q = 0; // for HyperTag
    size_t col = 0;    // 1-based
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        Token t;
        t.col = i + 1;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            // digitsFdigits is a hypergeometric tag like 0F1.
            if (j < s.size() && s[j] == 'F' && j + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                t.kind = Token::HyperTag;
                t.p = std::stol(s.substr(i, j - i));
                t.q = std::stol(s.substr(j + 1, k - j - 1));
                i = k;
            } else {
                t.kind = Token::Num;
                t.text = s.substr(i, j - i);
                i = j;
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Token::Ident;
            t.text = s.substr(i, j - i);
            i = j;
        } else {
            switch (c) {
                case '+': t.kind = Token::Plus; break;
                case '-': t.kind = Token::Minus; break;
                case '*': t.kind = Token::Star; break;
                case '/': t.kind = Token::Slash; break;
                case '^': t.kind = Token::Caret; break;
                case '(': t.kind = Token::LParen; break;
                case ')': t.kind = Token::RParen; break;
                case '[': t.kind = Token::LBracket; break;
                case ']': t.kind = Token::RBracket; break;
                case ',': t.kind = Token::Comma; break;
                case ';': t.kind = Token::Semi; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", t.col);
            }
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.col = s.empty() ? 1 : s.size();
    out.push_back(end);
    return out;
}

struct Node {
    enum Op { Add, Sub, Mul, Div, Neg, Pow, NumLit, Symbol, Hyper } op;
    std::unique_ptr<Node> a, b;
    std::string text; // NumLit digits or Symbol name
    long exponent = 0;
    HypergeomSpec spec{{}, {}};
    size_t col = 0;
};

inline std::optional<DerivKind> deriv_of(const std::string& name) {
    if (name == "delta") return DerivKind{Deriv::Euler, Var::x};
    if (name == "delta_t") return DerivKind{Deriv::Euler, Var::t};
    if (name == "delta_w") return DerivKind{Deriv::Euler, Var::w};
    if (name == "Dx") return DerivKind{Deriv::D, Var::x};
    if (name == "Dt") return DerivKind{Deriv::D, Var::t};
    if (name == "Dw") return DerivKind{Deriv::D, Var::w};
    return std::nullopt;
}

inline std::optional<Var> var_of(const std::string& name) {
    if (name == "x") return Var::x;
    if (name == "t") return Var::t;
    if (name == "w") return Var::w;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(const std::string& s) : toks_(lex(s)) {}

    std::unique_ptr<Node> parse() {
        auto n = expr();
        expect(Token::End, "unexpected trailing input");
        return n;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }
    void expect(Token::Kind k, const std::string& what) {
        if (cur().kind != k) throw ParseError(what, cur().col);
        advance();
    }

    std::unique_ptr<Node> make(Node::Op op, std::unique_ptr<Node> a = nullptr,
                               std::unique_ptr<Node> b = nullptr) {
        auto n = std::make_unique<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    std::unique_ptr<Node> expr() {
        auto n = term();
        while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
            bool plus = cur().kind == Token::Plus;
            advance();
            n = make(plus ? Node::Add : Node::Sub, std::move(n), term());
        }
        return n;
    }

    std::unique_ptr<Node> term() {
        auto n = factor();
        while (cur().kind == Token::Star || cur().kind == Token::Slash) {
            bool mul = cur().kind == Token::Star;
            advance();
            n = make(mul ? Node::Mul : Node::Div, std::move(n), factor());
        }
        return n;
    }

    std::unique_ptr<Node> factor() {
        if (cur().kind == Token::Minus) {
            advance();
            return make(Node::Neg, factor());
        }
        return power();
    }

    std::unique_ptr<Node> power() {
        auto n = atom();
        if (cur().kind == Token::Caret) {
            advance();
            bool neg = false;
            if (cur().kind == Token::Minus) { neg = true; advance(); }
            if (cur().kind != Token::Num) throw ParseError("expected integer exponent", cur().col);
            long e = std::stol(cur().text);
            advance();
            auto p = make(Node::Pow, std::move(n));
            p->exponent = neg ? -e : e;
            return p;
        }
        return n;
    }

    Rational rational_literal() {
        bool neg = false;
        if (cur().kind == Token::Minus) { neg = true; advance(); }
        if (cur().kind != Token::Num) throw ParseError("expected a rational number", cur().col);
        mpz_class num(cur().text);
        advance();
        mpz_class den(1);
        if (cur().kind == Token::Slash) {
            advance();
            if (cur().kind != Token::Num) throw ParseError("expected a denominator", cur().col);
            den = mpz_class(cur().text);
            advance();
        }
        if (neg) num = -num;
        return Rational(num, den);
    }

    std::vector<Rational> rational_list(Token::Kind stop) {
        std::vector<Rational> out;
        if (cur().kind == stop) return out;
        out.push_back(rational_literal());
        while (cur().kind == Token::Comma) {
            advance();
            out.push_back(rational_literal());
        }
        return out;
    }

    std::unique_ptr<Node> atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Token::Num: {
                auto n = make(Node::NumLit);
                n->text = t.text;
                n->col = t.col;
                advance();
                return n;
            }
            case Token::Ident: {
                auto n = make(Node::Symbol);
                n->text = t.text;
                n->col = t.col;
                if (!deriv_of(t.text) && !var_of(t.text))
                    throw ParseError("unknown identifier '" + t.text + "'", t.col);
                advance();
                return n;
            }
            case Token::HyperTag: {
                long p = t.p, q = t.q;
                size_t col = t.col;
                advance();
                expect(Token::LBracket, "expected '[' after hypergeometric tag");
                std::vector<Rational> alphas = rational_list(Token::Semi);
                expect(Token::Semi, "expected ';' between parameter lists");
                std::vector<Rational> betas = rational_list(Token::RBracket);
                expect(Token::RBracket, "expected ']' after parameters");
                if (static_cast<long>(alphas.size()) != p ||
                    static_cast<long>(betas.size()) != q)
                    throw ParseError("parameter count does not match the pFq tag", col);
                auto n = make(Node::Hyper);
                n->spec = HypergeomSpec(alphas, betas);
                n->col = col;
                return n;
            }
            case Token::LParen: {
                advance();
                auto n = expr();
                expect(Token::RParen, "expected ')'");
                return n;
            }
            default:
                throw ParseError("expected a value", t.col);
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

} // namespace parse_detail

// ---------------------------------------------------------------------------
// Evaluation.  Values are rational functions, operators, truncated series,
// or bare hypergeometric specs; combining promotes as needed.

enum class HyperLift { ToOperator, ToSeries };

using ExprValue = std::variant<RationalFunction, OreOp<RationalFunction>, TruncSeries,
                               HypergeomSpec>;

struct EvalContext {
    HyperLift lift = HyperLift::ToOperator;
    long series_order = 200;
    // Derivation inferred from the expression's symbols; multiplication
    // operators with no derivation symbol use (Euler, x).
    DerivKind dk{Deriv::Euler, Var::x};
};

namespace parse_detail {

inline OreOp<RationalFunction> to_operator(const ExprValue& v, const EvalContext& ctx) {
    if (std::holds_alternative<OreOp<RationalFunction>>(v))
        return std::get<OreOp<RationalFunction>>(v);
    if (std::holds_alternative<RationalFunction>(v))
        return OreOp<RationalFunction>::multiplication(ctx.dk, std::get<RationalFunction>(v));
    if (std::holds_alternative<HypergeomSpec>(v)) {
        if (ctx.dk != DerivKind{Deriv::Euler, Var::x})
            throw Error("hypergeometric operators live in (x, delta) form");
        return hypergeom_operator(std::get<HypergeomSpec>(v));
    }
    throw Error("cannot use a series where an operator is expected");
}

inline TruncSeries to_series(const ExprValue& v, const EvalContext& ctx) {
    if (std::holds_alternative<TruncSeries>(v)) return std::get<TruncSeries>(v);
    if (std::holds_alternative<RationalFunction>(v))
        return TruncSeries::constant(Rational(1), ctx.series_order)
            .mul_ratfunc(std::get<RationalFunction>(v));
    if (std::holds_alternative<HypergeomSpec>(v))
        return hypergeom_series(std::get<HypergeomSpec>(v), ctx.series_order);
    throw Error("cannot use an operator where a series is expected");
}

inline ExprValue lift_pair(const ExprValue& a, const ExprValue& b, const EvalContext& ctx,
                           bool multiply) {
    bool op_side = std::holds_alternative<OreOp<RationalFunction>>(a) ||
                   std::holds_alternative<OreOp<RationalFunction>>(b);
    bool series_side = std::holds_alternative<TruncSeries>(a) ||
                       std::holds_alternative<TruncSeries>(b);
    bool hyper_side = std::holds_alternative<HypergeomSpec>(a) ||
                      std::holds_alternative<HypergeomSpec>(b);
    if (op_side && series_side) throw Error("cannot combine an operator with a series");
    if (hyper_side && !op_side && !series_side) {
        if (ctx.lift == HyperLift::ToOperator) { op_side = true; }
        else { series_side = true; }
    }
    if (op_side) {
        auto l = to_operator(a, ctx), r = to_operator(b, ctx);
        return multiply ? op_compose(l, r) : l + r;
    }
    if (series_side) {
        auto l = to_series(a, ctx), r = to_series(b, ctx);
        return multiply ? l * r : l + r;
    }
    auto l = std::get<RationalFunction>(a);
    auto r = std::get<RationalFunction>(b);
    return multiply ? l * r : l + r;
}

inline ExprValue eval(const Node& n, const EvalContext& ctx) {
    switch (n.op) {
        case Node::NumLit:
            return RationalFunction(Rational(mpz_class(n.text), mpz_class(1)));
        case Node::Symbol: {
            if (auto dk = deriv_of(n.text)) {
                if (*dk != ctx.dk) throw Error("mixed derivation symbols in one expression");
                return OreOp<RationalFunction>::derivation(ctx.dk);
            }
            return RationalFunction(Poly::variable(), Poly(Rational(1)));
        }
        case Node::Hyper:
            return n.spec;
        case Node::Neg: {
            ExprValue a = eval(*n.a, ctx);
            ExprValue minus1 = RationalFunction(Rational(-1));
            return lift_pair(minus1, a, ctx, true);
        }
        case Node::Add:
            return lift_pair(eval(*n.a, ctx), eval(*n.b, ctx), ctx, false);
        case Node::Sub: {
            ExprValue b = eval(*n.b, ctx);
            ExprValue minus1 = RationalFunction(Rational(-1));
            return lift_pair(eval(*n.a, ctx), lift_pair(minus1, b, ctx, true), ctx, false);
        }
        case Node::Mul:
            return lift_pair(eval(*n.a, ctx), eval(*n.b, ctx), ctx, true);
        case Node::Div: {
            ExprValue b = eval(*n.b, ctx);
            if (!std::holds_alternative<RationalFunction>(b))
                throw Error("divisor must be free of derivations and series");
            RationalFunction inv = RationalFunction(Rational(1)) / std::get<RationalFunction>(b);
            return lift_pair(ExprValue(inv), eval(*n.a, ctx), ctx, true);
        }
        case Node::Pow: {
            ExprValue a = eval(*n.a, ctx);
            if (std::holds_alternative<RationalFunction>(a))
                return std::get<RationalFunction>(a).pow(n.exponent);
            if (std::holds_alternative<TruncSeries>(a)) {
                if (n.exponent < 0) throw Error("negative power of a series");
                return std::get<TruncSeries>(a).pow(static_cast<unsigned long>(n.exponent));
            }
            if (n.exponent < 0) throw Error("negative power of an operator");
            OreOp<RationalFunction> op = to_operator(a, ctx);
            return op_pow(op, static_cast<unsigned>(n.exponent));
        }
    }
    throw Error("unreachable");
}

inline void scan_symbols(const Node& n, std::set<std::string>& derivs, std::set<Var>& vars) {
    if (n.op == Node::Symbol) {
        if (deriv_of(n.text)) derivs.insert(n.text);
        else if (auto v = var_of(n.text)) vars.insert(*v);
    }
    if (n.a) scan_symbols(*n.a, derivs, vars);
    if (n.b) scan_symbols(*n.b, derivs, vars);
}

} // namespace parse_detail

// Parses and evaluates an expression.  The derivation kind is inferred
// from the symbols used; coefficient variables must match it.
inline ExprValue parse_expression(const std::string& text, HyperLift lift,
                                  long series_order = 200) {
    parse_detail::Parser parser(text);
    auto ast = parser.parse();
    std::set<std::string> derivs;
    std::set<Var> vars;
    parse_detail::scan_symbols(*ast, derivs, vars);
    if (derivs.size() > 1) throw Error("mixed derivation symbols in one expression");
    EvalContext ctx;
    ctx.lift = lift;
    ctx.series_order = series_order;
    if (!derivs.empty()) {
        ctx.dk = *parse_detail::deriv_of(*derivs.begin());
    } else if (vars.size() == 1) {
        ctx.dk = DerivKind{Deriv::Euler, *vars.begin()};
    }
    for (Var v : vars)
        if (v != ctx.dk.var)
            throw Error("variable " + var_name(v) + " does not match the derivation in " +
                        var_name(ctx.dk.var));
    return parse_detail::eval(*ast, ctx);
}

inline OreOp<RationalFunction> parse_operator(const std::string& text) {
    ExprValue v = parse_expression(text, HyperLift::ToOperator);
    return parse_detail::to_operator(v, EvalContext{});
}

inline RationalFunction parse_ratfunc(const std::string& text) {
    ExprValue v = parse_expression(text, HyperLift::ToOperator);
    if (!std::holds_alternative<RationalFunction>(v))
        throw Error("expected a rational function");
    return std::get<RationalFunction>(v);
}

inline TruncSeries parse_series(const std::string& text, long order) {
    ExprValue v = parse_expression(text, HyperLift::ToSeries, order);
    return parse_detail::to_series(v, EvalContext{HyperLift::ToSeries, order});
}

} // namespace holorel
