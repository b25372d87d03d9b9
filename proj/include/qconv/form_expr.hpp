#pragma once

// A small expression language for modular-form definitions, as they appear
// in the shipped catalog file. Expressions evaluate to a QSeries at a given
// precision. Atoms:
//
//   integers and fractions        3, -7/480
//   eta[t^m t^m ...]              eta product (exponent defaults to 1)
//   E2(t), E4(t), E6(t), ...      Eisenstein series of q^t
//   D( expr )                     q d/dq
//   Name, Name(t)                 a previously defined catalog form, dilated
//
// combined with + - * / ^ and parentheses. '/' inverts the right operand as
// a series (its constant term must be nonzero); '^' takes an integer
// exponent.

#include <qconv/eisenstein.hpp>
#include <qconv/eta.hpp>
#include <qconv/qseries.hpp>

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qconv {

namespace detail {

struct Token {
    enum Kind { Int, Ident, Punct, End } kind = End;
    std::string text;
    long value = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    bool accept_punct(char c) {
        if (tok_.kind == Token::Punct && tok_.text[0] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c)) fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression parse error: " + msg + " near '" +
                                    std::string(src_.substr(pos_ < 20 ? 0 : pos_ - 20, 40)) + "'");
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ >= src_.size()) {
            tok_ = Token{Token::End, "", 0};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            tok_ = Token{Token::Int, std::string(src_.substr(start, pos_ - start)), 0};
            tok_.value = std::stol(tok_.text);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_ = Token{Token::Ident, std::string(src_.substr(start, pos_ - start)), 0};
            return;
        }
        static const std::string puncts = "+-*/^()[],";
        if (puncts.find(c) != std::string::npos) {
            ++pos_;
            tok_ = Token{Token::Punct, std::string(1, c), 0};
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    size_t pos_ = 0;
    Token tok_;
};

// "E4" -> 4, "E12" -> 12; nullopt for anything else
inline std::optional<int> eisenstein_weight(const std::string& ident) {
    if (ident.size() < 2 || ident[0] != 'E') return std::nullopt;
    for (size_t i = 1; i < ident.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return std::nullopt;
    return std::stoi(ident.substr(1));
}

}  // namespace detail

// Evaluates a form expression to a QSeries at fixed precision. Named forms
// are resolved through the supplied callback (undilated, at the same
// precision); the evaluator applies dilations itself.
class FormExprEval {
public:
    using Resolver = std::function<QSeries(const std::string& name, int prec)>;

    FormExprEval(std::string_view src, int prec, Resolver resolver)
        : lex_(src), prec_(prec), resolve_(std::move(resolver)) {}

    QSeries evaluate() {
        QSeries r = parse_expr();
        if (lex_.peek().kind != detail::Token::End) lex_.fail("trailing input");
        return r;
    }

private:
    QSeries parse_expr() {
        QSeries acc = parse_term();
        for (;;) {
            if (lex_.accept_punct('+'))
                acc = add(acc, parse_term());
            else if (lex_.accept_punct('-'))
                acc = sub(acc, parse_term());
            else
                return acc;
        }
    }

    QSeries parse_term() {
        QSeries acc = parse_factor();
        for (;;) {
            if (lex_.accept_punct('*'))
                acc = mul(acc, parse_factor());
            else if (lex_.accept_punct('/'))
                acc = mul(acc, inverse(parse_factor()));
            else
                return acc;
        }
    }

    QSeries parse_factor() {
        QSeries base = parse_unary();
        if (lex_.accept_punct('^')) {
            bool neg = lex_.accept_punct('-');
            if (lex_.peek().kind != detail::Token::Int) lex_.fail("integer exponent expected");
            long e = lex_.next().value;
            base = power(base, neg ? -e : e);
        }
        return base;
    }

    QSeries parse_unary() {
        if (lex_.accept_punct('-')) return scale(Rational(-1), parse_unary());
        return parse_primary();
    }

    QSeries parse_primary() {
        using detail::Token;
        const Token& t = lex_.peek();
        if (t.kind == Token::Int) {
            long v = lex_.next().value;
            return QSeries::constant(Rational(v), prec_);
        }
        if (t.kind == Token::Punct && t.text[0] == '(') {
            lex_.next();
            QSeries inner = parse_expr();
            lex_.expect_punct(')');
            return inner;
        }
        if (t.kind == Token::Ident) {
            std::string name = lex_.next().text;
            if (name == "eta") return parse_eta();
            if (name == "D") {
                lex_.expect_punct('(');
                QSeries inner = parse_expr();
                lex_.expect_punct(')');
                return qderiv(inner);
            }
            if (auto k = detail::eisenstein_weight(name)) {
                int dil = parse_optional_dilation();
                QSeries e = (*k == 2) ? eisenstein2(prec_) : eisenstein(*k, prec_);
                return dilate(e, dil);
            }
            int dil = parse_optional_dilation();
            if (!resolve_) lex_.fail("no resolver for name '" + name + "'");
            return dilate(resolve_(name, prec_), dil);
        }
        lex_.fail("unexpected token");
    }

    int parse_optional_dilation() {
        if (!lex_.accept_punct('(')) return 1;
        if (lex_.peek().kind != detail::Token::Int) lex_.fail("dilation must be an integer");
        long t = lex_.next().value;
        lex_.expect_punct(')');
        if (t < 1) lex_.fail("dilation must be >= 1");
        return static_cast<int>(t);
    }

    QSeries parse_eta() {
        lex_.expect_punct('[');
        std::vector<EtaFactor> factors;
        while (lex_.peek().kind == detail::Token::Int) {
            EtaFactor f;
            f.dilation = static_cast<int>(lex_.next().value);
            f.exponent = 1;
            if (lex_.accept_punct('^')) {
                bool neg = lex_.accept_punct('-');
                if (lex_.peek().kind != detail::Token::Int) lex_.fail("eta exponent expected");
                f.exponent = static_cast<int>(lex_.next().value);
                if (neg) f.exponent = -f.exponent;
            }
            factors.push_back(f);
        }
        lex_.expect_punct(']');
        if (factors.empty()) lex_.fail("empty eta product");
        return eta_expand(EtaProduct(std::move(factors)), prec_);
    }

    detail::Lexer lex_;
    int prec_;
    Resolver resolve_;
};

inline QSeries eval_form_expr(std::string_view src, int prec, FormExprEval::Resolver resolver = nullptr) {
    return FormExprEval(src, prec, std::move(resolver)).evaluate();
}

}  // namespace qconv
