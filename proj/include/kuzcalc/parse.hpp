#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/polynomial.hpp"

namespace kuzcalc {

// Grammar (documented in README):
//   expr    = [ sign ] term { ("+" | "-") term }
//   term    = factor { [ "*" ] factor }          (juxtaposition multiplies)
//   factor  = atom [ "^" nat ]
//   atom    = rational | variable | "(" expr ")"
//   rational= nat [ "/" nat ]
//   variable= "x" nat
namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, std::vector<int> weights)
        : text_(text), weights_(std::move(weights)) {}

    WeightedPolynomial parse() {
        skip_ws();
        WeightedPolynomial p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    WeightedPolynomial parse_expr() {
        int sign = 1;
        skip_ws();
        if (peek() == '+' || peek() == '-') {
            if (get() == '-') sign = -1;
        }
        WeightedPolynomial p = Rat(sign) * parse_term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            WeightedPolynomial t = parse_term();
            if (c == '+')
                p += t;
            else
                p -= t;
        }
        return p;
    }

    WeightedPolynomial parse_term() {
        WeightedPolynomial p = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                get();
                p = p * parse_factor();
            } else if (c == '(' || c == 'x' || std::isdigit(static_cast<unsigned char>(c))) {
                p = p * parse_factor();  // implicit multiplication
            } else {
                break;
            }
        }
        return p;
    }

    WeightedPolynomial parse_factor() {
        WeightedPolynomial base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            std::size_t at = pos_;
            long e = parse_nat("exponent");
            if (e < 0) fail("negative exponent", at);
            WeightedPolynomial r = WeightedPolynomial::constant(weights_, Rat(1));
            for (long k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }

    WeightedPolynomial parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            WeightedPolynomial p = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            get();
            return p;
        }
        if (c == 'x') {
            std::size_t at = pos_;
            get();
            long j = parse_nat("variable index");
            if (j >= static_cast<long>(weights_.size()))
                fail("variable x" + std::to_string(j) + " out of range (have x0..x" +
                         std::to_string(weights_.size() - 1) + ")",
                     at);
            return WeightedPolynomial::variable(weights_, static_cast<std::size_t>(j));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int n = parse_int();
            skip_ws();
            if (peek() == '/') {
                // only a denominator that is a plain integer literal; "1/2x0" reads as (1/2)*x0
                std::size_t save = pos_;
                get();
                skip_ws();
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    Int d = parse_int();
                    if (d == 0) fail("zero denominator", save);
                    return WeightedPolynomial::constant(weights_, Rat(n, d));
                }
                pos_ = save;
            }
            return WeightedPolynomial::constant(weights_, Rat(n));
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
        return WeightedPolynomial(weights_);  // unreachable
    }

    Int parse_int() {
        std::size_t at = pos_;
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        if (digits.empty()) fail("expected number", at);
        return Int(digits);
    }

    long parse_nat(const char* what) {
        std::size_t at = pos_;
        Int n = parse_int();
        if (n > 1000000) fail(std::string(what) + " too large", at);
        return static_cast<long>(n);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw parse_error("parse error at position " + std::to_string(at) + ": " + msg, at);
    }

    const std::string& text_;
    std::vector<int> weights_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a polynomial in x0..x{n-1} and verify it is homogeneous of weighted
/// degree d. Throws parse_error on malformed text, math_error on an
/// inhomogeneous monomial (named in the message).
inline WeightedPolynomial parse_poly(const std::string& text, std::size_t n_vars,
                                     const std::vector<int>& weights, long d) {
    if (weights.size() != n_vars) throw math_error("parse_poly: weights size != variable count");
    detail::PolyParser parser(text, weights);
    WeightedPolynomial p = parser.parse();
    if (auto bad = p.inhomogeneous_witness(d)) {
        throw math_error("polynomial is not homogeneous of weighted degree " + std::to_string(d) +
                         ": monomial " + bad->str() + " has degree " +
                         std::to_string(bad->weighted_degree(weights)));
    }
    return p;
}

}  // namespace kuzcalc
