#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "kuzcalc/errors.hpp"

namespace kuzcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw math_error("rat_pow: zero base with negative exponent");
        return Rat(int_pow(den(base), static_cast<unsigned long>(-e)),
                   int_pow(num(base), static_cast<unsigned long>(-e)));
    }
    return Rat(int_pow(num(base), static_cast<unsigned long>(e)),
               int_pow(den(base), static_cast<unsigned long>(e)));
}

/// Exact integer n-th root: largest r with r^n <= a (a >= 0, n >= 1).
inline Int int_nth_root_floor(const Int& a, unsigned n) {
    if (a < 0) throw math_error("int_nth_root_floor: negative radicand");
    if (a == 0 || a == 1 || n == 1) return a;
    Int lo = 0, hi = 1;
    while (int_pow(hi, n) <= a) hi <<= 1;
    // invariant: lo^n <= a < hi^n
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (int_pow(mid, n) <= a)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// Exact rational n-th root if one exists in Q, otherwise nullopt.
/// For even n the radicand must be nonnegative and the nonnegative root is returned.
inline std::optional<Rat> rat_nth_root(const Rat& a, unsigned n) {
    if (n == 0) throw math_error("rat_nth_root: zeroth root");
    if (a == 0) return Rat(0);
    bool neg = a < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    Rat abs_a = neg ? Rat(-a) : a;
    Int rn = int_nth_root_floor(num(abs_a), n);
    Int rd = int_nth_root_floor(den(abs_a), n);
    if (int_pow(rn, n) != num(abs_a) || int_pow(rd, n) != den(abs_a)) return std::nullopt;
    Rat r(rn, rd);
    return neg ? Rat(-r) : r;
}

/// Canonical text form "p" or "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw math_error("rational with zero denominator: " + s);
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw math_error("malformed rational: " + s);
    }
}

}  // namespace kuzcalc
