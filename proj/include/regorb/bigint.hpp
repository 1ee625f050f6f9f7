#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace regorb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, std::uint64_t e) {
    BigInt result = 1;
    BigInt b = base;
    while (e) {
        if (e & 1) result *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return result;
}

inline BigInt ipow(std::uint64_t base, std::uint64_t e) { return ipow(BigInt(base), e); }

/// Largest integer not exceeding x.
inline BigInt floor_of(const Rational& x) {
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

inline BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

} // namespace regorb
