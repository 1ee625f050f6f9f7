#pragma once

#include "regorb/bigint.hpp"
#include "regorb/errors.hpp"

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace regorb {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2u, 3u, 5u, 7u}) {
        if (n % d == 0) return n == d;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

inline std::vector<std::uint64_t> prime_divisors(const BigInt& n) {
    // trial division; the orders handled here have small prime factors
    std::vector<std::uint64_t> out;
    BigInt m = n;
    for (std::uint64_t d = 2; BigInt(d) * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(static_cast<std::uint64_t>(m));
    return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t phi = m;
    for (auto& [p, e] : factorize(m)) phi = phi / p * (p - 1);
    return phi;
}

/// Least t >= 1 with a^t = 1 (mod m).
inline std::uint64_t mult_order_mod(std::int64_t a, std::uint64_t m) {
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    std::int64_t r = a % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    std::uint64_t x = static_cast<std::uint64_t>(r);
    if (m == 1) return 1;
    if (std::gcd(x, m) != 1) throw Error(ErrorKind::NotInvertible, "element not invertible modulo " + std::to_string(m));
    std::uint64_t ord = euler_phi(m);
    for (auto& [p, e] : factorize(ord)) {
        while (ord % p == 0 && powmod(x, ord / p, m) == 1) ord /= p;
    }
    return ord;
}

/// Splits n = p_part * p_prime_part with p_part a power of p.
inline std::pair<std::uint64_t, std::uint64_t> p_part_split(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
    std::uint64_t pp = 1;
    while (n % p == 0) {
        n /= p;
        pp *= p;
    }
    return {pp, n};
}

inline std::pair<BigInt, BigInt> p_part_split(const BigInt& n, std::uint64_t p) {
    if (n <= 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
    BigInt m = n;
    BigInt pp = 1;
    while (m % p == 0) {
        m /= p;
        pp *= p;
    }
    return {pp, m};
}

/// Least primitive root modulo the prime p.
inline std::uint64_t least_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    auto divs = prime_divisors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto l : divs) {
            if (powmod(g, (p - 1) / l, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    return 1;
}

} // namespace regorb
