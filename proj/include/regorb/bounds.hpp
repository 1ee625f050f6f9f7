#pragma once

#include "regorb/bigint.hpp"
#include "regorb/errors.hpp"
#include "regorb/integers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace regorb {

enum class Family {
    Linear,
    Unitary,
    Symplectic,
    OrthogonalPlus,
    OrthogonalMinus,
    OrthogonalOdd,
    Triality,   // 3D4
    E6,
    E7,
    E8,
    F4,
    G2,
    Suzuki,     // 2B2
    Ree,        // 2G2
    TwistedE6,  // 2E6
    ReeF4,      // 2F4
};

inline const char* to_string(Family f) {
    switch (f) {
    case Family::Linear: return "Linear";
    case Family::Unitary: return "Unitary";
    case Family::Symplectic: return "Symplectic";
    case Family::OrthogonalPlus: return "OrthogonalPlus";
    case Family::OrthogonalMinus: return "OrthogonalMinus";
    case Family::OrthogonalOdd: return "OrthogonalOdd";
    case Family::Triality: return "3D4";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    case Family::Suzuki: return "2B2";
    case Family::Ree: return "2G2";
    case Family::TwistedE6: return "2E6";
    case Family::ReeF4: return "2F4";
    }
    return "?";
}

/**
 * @brief A simple group of Lie type: family, natural module dimension n
 * (2m for symplectic and even orthogonal, 2m+1 for odd orthogonal; unused
 * for exceptional families) and defining field size q.
 */
struct GroupFamily {
    Family family = Family::Linear;
    std::uint64_t n = 0;
    std::uint64_t q = 0;

    bool classical() const { return family <= Family::OrthogonalOdd; }
};

enum class ElementKind {
    inner_involution,
    transvection,
    reflection,
    field_auto_inv,
    graph_auto_inv,
    graph_field_inv,
    diagonal_inv,
    odd_semisimple,
    unipotent,
    generic,
};

namespace detail {

inline std::uint64_t char_of(std::uint64_t q) {
    if (q < 2) throw Error(ErrorKind::OutOfRange, "field size must be at least 2");
    auto f = factorize(q);
    if (f.size() != 1) throw Error(ErrorKind::OutOfRange, std::to_string(q) + " is not a prime power");
    return f[0].first;
}

inline bool is_square(std::uint64_t q) {
    auto f = factorize(q);
    return f.size() == 1 && f[0].second % 2 == 0;
}

inline std::uint64_t isqrt(std::uint64_t q) {
    std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(q)));
    while (s * s > q) --s;
    while ((s + 1) * (s + 1) <= q) ++s;
    return s;
}

inline std::uint64_t odd_power_of(std::uint64_t q, std::uint64_t p) {
    auto f = factorize(q);
    if (f.size() != 1 || f[0].first != p || f[0].second % 2 == 0)
        throw Error(ErrorKind::OutOfRange, "q must be an odd power of " + std::to_string(p));
    return f[0].second;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::OutOfRange, what);
}

/// Exact quotient; the formulas below always divide evenly.
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (a % b != 0) throw std::logic_error("inexact division in a degree formula");
    return a / b;
}

struct ExceptionRow {
    Family family;
    std::uint64_t n;
    std::uint64_t q;
    std::uint64_t value;
};

// Exception rows of the minimal-degree table, one per line.
// n is the natural-module dimension (0 for exceptional families).
inline constexpr ExceptionRow kD1Exceptions[] = {
    {Family::Linear, 2, 4, 2},
    {Family::Linear, 2, 9, 3},
    {Family::Linear, 3, 2, 2},
    {Family::Linear, 3, 4, 4},
    {Family::Linear, 4, 2, 6},
    {Family::Linear, 4, 3, 26},
    {Family::Unitary, 4, 2, 4},
    {Family::Unitary, 4, 3, 6},
    {Family::Symplectic, 4, 2, 4},
    {Family::OrthogonalPlus, 8, 2, 8},
    {Family::OrthogonalOdd, 7, 3, 27},
    {Family::F4, 0, 2, 52},
    {Family::G2, 0, 3, 14},
    {Family::G2, 0, 4, 12},
    {Family::Suzuki, 0, 8, 8},
    {Family::TwistedE6, 0, 2, 1938},
    {Family::ReeF4, 0, 2, 26},
};

struct RootDatum {
    std::uint64_t dim;
    std::uint64_t roots;
};

/// (dim of the algebraic group, number of roots) for A_l, B_l, C_l, D_l and the exceptional types.
inline RootDatum root_datum(const GroupFamily& f) {
    const std::uint64_t n = f.n;
    switch (f.family) {
    case Family::Linear:
    case Family::Unitary: {
        std::uint64_t l = n - 1;
        return {l * l + 2 * l, l * (l + 1)};
    }
    case Family::Symplectic:
    case Family::OrthogonalOdd: {
        std::uint64_t l = n / 2;
        return {2 * l * l + l, 2 * l * l};
    }
    case Family::OrthogonalPlus:
    case Family::OrthogonalMinus: {
        std::uint64_t l = n / 2;
        return {2 * l * l - l, 2 * l * (l - 1)};
    }
    case Family::Triality: return {28, 24};
    case Family::G2: return {14, 12};
    case Family::F4: return {52, 48};
    case Family::E6:
    case Family::TwistedE6: return {78, 72};
    case Family::E7: return {133, 126};
    case Family::E8: return {248, 240};
    default: throw Error(ErrorKind::ExcludedType, std::string("no element count for type ") + to_string(f.family));
    }
}

inline void check_parameters(const GroupFamily& f) {
    const std::uint64_t p = char_of(f.q);
    const std::uint64_t n = f.n;
    switch (f.family) {
    case Family::Linear: require(n >= 2, "linear groups need n >= 2"); break;
    case Family::Unitary: require(n >= 3, "unitary groups need n >= 3"); break;
    case Family::Symplectic: require(n >= 4 && n % 2 == 0, "symplectic groups need n = 2m >= 4"); break;
    case Family::OrthogonalPlus:
    case Family::OrthogonalMinus: require(n >= 8 && n % 2 == 0, "even orthogonal groups need n = 2m >= 8"); break;
    case Family::OrthogonalOdd:
        require(n >= 7 && n % 2 == 1 && p % 2 == 1, "odd orthogonal groups need n = 2m+1 >= 7 and q odd");
        break;
    case Family::Suzuki:
        require(p == 2 && odd_power_of(f.q, 2) >= 3, "2B2(q) needs q = 2^(2a+1) >= 8");
        break;
    case Family::Ree: require(p == 3 && odd_power_of(f.q, 3) >= 1, "2G2(q) needs q = 3^(2a+1)"); break;
    case Family::ReeF4: require(p == 2 && odd_power_of(f.q, 2) >= 1, "2F4(q) needs q = 2^(2a+1)"); break;
    default: break;
    }
}

} // namespace detail

/// epsilon_{n,q,r} = 1 when the characteristic r0 of r divides (q^n - 1)/(q - 1), else 0.
inline int epsilon_nqr(std::uint64_t n, std::uint64_t q, std::uint64_t r) {
    const std::uint64_t r0 = detail::char_of(r);
    BigInt s = detail::exact_div(ipow(q, n) - 1, BigInt(q - 1));
    return s % r0 == 0 ? 1 : 0;
}

/**
 * @brief Lower bound d1 on the degree of a nontrivial projective
 * cross-characteristic representation, with every exception row applied.
 */
inline BigInt d1_lookup(const GroupFamily& f, std::uint64_t r) {
    detail::check_parameters(f);
    if (detail::char_of(f.q) == detail::char_of(r))
        throw Error(ErrorKind::DefiningCharacteristic, "module is in the defining characteristic");
    const std::uint64_t key_n = f.classical() ? f.n : 0;
    for (const auto& row : detail::kD1Exceptions)
        if (row.family == f.family && row.n == key_n && row.q == f.q) return BigInt(row.value);

    const BigInt q(f.q);
    const std::uint64_t n = f.n;
    const std::uint64_t m = n / 2;
    auto P = [&](std::uint64_t e) { return ipow(q, e); };
    using detail::exact_div;
    switch (f.family) {
    case Family::Linear:
        if (n == 2) return exact_div(q - 1, BigInt(std::gcd<std::uint64_t>(2, f.q - 1)));
        return exact_div(P(n) - q, q - 1) - 1;
    case Family::Unitary: return (P(n) - 1) / (q + 1);
    case Family::Symplectic:
        if (f.q % 2 == 1) return exact_div(P(m) - 1, BigInt(2));
        return exact_div((P(m) - 1) * (P(m) - q), 2 * (q + 1));
    case Family::OrthogonalPlus:
        if (f.q > 3) return exact_div((P(m) - 1) * (P(m - 1) + q), q * q - 1) - 2;
        return exact_div((P(m) - 1) * (P(m - 1) - 1), q * q - 1);
    case Family::OrthogonalMinus: return exact_div((P(m) + 1) * (P(m - 1) - q), q * q - 1) - 1;
    case Family::OrthogonalOdd:
        if (f.q > 3) return exact_div(P(2 * m) - 1, q * q - 1) - 2;
        return exact_div((P(m) - 1) * (P(m) - q), q * q - 1);
    case Family::Triality: return P(5) - P(3) + q - 1;
    case Family::E6: return (P(5) + q) * (P(6) + P(3) + 1) - 1;
    case Family::E7: return P(17) - P(15);
    case Family::E8: return P(29) - P(27);
    case Family::F4:
        if (f.q % 2 == 1) return P(8) + P(4) - 2;
        return exact_div((P(3) - 1) * (P(8) - P(7)), BigInt(2));
    case Family::G2:
        if (f.q % 3 == 0) return P(4) + P(2);
        if (f.q % 3 == 1) return P(3);
        return P(3) - 1;
    case Family::Suzuki: return (q - 1) * detail::isqrt(f.q / 2);
    case Family::Ree: return q * (q - 1);
    case Family::TwistedE6: return (P(5) + q) * (P(6) - P(3) + 1) - 2;
    case Family::ReeF4: return (P(5) - P(4)) * detail::isqrt(f.q / 2);
    }
    throw Error(ErrorKind::OutOfRange, "unknown family");
}

/**
 * @brief Degree below which every irreducible cross-characteristic module
 * is a Weil module (unitary n >= 4, symplectic q odd) or has the stated
 * small dimension (linear n >= 5).
 */
inline BigInt d2_threshold(const GroupFamily& f, std::uint64_t r) {
    detail::check_parameters(f);
    if (detail::char_of(f.q) == detail::char_of(r))
        throw Error(ErrorKind::DefiningCharacteristic, "module is in the defining characteristic");
    const BigInt q(f.q);
    const std::uint64_t n = f.n;
    auto P = [&](std::uint64_t e) { return ipow(q, e); };
    switch (f.family) {
    case Family::Unitary:
        if (n < 4) throw Error(ErrorKind::OutOfRange, "unitary threshold needs n >= 4");
        if (n == 4 && (f.q == 2 || f.q == 3))
            throw Error(ErrorKind::ExcludedPair, "(n,q) = (4," + std::to_string(f.q) + ") is excluded");
        if (n == 4)
            return detail::exact_div((q * q + 1) * (q * q - q + 1), BigInt(std::gcd<std::uint64_t>(2, f.q - 1))) - 1;
        return (P(n - 2) - 1) * (q - 1) * ((P(n - 2) - 1) / (q + 1));
    case Family::Symplectic: {
        if (f.q % 2 == 0) throw Error(ErrorKind::OutOfRange, "symplectic threshold needs q odd");
        const std::uint64_t m = n / 2;
        if (m == 2 && f.q == 3) throw Error(ErrorKind::ExcludedPair, "(m,q) = (2,3) is excluded");
        return detail::exact_div((P(m) - 1) * (P(m) - q), 2 * (q + 1));
    }
    case Family::Linear: {
        if (n < 5) throw Error(ErrorKind::OutOfRange, "linear threshold needs n >= 5");
        if (n == 6 && f.q == 2) return BigInt(217);
        if (n == 6 && f.q == 3) return BigInt(6292);
        BigInt inner = detail::exact_div(P(n - 2) - q, q - 1) - epsilon_nqr(n - 2, f.q, r);
        return (P(n - 1) - 1) * inner;
    }
    default: throw Error(ErrorKind::OutOfRange, std::string("no second-degree threshold for ") + to_string(f.family));
    }
}

struct AlphaBound {
    std::uint64_t value = 0;
    bool flagged = false;  ///< set when the source gives no bound and the generic one is returned
    std::string note;
};

namespace detail {

inline std::uint64_t untwisted_rank(Family f) {
    switch (f) {
    case Family::Triality: return 4;
    case Family::E6:
    case Family::TwistedE6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::G2: return 2;
    case Family::ReeF4: return 4;
    default: return 0;
    }
}

inline AlphaBound alpha_l2(std::uint64_t q, ElementKind k) {
    const bool sq = is_square(q);
    switch (k) {
    case ElementKind::odd_semisimple: return {2, false, {}};
    case ElementKind::unipotent:
    case ElementKind::transvection:
        if (q % 2 == 0) return {3, false, {}};
        return {q == 9 ? 3u : 2u, false, {}};
    case ElementKind::inner_involution: return {3, false, {}};
    case ElementKind::diagonal_inv:
        require(q % 2 == 1, "diagonal involutions need q odd");
        return {q == 5 ? 4u : 3u, false, {}};
    case ElementKind::field_auto_inv:
        require(sq, "field automorphisms of order 2 need q square");
        return {q == 9 ? 5u : 4u, false, {}};
    case ElementKind::generic: {
        std::uint64_t v = 3;
        if (sq) v = std::max<std::uint64_t>(v, q == 9 ? 5 : 4);
        if (q == 5) v = std::max<std::uint64_t>(v, 4);
        return {v, false, {}};
    }
    default: throw Error(ErrorKind::OutOfRange, "element kind does not occur in Aut(L2(q))");
    }
}

/// The n >= 3 classical bound (alpha <= n with its listed exceptions).
inline AlphaBound alpha_classical(const GroupFamily& f, ElementKind k) {
    const std::uint64_t n = f.n;
    const std::uint64_t q = f.q;
    AlphaBound b{n, false, {}};
    const bool lin_or_uni = f.family == Family::Linear || f.family == Family::Unitary;
    if (lin_or_uni && n == 4 && q == 2) {
        b.flagged = true;
        b.note = std::string(f.family == Family::Linear ? "L4(2)" : "U4(2)") + ": no stated bound, generic n returned";
        return b;
    }
    if (f.family == Family::Linear && n == 3 && (k == ElementKind::graph_field_inv || k == ElementKind::generic) &&
        is_square(q))
        b.value = std::max<std::uint64_t>(b.value, 4);
    if (lin_or_uni && n == 4 && q >= 3 && (k == ElementKind::graph_auto_inv || k == ElementKind::generic))
        b.value = std::max<std::uint64_t>(b.value, 6);
    if (f.family == Family::Unitary && n == 3 && q == 3 && (k == ElementKind::inner_involution || k == ElementKind::generic))
        b.value = std::max<std::uint64_t>(b.value, 4);
    return b;
}

} // namespace detail

/**
 * @brief Published upper bound on alpha(x), the number of conjugates of x
 * needed to generate <G0, x>, for an element of the given kind in Aut(G0).
 */
inline AlphaBound alpha_bound(const GroupFamily& f, ElementKind k) {
    detail::check_parameters(f);
    const std::uint64_t n = f.n;
    const std::uint64_t q = f.q;
    const bool even = q % 2 == 0;
    switch (f.family) {
    case Family::Linear:
        if (n == 2) return detail::alpha_l2(q, k);
        detail::require(k != ElementKind::reflection, "reflections do not occur here");
        return detail::alpha_classical(f, k);
    case Family::Unitary:
        detail::require(k != ElementKind::reflection, "reflections do not occur here");
        return detail::alpha_classical(f, k);
    case Family::Symplectic: {
        const std::uint64_t m = n / 2;
        if (k == ElementKind::transvection) return {even ? 2 * m + 1 : 2 * m, false, {}};
        detail::require(k != ElementKind::reflection, "reflections do not occur here");
        const bool involution = k == ElementKind::inner_involution || k == ElementKind::diagonal_inv ||
                                k == ElementKind::field_auto_inv || k == ElementKind::graph_auto_inv ||
                                k == ElementKind::graph_field_inv;
        if (m == 2 && q == 3 && (involution || k == ElementKind::generic)) return {6, false, {}};
        AlphaBound general = detail::alpha_classical(f, k);
        if (k == ElementKind::generic) {
            // transvections are included
            return {std::max<std::uint64_t>(even ? 2 * m + 1 : 2 * m, std::min(m + 3, general.value)), false, {}};
        }
        general.value = std::min(m + 3, general.value);
        return general;
    }
    case Family::OrthogonalPlus:
    case Family::OrthogonalMinus:
    case Family::OrthogonalOdd: {
        const std::uint64_t m = n / 2;
        if (k == ElementKind::reflection) {
            detail::require(!even, "reflections need q odd");
            return {n, false, {}};
        }
        if (k == ElementKind::transvection) {
            detail::require(even, "orthogonal transvections need q even");
            return {n, false, {}};
        }
        if (k == ElementKind::generic) return {n, false, {}};
        return {std::min(m + 3, n), false, {}};
    }
    case Family::F4: return {8, false, {}};
    case Family::Suzuki:
    case Family::Ree: return {3, false, {}};
    default: return {detail::untwisted_rank(f.family) + 3, false, {}};
    }
}

/// The exponent N_p = dim - |Phi|/p of the element-count bound, as an exact rational.
inline Rational count_exponent(const GroupFamily& f, std::uint64_t prime) {
    if (prime != 2 && prime != 3) throw Error(ErrorKind::InvalidArgument, "prime must be 2 or 3");
    detail::check_parameters(f);
    auto rd = detail::root_datum(f);
    return Rational(rd.dim) - Rational(rd.roots, prime);
}

/**
 * @brief Upper bound 2(q^N + q^(N-1)) on the number of elements of order
 * prime in Aut(G0). A non-integral N is rounded up.
 */
inline BigInt count_small_order(const GroupFamily& f, std::uint64_t prime) {
    Rational N = count_exponent(f, prime);
    const std::uint64_t e = static_cast<std::uint64_t>(ceil_of(N));
    return 2 * (ipow(f.q, e) + ipow(f.q, e - 1));
}

enum class GraphCase { linear, unitary, graph_field };

/// Bounds on the number of graph (or graph-field) automorphisms of order 2.
inline BigInt graph_count(std::uint64_t n, std::uint64_t q, GraphCase c) {
    detail::require(n >= 3, "graph automorphism counts need n >= 3");
    detail::char_of(q);
    switch (c) {
    case GraphCase::linear: return 2 * ipow(q, (n * n + n) / 2 - 1);
    case GraphCase::unitary: return 4 * ipow(q, (n * n + n) / 2 - 1);
    case GraphCase::graph_field:
        detail::require(detail::is_square(q), "graph-field automorphisms need q square");
        // q^{(n^2-1)/2} = sqrt(q)^{n^2-1}
        return 2 * ipow(detail::isqrt(q), n * n - 1);
    }
    throw Error(ErrorKind::OutOfRange, "unknown case");
}

/// Sum of per-composition-factor fixed-space caps.
inline std::uint64_t combine_compfactors(const std::vector<std::uint64_t>& caps) {
    return std::accumulate(caps.begin(), caps.end(), std::uint64_t{0});
}

/// Eigenspace cap on a tensor product V1 (x) V2 of dimensions d1, d2.
inline std::uint64_t combine_tensor(std::uint64_t d1, std::uint64_t d2, std::uint64_t e1_cap, std::uint64_t e2_cap) {
    if (e1_cap > d1 || e2_cap > d2) throw Error(ErrorKind::InvalidArgument, "cap exceeds dimension");
    return std::min(d2 * e1_cap, d1 * e2_cap);
}

/// A base of size c over GF(r^i) gives one of size c*i over GF(r).
inline std::uint64_t fieldext_bound(std::uint64_t c, std::uint64_t i) {
    if (i < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be positive");
    return c * i;
}

} // namespace regorb
