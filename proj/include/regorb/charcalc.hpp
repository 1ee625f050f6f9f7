#pragma once

#include "regorb/bigint.hpp"
#include "regorb/errors.hpp"
#include "regorb/integers.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace regorb {

/// An integer Brauer character value c = rho(x) for x of prime order p on a d-dimensional module.
struct BrauerDatum {
    std::int64_t d = 0;
    std::int64_t p = 0;
    std::int64_t c = 0;
};

/// Eigenvalue multiplicities: of 1, and of each primitive p-th root of unity.
struct BrauerEigen {
    std::int64_t mult_one = 0;
    std::int64_t mult_primitive = 0;

    std::int64_t emax() const { return std::max(mult_one, mult_primitive); }
    /// mult_one - mult_primitive, the character value recovered from the multiplicities.
    std::int64_t character() const { return mult_one - mult_primitive; }
};

/**
 * @brief Eigenvalue multiset from a rational integer character value.
 *
 * c >= 0 gives (c + (d-c)/p, (d-c)/p); c = -c' < 0 gives ((d+c')/p - c', (d+c')/p).
 */
inline BrauerEigen brauer_eigenvalues(const BrauerDatum& b) {
    if (b.d < 0 || b.p < 2 || !is_prime(static_cast<std::uint64_t>(b.p)))
        throw Error(ErrorKind::InvalidArgument, "need d >= 0 and a prime order");
    if (b.c > b.d || -b.c > b.d) throw Error(ErrorKind::DivisibilityViolation, "|c| exceeds d");
    BrauerEigen out;
    if (b.c >= 0) {
        if ((b.d - b.c) % b.p != 0)
            throw Error(ErrorKind::DivisibilityViolation,
                        std::to_string(b.p) + " does not divide d - c = " + std::to_string(b.d - b.c));
        out.mult_primitive = (b.d - b.c) / b.p;
        out.mult_one = b.c + out.mult_primitive;
    } else {
        std::int64_t cp = -b.c;
        if ((b.d + cp) % b.p != 0)
            throw Error(ErrorKind::DivisibilityViolation,
                        std::to_string(b.p) + " does not divide d + c' = " + std::to_string(b.d + cp));
        out.mult_primitive = (b.d + cp) / b.p;
        out.mult_one = out.mult_primitive - cp;
        if (out.mult_one < 0) throw Error(ErrorKind::DivisibilityViolation, "negative multiplicity of 1");
    }
    return out;
}

enum class WeilKind { Symplectic, Unitary };

/**
 * @brief Parameters of a Weil representation: natural module dimension n
 * (2m for Sp_{2m}(q)), defining field size q and cross characteristic r0.
 */
struct WeilContext {
    WeilKind kind = WeilKind::Unitary;
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t r0 = 0;

    void validate() const {
        if (n == 0 || q < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and q >= 2");
        if (r0 && q % r0 == 0) throw Error(ErrorKind::DefiningCharacteristic, "r0 divides q");
        if (kind == WeilKind::Symplectic && (q % 2 == 0 || n % 2 != 0))
            throw Error(ErrorKind::InvalidArgument, "symplectic Weil modules need q odd and n even");
    }

    /// Degree of the full Weil representation: q^m for Sp_{2m}(q), q^n for SU_n(q).
    BigInt full_degree() const { return ipow(q, kind == WeilKind::Symplectic ? n / 2 : n); }
};

/// sqrt of an integer, kept symbolic when it is not a perfect square.
struct SqrtValue {
    BigInt radicand;
    std::optional<BigInt> root;

    std::string to_string() const { return root ? root->str() : "sqrt(" + radicand.str() + ")"; }
};

/// |chi_1(g) + chi_2(g)| = |C_W(g)|^{1/2} = q^{dim/2}.
inline SqrtValue weil_sp_abs_sum(const WeilContext& ctx, std::uint64_t dim_cw) {
    if (ctx.kind != WeilKind::Symplectic) throw Error(ErrorKind::InvalidArgument, "symplectic context required");
    ctx.validate();
    if (dim_cw > ctx.n) throw Error(ErrorKind::OutOfRange, "dim C_W exceeds n");
    SqrtValue v;
    v.radicand = ipow(ctx.q, dim_cw);
    if (dim_cw % 2 == 0) {
        v.root = ipow(ctx.q, dim_cw / 2);
    } else {
        BigInt s = boost::multiprecision::sqrt(v.radicand);
        if (s * s == v.radicand) v.root = s;
    }
    return v;
}

/// (-1)^n (-q)^dim, the degree-q^n Weil character of SU_n(q).
inline BigInt weil_su_value(const WeilContext& ctx, std::uint64_t dim_cw) {
    if (ctx.kind != WeilKind::Unitary) throw Error(ErrorKind::InvalidArgument, "unitary context required");
    ctx.validate();
    if (dim_cw > ctx.n) throw Error(ErrorKind::OutOfRange, "dim C_W exceeds n");
    BigInt v = ipow(ctx.q, dim_cw);
    bool negative = (ctx.n % 2 == 1) != (dim_cw % 2 == 1);
    return negative ? BigInt(-v) : v;
}

/// The exponent i and multiplier t (as t_num / t_den) behind a menu.
struct MenuParams {
    std::uint64_t i = 0;
    std::uint64_t t_num = 1;
    std::uint64_t t_den = 1;
};

inline MenuParams cw_menu_params(const WeilContext& ctx, std::uint64_t r0) {
    if (r0 < 3 || !is_prime(r0)) throw Error(ErrorKind::InvalidArgument, "element order must be an odd prime");
    if (ctx.q % r0 == 0) throw Error(ErrorKind::DefiningCharacteristic, "element order divides q");
    MenuParams mp;
    mp.i = mult_order_mod(static_cast<std::int64_t>(ctx.q % r0), r0);
    if (ctx.kind == WeilKind::Unitary && mp.i == 2)
        throw Error(ErrorKind::ExcludedCase, "unitary group with i = 2");
    if (mp.i % 2 == 1) {
        mp.t_num = 2;
    } else if (ctx.kind == WeilKind::Unitary && mp.i % 4 == 2 && mp.i > 2) {
        mp.t_den = 2;
    }
    return mp;
}

/**
 * @brief Possible values of dim C_W(g) for g semisimple of odd prime order r0:
 * {n - t i j : 1 <= j <= floor(n / (t i))}, in decreasing order.
 */
inline std::vector<std::uint64_t> cw_dim_menu(const WeilContext& ctx, std::uint64_t r0) {
    ctx.validate();
    MenuParams mp = cw_menu_params(ctx, r0);
    // t i is integral: t = 1/2 only occurs with i even
    std::uint64_t step_num = mp.t_num * mp.i;
    if (step_num % mp.t_den != 0) throw Error(ErrorKind::InconsistentMenuEntry, "t i is not an integer");
    std::uint64_t step = step_num / mp.t_den;
    std::vector<std::uint64_t> menu;
    for (std::uint64_t j = 1; j * step <= ctx.n; ++j) menu.push_back(ctx.n - j * step);
    return menu;
}

struct WeilCapEntry {
    std::uint64_t dim_cw = 0;
    BigInt character;
    std::optional<BrauerEigen> eigen;  ///< empty when the value is inconsistent with the degree
};

struct WeilCap {
    std::uint64_t element_order = 0;
    std::int64_t cap = 0;
    std::vector<WeilCapEntry> entries;
};

/**
 * @brief Largest eigenspace of a semisimple element of prime order ell on the
 * full Weil module, maximised over the dim C_W menu.
 *
 * Entries whose character value fails the divisibility test are recorded
 * without eigenvalues and skipped. For symplectic groups both signs of
 * q^{dim/2} are tried and odd dimensions (irrational values) are skipped.
 */
inline WeilCap weil_emax_bound(const WeilContext& ctx, std::uint64_t ell) {
    ctx.validate();
    if (ell == ctx.r0) throw Error(ErrorKind::InvalidArgument, "element order equals the module characteristic");
    WeilCap out;
    out.element_order = ell;
    const BigInt deg = ctx.full_degree();
    if (deg > BigInt(std::numeric_limits<std::int64_t>::max()))
        throw Error(ErrorKind::OutOfRange, "Weil degree too large");
    const std::int64_t d = static_cast<std::int64_t>(deg);
    for (std::uint64_t dim : cw_dim_menu(ctx, ell)) {
        std::vector<BigInt> values;
        if (ctx.kind == WeilKind::Unitary) {
            values.push_back(weil_su_value(ctx, dim));
        } else {
            auto s = weil_sp_abs_sum(ctx, dim);
            if (!s.root) continue;
            values.push_back(*s.root);
            values.push_back(-*s.root);
        }
        for (const auto& v : values) {
            WeilCapEntry entry;
            entry.dim_cw = dim;
            entry.character = v;
            try {
                entry.eigen = brauer_eigenvalues({d, static_cast<std::int64_t>(ell), static_cast<std::int64_t>(v)});
                out.cap = std::max(out.cap, entry.eigen->emax());
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DivisibilityViolation) throw;
            }
            out.entries.push_back(std::move(entry));
        }
    }
    return out;
}

/// Maximum of weil_emax_bound over several element orders.
inline std::int64_t weil_emax_bound(const WeilContext& ctx, const std::vector<std::uint64_t>& orders) {
    std::int64_t cap = 0;
    for (auto ell : orders) cap = std::max(cap, weil_emax_bound(ctx, ell).cap);
    return cap;
}

} // namespace regorb
