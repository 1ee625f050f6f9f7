#pragma once

#include "regorb/bigint.hpp"
#include "regorb/errors.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace regorb {

/// floor(d (1 - 1/alpha)) for alpha >= 2.
inline std::uint64_t eig_cap(std::uint64_t d, const Rational& alpha) {
    if (alpha < 2) throw Error(ErrorKind::InvalidArgument, "alpha must be at least 2");
    return static_cast<std::uint64_t>(floor_of(Rational(d) * (1 - 1 / alpha)));
}

inline std::uint64_t eig_cap(std::uint64_t d, std::uint64_t alpha) { return eig_cap(d, Rational(alpha)); }

enum class Strategy { ii, iii, iv, v, best };

inline const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::ii: return "ii";
    case Strategy::iii: return "iii";
    case Strategy::iv: return "iv";
    case Strategy::v: return "v";
    case Strategy::best: return "best";
    }
    return "?";
}

inline Strategy parse_strategy(const std::string& s) {
    if (s == "ii") return Strategy::ii;
    if (s == "iii") return Strategy::iii;
    if (s == "iv") return Strategy::iv;
    if (s == "v") return Strategy::v;
    if (s == "best") return Strategy::best;
    throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + s + "'");
}

/**
 * @brief What is known about one class: per-twist fixed-space dimensions
 * (kappa -> dim C_V(kappa x)), a cap on every eigenspace dimension, and/or
 * an alpha bound. Any subset may be present.
 */
struct Evidence {
    std::optional<std::map<std::uint64_t, std::uint32_t>> profile;
    std::optional<std::uint32_t> emax;
    std::optional<Rational> alpha;
};

struct ClassEntry {
    std::string label;
    BigInt class_size;          ///< |x̄^H|
    std::uint64_t proj_order = 0;
    bool unipotent = false;
    Evidence evidence;
};

struct CertificateInput {
    std::uint64_t r = 0;
    std::uint64_t d = 0;
    std::vector<ClassEntry> classes;
    std::optional<BigInt> group_order;
};

enum class Outcome { Certified, Inconclusive };

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    Strategy used = Strategy::ii;
    BigInt lhs;     ///< r^d
    Rational rhs;
    Rational slack; ///< rhs - lhs
    /// Labels of classes evaluated with the cap form inside strategy ii.
    std::vector<std::string> degraded;

    bool certified() const { return outcome == Outcome::Certified; }
};

namespace detail {

inline void validate(const CertificateInput& in) {
    if (in.r < 2) throw Error(ErrorKind::InvalidArgument, "field size must be at least 2");
    for (const auto& c : in.classes) {
        if (c.proj_order < 2) throw Error(ErrorKind::InvalidArgument, "class " + c.label + ": order must be prime");
        if (c.class_size < 1) throw Error(ErrorKind::InvalidArgument, "class " + c.label + ": size must be positive");
        if (c.evidence.emax && *c.evidence.emax > in.d)
            throw Error(ErrorKind::InvalidArgument, "class " + c.label + ": cap exceeds dimension");
        if (c.evidence.profile)
            for (auto [k, dim] : *c.evidence.profile)
                if (dim > in.d) throw Error(ErrorKind::InvalidArgument, "class " + c.label + ": profile exceeds dimension");
        if (c.evidence.alpha && *c.evidence.alpha < 2)
            throw Error(ErrorKind::InvalidArgument, "class " + c.label + ": alpha below 2");
    }
}

/// Largest eigenspace exponent available from profile, emax or alpha (in that order of preference).
/// Empty when a profile shows no nonzero eigenspace.
inline std::optional<std::uint64_t> cap_exponent(const ClassEntry& c, std::uint64_t d) {
    if (c.evidence.profile) {
        std::optional<std::uint64_t> best;
        for (auto [k, dim] : *c.evidence.profile)
            if (dim > 0 && (!best || dim > *best)) best = dim;
        return best;
    }
    if (c.evidence.emax) return *c.evidence.emax;
    if (c.evidence.alpha) return eig_cap(d, *c.evidence.alpha);
    throw Error(ErrorKind::MissingEvidence, "class " + c.label + " carries no evidence");
}

inline BigInt profile_sum(const ClassEntry& c, std::uint64_t r) {
    BigInt s = 0;
    for (auto [k, dim] : *c.evidence.profile)
        if (dim > 0) s += ipow(r, dim);
    return s;
}

/// One class's contribution under the cap forms (iii and iv).
inline Rational cap_term(const ClassEntry& c, std::uint64_t r, std::uint64_t d, bool factor_two) {
    const Rational o(c.proj_order);
    if (c.unipotent) {
        // a single eigenvalue; with a profile its own sum is exact
        BigInt fixed = c.evidence.profile ? profile_sum(c, r) : ipow(r, *cap_exponent(c, d));
        return Rational(c.class_size * fixed) / (o - 1);
    }
    auto e = cap_exponent(c, d);
    if (!e) return Rational(0);
    Rational weight = factor_two ? Rational(2) : o / (o - 1);
    return weight * Rational(c.class_size * ipow(r, *e));
}

inline Verdict finish(const CertificateInput& in, Strategy s, const Rational& rhs) {
    Verdict v;
    v.used = s;
    v.lhs = ipow(in.r, in.d);
    v.rhs = rhs;
    v.slack = rhs - Rational(v.lhs);
    v.outcome = rhs < Rational(v.lhs) ? Outcome::Certified : Outcome::Inconclusive;
    return v;
}

inline Verdict check_single(const CertificateInput& in, Strategy s) {
    const std::uint64_t r = in.r;
    const std::uint64_t d = in.d;
    Rational rhs = 0;
    std::vector<std::string> degraded;
    switch (s) {
    case Strategy::ii:
        for (const auto& c : in.classes) {
            if (c.evidence.profile) {
                rhs += Rational(c.class_size * profile_sum(c, r)) / Rational(c.proj_order - 1);
            } else {
                rhs += cap_term(c, r, d, false);
                degraded.push_back(c.label);
            }
        }
        break;
    case Strategy::iii:
    case Strategy::iv:
        for (const auto& c : in.classes) rhs += cap_term(c, r, d, s == Strategy::iv);
        break;
    case Strategy::v:
        for (const auto& c : in.classes) {
            if (!c.evidence.alpha)
                throw Error(ErrorKind::MissingEvidence, "class " + c.label + " has no alpha bound");
            const BigInt term = c.class_size * ipow(r, eig_cap(d, *c.evidence.alpha));
            rhs += c.unipotent ? Rational(term) / Rational(c.proj_order - 1) : Rational(2 * term);
        }
        break;
    case Strategy::best: throw std::logic_error("best is not a single strategy");
    }
    Verdict v = finish(in, s, rhs);
    v.degraded = std::move(degraded);
    return v;
}

} // namespace detail

/**
 * @brief Evaluates the chosen covering inequality. Certified means the
 * right-hand side is strictly below |V| = r^d, so some vector lies in no
 * fixed space and G has a regular orbit. Inconclusive says nothing either way.
 */
inline Verdict check(const CertificateInput& in, Strategy s = Strategy::best) {
    detail::validate(in);
    if (s != Strategy::best) return detail::check_single(in, s);
    std::optional<Verdict> best;
    for (Strategy t : {Strategy::ii, Strategy::iii, Strategy::iv, Strategy::v}) {
        Verdict v;
        try {
            v = detail::check_single(in, t);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::MissingEvidence) continue;
            throw;
        }
        if (v.certified()) return v;
        if (!best || v.slack < best->slack) best = std::move(v);
    }
    if (!best) throw Error(ErrorKind::MissingEvidence, "no strategy has the evidence it needs");
    return *best;
}

/// All four strategies in order, skipping those without evidence.
inline std::vector<Verdict> check_all(const CertificateInput& in) {
    detail::validate(in);
    std::vector<Verdict> out;
    for (Strategy t : {Strategy::ii, Strategy::iii, Strategy::iv, Strategy::v}) {
        try {
            out.push_back(detail::check_single(in, t));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::MissingEvidence) throw;
        }
    }
    return out;
}

inline constexpr std::uint64_t kDefaultDimCeiling = 4096;

/**
 * @brief Least d at which strategy v certifies, for classes carrying alpha
 * bounds. Once the inequality fails at some d it fails for every larger d,
 * so the first certifying d found by scanning upwards is the threshold.
 */
inline std::uint64_t min_failing_dim(CertificateInput tmpl, std::uint64_t ceiling = kDefaultDimCeiling) {
    for (const auto& c : tmpl.classes)
        if (!c.evidence.alpha) throw Error(ErrorKind::MissingEvidence, "class " + c.label + " has no alpha bound");
    for (std::uint64_t d = 1; d <= ceiling; ++d) {
        tmpl.d = d;
        if (check(tmpl, Strategy::v).certified()) return d;
    }
    throw Error(ErrorKind::NeverFails, "inequality holds for every d up to " + std::to_string(ceiling));
}

} // namespace regorb
