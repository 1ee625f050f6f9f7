#pragma once

#include "regorb/field.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace regorb {

/**
 * @brief Polynomial over a Field, coefficients in ascending degree.
 *
 * The coefficient vector is kept trimmed so the last entry is the nonzero
 * leading coefficient; the zero polynomial has no coefficients.
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Elt> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

    static Poly constant(FieldPtr f, Elt a) { return Poly(std::move(f), std::vector<Elt>{a}); }
    static Poly x(FieldPtr f) { return Poly(std::move(f), std::vector<Elt>{0, 1}); }
    /// x - a
    static Poly linear(FieldPtr f, Elt a) {
        Elt na = f->neg(a);
        return Poly(std::move(f), std::vector<Elt>{na, 1});
    }

    const FieldPtr& field() const { return f_; }
    const std::vector<Elt>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Elt lead() const { return c_.empty() ? 0 : c_.back(); }
    Elt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    Elt eval(Elt a) const {
        Elt r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, a), c_[i]);
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        Elt inv = f_->inv(lead());
        std::vector<Elt> c(c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->mul(c_[i], inv);
        return Poly(f_, std::move(c));
    }

    Poly operator+(const Poly& o) const {
        std::vector<Elt> c(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->add(coeff(i), o.coeff(i));
        return Poly(f_, std::move(c));
    }

    Poly operator-(const Poly& o) const {
        std::vector<Elt> c(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->sub(coeff(i), o.coeff(i));
        return Poly(f_, std::move(c));
    }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(f_);
        std::vector<Elt> c(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = f_->add(c[i + j], f_->mul(c_[i], o.c_[j]));
        }
        return Poly(f_, std::move(c));
    }

    Poly scale(Elt a) const {
        std::vector<Elt> c(c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->mul(c_[i], a);
        return Poly(f_, std::move(c));
    }

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
        std::vector<Elt> r = c_;
        if (degree() < d.degree()) return {Poly(f_), *this};
        std::vector<Elt> q(c_.size() - d.c_.size() + 1, 0);
        Elt inv = f_->inv(d.lead());
        std::size_t dd = d.c_.size() - 1;
        for (std::size_t i = r.size(); i-- > dd;) {
            Elt c = f_->mul(r[i], inv);
            if (!c) continue;
            q[i - dd] = c;
            for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] = f_->sub(r[i - dd + j], f_->mul(c, d.c_[j]));
        }
        return {Poly(f_, std::move(q)), Poly(f_, std::move(r))};
    }

    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(f_);
        std::vector<Elt> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = f_->mul(f_->from_int(static_cast<std::int64_t>(i % f_->p())), c_[i]);
        return Poly(f_, std::move(c));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i > 0) s += (i == 1 ? std::string("x") : "x^" + std::to_string(i));
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    FieldPtr f_;
    std::vector<Elt> c_;
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

inline Poly powmod(Poly a, const BigInt& e, const Poly& m) {
    Poly r = Poly::constant(m.field(), 1) % m;
    a = a % m;
    if (e == 0) return r;
    std::size_t bits = boost::multiprecision::msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mulmod(r, a, m);
    }
    return r;
}

/**
 * @brief Ordering used for deterministic factor lists: by degree, then by
 * the non-leading coefficient codes read from the top down.
 */
inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
    return false;
}

using Factorization = std::vector<std::pair<Poly, int>>;

namespace detail {

// splitmix64 keyed by a counter: the only source of "randomness" in
// equal-degree splitting, so factor lists never depend on run state
inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Inverse Frobenius on coefficients of a polynomial in x^p.
inline Poly pth_root(const Poly& f) {
    const auto& F = f.field();
    std::uint64_t e = 1;
    for (std::uint32_t i = 1; i < F->k(); ++i) e *= F->p();
    std::vector<Elt> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += F->p()) c.push_back(F->pow(f.coeff(i), e));
    return Poly(F, std::move(c));
}

inline void square_free(const Poly& f, int mult, Factorization& out) {
    const auto& F = f.field();
    if (f.degree() <= 0) return;
    Poly d = f.derivative();
    if (d.is_zero()) {
        square_free(pth_root(f), mult * static_cast<int>(F->p()), out);
        return;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) square_free(pth_root(c.monic()), mult * static_cast<int>(F->p()), out);
}

/// Splits a square-free monic f into (product of all degree-i factors, i).
inline std::vector<std::pair<Poly, int>> distinct_degree(Poly f) {
    const auto& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly x = Poly::x(F);
    Poly h = x % f;
    BigInt q = F->q();
    for (int i = 1; f.degree() >= 2 * i; ++i) {
        h = powmod(h, q, f);
        Poly g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
    return out;
}

inline void equal_degree(const Poly& g, int e, std::uint64_t& counter, std::vector<Poly>& out) {
    const auto& F = g.field();
    if (g.degree() == e) {
        out.push_back(g.monic());
        return;
    }
    int n = g.degree();
    BigInt qe = ipow(BigInt(F->q()), static_cast<std::uint64_t>(e));
    for (;;) {
        std::vector<Elt> c(n);
        for (int i = 0; i < n; ++i) c[i] = static_cast<Elt>(splitmix(counter++) % F->q());
        Poly a(F, std::move(c));
        if (a.degree() <= 0) continue;
        Poly b(F);
        if (F->p() == 2) {
            // absolute trace to GF(2): a + a^2 + ... + a^(2^(k e - 1))
            Poly t = a % g;
            Poly acc = t;
            for (std::uint64_t i = 1; i < static_cast<std::uint64_t>(F->k()) * e; ++i) {
                t = mulmod(t, t, g);
                acc = acc + t;
            }
            b = acc;
        } else {
            b = powmod(a, (qe - 1) / 2, g) - Poly::constant(F, 1);
        }
        Poly d = gcd(b, g);
        if (d.degree() > 0 && d.degree() < n) {
            equal_degree(d, e, counter, out);
            equal_degree(g / d, e, counter, out);
            return;
        }
    }
}

} // namespace detail

/**
 * @brief Factors f into monic irreducibles with multiplicities.
 *
 * Square-free decomposition, distinct-degree splitting, then Cantor-Zassenhaus
 * equal-degree refinement driven by a fixed counter. The list is sorted by
 * poly_less; the leading coefficient of f is dropped.
 */
inline Factorization factor_poly(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
    Factorization sqf;
    detail::square_free(f.monic(), 1, sqf);
    Factorization out;
    std::uint64_t counter = 0x5eed;
    for (auto& [part, mult] : sqf) {
        for (auto& [block, deg] : detail::distinct_degree(part)) {
            std::vector<Poly> pieces;
            detail::equal_degree(block, deg, counter, pieces);
            for (auto& piece : pieces) out.emplace_back(piece, mult);
        }
    }
    // merge repeats (possible when square-free parts from different p-power levels coincide)
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    Factorization merged;
    for (auto& fm : out) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(fm);
    }
    return merged;
}

inline bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_poly(f);
    return fac.size() == 1 && fac[0].second == 1;
}

/// Distinct roots of f in its coefficient field, ascending by code.
inline std::vector<Elt> roots(const Poly& f) {
    std::vector<Elt> out;
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "the zero polynomial has every root");
    const auto& F = f.field();
    Poly x = Poly::x(F);
    Poly m = f.monic();
    if (m.degree() < 1) return out;
    // restrict to the product of linear factors first
    Poly lin = gcd(powmod(x, BigInt(F->q()), m) - x, m);
    if (lin.degree() < 1) return out;
    std::vector<Poly> pieces;
    std::uint64_t counter = 0x600d;
    detail::equal_degree(lin, 1, counter, pieces);
    for (auto& p : pieces) out.push_back(F->neg(p.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * @brief Field embedding GF(p^k) -> GF(p^{km}) sending the defining root of the
 * small field to the least root of its defining polynomial in the big field.
 */
class Embedding {
public:
    Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
        if (small_->p() != big_->p() || big_->k() % small_->k() != 0)
            throw Error(ErrorKind::FieldMismatch, small_->describe() + " does not embed in " + big_->describe());
        if (small_->k() == 1) return;
        std::vector<Elt> c;
        for (auto a : small_->defpoly()) c.push_back(a);
        c.push_back(1);
        auto rs = roots(Poly(big_, std::move(c)));
        if (rs.empty()) throw Error(ErrorKind::FieldMismatch, "defining polynomial has no root in the larger field");
        theta_ = rs.front();
        Elt t = 1;
        for (std::uint32_t i = 0; i < small_->k(); ++i) {
            powers_.push_back(t);
            t = big_->mul(t, theta_);
        }
        if (small_->q() <= Field::kTableLimit) {
            table_.resize(small_->q());
            for (std::uint64_t a = 0; a < small_->q(); ++a) table_[a] = compute(static_cast<Elt>(a));
        }
    }

    const FieldPtr& source() const { return small_; }
    const FieldPtr& target() const { return big_; }
    Elt theta() const { return theta_; }

    Elt operator()(Elt a) const {
        if (small_->k() == 1) return a;
        if (!table_.empty()) return table_[a];
        return compute(a);
    }

private:
    Elt compute(Elt a) const {
        Elt r = 0;
        auto c = small_->coeffs(a);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i]) r = big_->add(r, big_->mul(static_cast<Elt>(c[i]), powers_[i]));
        return r;
    }

    FieldPtr small_, big_;
    Elt theta_ = 0;
    std::vector<Elt> powers_;
    std::vector<Elt> table_;
};

} // namespace regorb
