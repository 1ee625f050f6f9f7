#pragma once

#include "regorb/bigint.hpp"
#include "regorb/conway_table.hpp"
#include "regorb/errors.hpp"
#include "regorb/integers.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace regorb {

/// Field elements are integer codes sum a_i p^i of their power-basis coordinates.
using Elt = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/**
 * @brief User-supplied defining polynomials, one `p k c0 ... c_{k-1}` per line.
 */
class FieldDb {
public:
    FieldDb() = default;

    static FieldDb load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error(ErrorKind::ParseError, "cannot open field database " + path);
        FieldDb db;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            std::uint64_t p, k;
            if (!(ss >> p)) continue;
            if (!(ss >> k) || k == 0 || k > 64)
                throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": bad degree");
            std::vector<std::uint32_t> c(k);
            for (auto& x : c) {
                std::uint64_t v;
                if (!(ss >> v) || v >= p)
                    throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": bad coefficient");
                x = static_cast<std::uint32_t>(v);
            }
            db.entries_[{p, k}] = std::move(c);
        }
        return db;
    }

    /// Reads the path named by REGORB_FIELD_DB, if set.
    static std::optional<FieldDb> from_env() {
        const char* path = std::getenv("REGORB_FIELD_DB");
        if (!path || !*path) return std::nullopt;
        return load(path);
    }

    void add(std::uint64_t p, std::uint64_t k, std::vector<std::uint32_t> coeffs) {
        entries_[{p, k}] = std::move(coeffs);
    }

    const std::vector<std::uint32_t>* find(std::uint64_t p, std::uint64_t k) const {
        auto it = entries_.find({p, k});
        return it == entries_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint32_t>> entries_;
};

namespace detail {

// Dense polynomials over Z/p, ascending coefficients. Only used to vet
// defining polynomials before a Field object exists.
using PrimePoly = std::vector<std::uint64_t>;

inline void pp_trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PrimePoly pp_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // f is monic
    std::size_t k = f.size() - 1;
    for (std::size_t i = r.size(); i-- > k;) {
        std::uint64_t c = r[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= k; ++j) r[i - k + j] = (r[i - k + j] + (p - c) * f[j]) % p;
    }
    pp_trim(r);
    return r;
}

inline PrimePoly pp_powmod(PrimePoly a, std::uint64_t e, const PrimePoly& f, std::uint64_t p) {
    PrimePoly r{1};
    while (e) {
        if (e & 1) r = pp_mulmod(r, a, f, p);
        e >>= 1;
        if (e) a = pp_mulmod(a, a, f, p);
    }
    return r;
}

inline PrimePoly pp_mod(PrimePoly a, const PrimePoly& b, std::uint64_t p) {
    pp_trim(a);
    std::size_t db = b.size() - 1;
    std::uint64_t inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        std::uint64_t c = a.back() * inv % p;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] + (p - c) * b[j] % p) % p;
        pp_trim(a);
    }
    return a;
}

inline PrimePoly pp_gcd(PrimePoly a, PrimePoly b, std::uint64_t p) {
    pp_trim(a);
    pp_trim(b);
    while (!b.empty()) {
        PrimePoly r = pp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's irreducibility test for the monic polynomial x^k + sum c_i x^i over Z/p.
inline bool prime_poly_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint64_t p) {
    std::size_t k = coeffs.size();
    if (k == 0) return false;
    PrimePoly f(coeffs.begin(), coeffs.end());
    f.push_back(1);
    if (k == 1) return true;
    // x^(p^i) mod f for i = 1..k
    std::vector<PrimePoly> frob(k + 1);
    frob[0] = PrimePoly{0, 1};
    for (std::size_t i = 1; i <= k; ++i) frob[i] = pp_powmod(frob[i - 1], p, f, p);
    auto minus_x = [&](PrimePoly a) {
        if (a.size() < 2) a.resize(2, 0);
        a[1] = (a[1] + p - 1) % p;
        pp_trim(a);
        return a;
    };
    if (!minus_x(frob[k]).empty()) return false;
    for (auto [l, e] : factorize(k)) {
        PrimePoly g = pp_gcd(f, minus_x(frob[k / l]), p);
        if (g.size() != 1) return false;
    }
    return true;
}

inline std::uint64_t checked_power(std::uint64_t p, std::uint64_t k) {
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (q > (std::uint64_t(1) << 32) / p)
            throw Error(ErrorKind::OutOfRange, "field size exceeds 2^32");
        q *= p;
    }
    return q;
}

} // namespace detail

/**
 * @brief The finite field GF(p^k) with an explicit defining polynomial.
 *
 * Immutable after construction. Fields up to 2^16 elements use log/exp
 * tables; larger ones (needed for eigenvalue extensions) fall back to
 * polynomial arithmetic on the coefficient digits.
 */
class Field {
public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t(1) << 16;

    /**
     * @brief Builds a validated field.
     *
     * Without an explicit polynomial the choice order is: database entry,
     * bundled Conway polynomial, least primitive root (k = 1), then the
     * lexicographically least monic irreducible of degree k.
     */
    static FieldPtr make(std::uint64_t p, std::uint64_t k,
                         std::optional<std::vector<std::uint32_t>> defpoly = std::nullopt,
                         const FieldDb* db = nullptr) {
        if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
        if (k < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
        detail::checked_power(p, k);
        std::vector<std::uint32_t> poly;
        if (defpoly) {
            if (defpoly->size() != k)
                throw Error(ErrorKind::InvalidArgument, "defining polynomial must have k non-leading coefficients");
            for (auto c : *defpoly)
                if (c >= p) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
            if (!detail::prime_poly_irreducible(*defpoly, p))
                throw Error(ErrorKind::ReduciblePolynomial, "defining polynomial is reducible over GF(" + std::to_string(p) + ")");
            poly = *defpoly;
        } else if (const auto* hit = db ? db->find(p, k) : nullptr) {
            if (!detail::prime_poly_irreducible(*hit, p))
                throw Error(ErrorKind::ReduciblePolynomial, "field database polynomial is reducible");
            poly = *hit;
        } else {
            poly = default_polynomial(p, k);
        }
        return FieldPtr(new Field(p, k, std::move(poly)));
    }

    static FieldPtr make_prime(std::uint64_t p) { return make(p, 1); }

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& defpoly() const { return defpoly_; }
    bool is_prime_field() const { return k_ == 1; }
    bool has_tables() const { return !exp_.empty(); }

    bool same_as(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && defpoly_ == o.defpoly_; }

    Elt add(Elt a, Elt b) const {
        if (p_ == 2) return a ^ b;
        if (k_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (!zech_.empty()) {
            if (a == 0) return b;
            if (b == 0) return a;
            std::uint32_t la = log_[a], lb = log_[b];
            std::uint32_t diff = lb >= la ? lb - la : lb + (q1_ - la);
            std::uint32_t z = zech_[diff];
            if (z == kNoLog) return 0;
            std::uint32_t e = la + z;
            return exp_[e >= q1_ ? e - q1_ : e];
        }
        return add_digits(a, b);
    }

    Elt neg(Elt a) const {
        if (p_ == 2 || a == 0) return a;
        if (k_ == 1) return p_ - a;
        if (!neg_.empty()) return neg_[a];
        Elt r = 0;
        std::uint64_t pw = 1;
        for (std::uint32_t i = 0; i < k_; ++i, pw *= p_) {
            std::uint32_t d = (a / pw) % p_;
            if (d) r += static_cast<Elt>((p_ - d) * pw);
        }
        return r;
    }

    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }

    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        if (k_ == 1) return static_cast<Elt>(static_cast<std::uint64_t>(a) * b % p_);
        if (!exp_.empty()) {
            std::uint32_t e = log_[a] + log_[b];
            return exp_[e >= q1_ ? e - q1_ : e];
        }
        return mul_digits(a, b);
    }

    Elt inv(Elt a) const {
        if (a == 0) throw Error(ErrorKind::NotInvertible, "zero has no inverse");
        if (!exp_.empty()) return exp_[log_[a] == 0 ? 0 : q1_ - log_[a]];
        return pow(a, q_ - 2);
    }

    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    Elt pow(Elt a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        if (!exp_.empty()) return exp_[static_cast<std::uint32_t>((static_cast<unsigned __int128>(log_[a]) * e) % q1_)];
        Elt r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    Elt pow(Elt a, const BigInt& e) const {
        if (e < 0) return pow(inv(a), BigInt(-e));
        if (a == 0) return e == 0 ? 1 : 0;
        BigInt reduced = e % BigInt(q1_);
        return pow(a, static_cast<std::uint64_t>(reduced));
    }

    /// Image of an integer in the prime subfield.
    Elt from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Elt>(r);
    }

    /// Inverse of from_int for prime-subfield elements.
    bool in_prime_subfield(Elt a) const { return a < p_; }

    std::vector<std::uint32_t> coeffs(Elt a) const {
        std::vector<std::uint32_t> c(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    }

    Elt from_coeffs(const std::vector<std::uint32_t>& c) const {
        Elt r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * p_ + (c[i] % p_);
        return r;
    }

    /// The class of x modulo the defining polynomial (a primitive root when k = 1).
    Elt root_of_defpoly() const { return k_ == 1 ? static_cast<Elt>((p_ - defpoly_[0]) % p_) : p_; }

    /// A fixed generator of the multiplicative group.
    Elt primitive_element() const { return gen_; }

    Elt frobenius(Elt a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

    /// Least t >= 1 with a^t = 1.
    std::uint64_t mult_order(Elt a) const {
        if (a == 0) throw Error(ErrorKind::NotInvertible, "zero has no multiplicative order");
        std::uint64_t ord = q1_;
        for (auto& [l, e] : factorize(q1_)) {
            while (ord % l == 0 && pow(a, ord / l) == 1) ord /= l;
        }
        return ord;
    }

    std::string describe() const {
        std::string s = "GF(" + std::to_string(p_);
        if (k_ > 1) s += "^" + std::to_string(k_);
        return s + ")";
    }

private:
    static constexpr std::uint32_t kNoLog = 0xffffffffu;

    Field(std::uint64_t p, std::uint64_t k, std::vector<std::uint32_t> poly)
        : p_(static_cast<std::uint32_t>(p)), k_(static_cast<std::uint32_t>(k)), q_(detail::checked_power(p, k)),
          q1_(static_cast<std::uint32_t>(q_ - 1)), defpoly_(std::move(poly)) {
        for (std::uint32_t i = 0; i < k_; ++i) neg_coef_.push_back(defpoly_[i] ? p_ - defpoly_[i] : 0);
        if (k_ == 1) {
            gen_ = static_cast<Elt>(least_primitive_root(p_));
        } else {
            gen_ = find_generator();
        }
        if (q_ <= kTableLimit) build_tables();
    }

    static std::vector<std::uint32_t> default_polynomial(std::uint64_t p, std::uint64_t k) {
        if (k == 1) {
            std::uint64_t g = least_primitive_root(p);
            return {static_cast<std::uint32_t>((p - g) % p)};
        }
        for (const auto& e : detail::kConwayTable) {
            if (e.p == p && e.k == k) return std::vector<std::uint32_t>(e.coeffs, e.coeffs + k);
        }
        // lexicographically least: the non-leading coefficients read as a base-p
        // integer with c0 least significant
        std::vector<std::uint32_t> c(k, 0);
        for (;;) {
            if (c[0] != 0 && detail::prime_poly_irreducible(c, p)) return c;
            std::size_t i = 0;
            while (i < k && ++c[i] == p) c[i++] = 0;
            if (i == k) break;
        }
        throw Error(ErrorKind::ReduciblePolynomial, "no irreducible polynomial found");
    }

    Elt add_digits(Elt a, Elt b) const {
        Elt r = 0;
        std::uint64_t pw = 1;
        for (std::uint32_t i = 0; i < k_; ++i, pw *= p_) {
            std::uint32_t s = (a % p_) + (b % p_);
            a /= p_;
            b /= p_;
            if (s >= p_) s -= p_;
            r += static_cast<Elt>(s * pw);
        }
        return r;
    }

    Elt mul_digits(Elt a, Elt b) const {
        if (p_ == 2) {
            std::uint64_t r = 0;
            std::uint64_t x = a;
            for (std::uint32_t i = 0; i < k_; ++i)
                if ((b >> i) & 1) r ^= x << i;
            std::uint64_t red = 0;
            for (std::uint32_t i = 0; i < k_; ++i)
                if (defpoly_[i]) red |= std::uint64_t(1) << i;
            for (std::uint32_t i = 2 * k_; i-- > k_;) {
                if ((r >> i) & 1) {
                    r ^= std::uint64_t(1) << i;
                    r ^= red << (i - k_);
                }
            }
            return static_cast<Elt>(r);
        }
        std::uint64_t da[64], db[64], prod[128] = {};
        for (std::uint32_t i = 0; i < k_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        for (std::uint32_t i = 0; i < k_; ++i) {
            if (!da[i]) continue;
            for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
        for (std::uint32_t i = 2 * k_ - 1; i-- > k_;) {
            std::uint64_t c = prod[i];
            if (!c) continue;
            prod[i] = 0;
            for (std::uint32_t j = 0; j < k_; ++j) prod[i - k_ + j] = (prod[i - k_ + j] + c * neg_coef_[j]) % p_;
        }
        Elt r = 0;
        for (std::uint32_t i = k_; i-- > 0;) r = r * p_ + static_cast<Elt>(prod[i]);
        return r;
    }

    Elt slow_pow(Elt a, std::uint64_t e) const {
        Elt r = 1;
        while (e) {
            if (e & 1) r = mul_digits(r, a);
            e >>= 1;
            if (e) a = mul_digits(a, a);
        }
        return r;
    }

    Elt find_generator() const {
        auto divs = prime_divisors(q_ - 1);
        for (std::uint64_t c = p_; c < q_; ++c) {
            Elt g = static_cast<Elt>(c);
            bool ok = true;
            for (auto l : divs) {
                if (slow_pow(g, (q_ - 1) / l) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return g;
        }
        return 1;
    }

    void build_tables() {
        exp_.assign(q1_ + 1, 0);
        log_.assign(q_, kNoLog);
        Elt x = 1;
        for (std::uint32_t i = 0; i < q1_; ++i) {
            exp_[i] = x;
            log_[x] = i;
            x = k_ == 1 ? static_cast<Elt>(static_cast<std::uint64_t>(x) * gen_ % p_) : mul_digits(x, gen_);
        }
        exp_[q1_] = 1;
        if (k_ > 1 && p_ != 2) {
            neg_.resize(q_);
            for (std::uint64_t a = 0; a < q_; ++a) {
                Elt r = 0;
                std::uint64_t pw = 1;
                Elt t = static_cast<Elt>(a);
                for (std::uint32_t i = 0; i < k_; ++i, pw *= p_) {
                    std::uint32_t d = t % p_;
                    t /= p_;
                    if (d) r += static_cast<Elt>((p_ - d) * pw);
                }
                neg_[a] = r;
            }
            // Zech logarithms: 1 + g^n = g^zech[n]
            zech_.assign(q1_, kNoLog);
            for (std::uint32_t n = 0; n < q1_; ++n) {
                Elt s = add_digits(1, exp_[n]);
                zech_[n] = s == 0 ? kNoLog : log_[s];
            }
        }
    }

    std::uint32_t p_, k_;
    std::uint64_t q_;
    std::uint32_t q1_;
    std::vector<std::uint32_t> defpoly_;
    std::vector<std::uint64_t> neg_coef_;
    Elt gen_ = 1;
    std::vector<Elt> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
    std::vector<Elt> neg_;
};

} // namespace regorb
