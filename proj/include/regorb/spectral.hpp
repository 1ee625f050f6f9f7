#pragma once

#include "regorb/mat.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace regorb {

/**
 * @brief Characteristic polynomial det(xI - g) by Berkowitz's division-free method.
 */
inline Poly char_poly(const Mat& g) {
    const FieldPtr& Fp = g.field();
    const Field& F = *Fp;
    const std::uint32_t n = g.dim();
    if (n == 0) return Poly::constant(Fp, 1);
    // coefficients from the top degree down
    std::vector<Elt> vect{1, F.neg(g(0, 0))};
    for (std::uint32_t r = 1; r < n; ++r) {
        std::vector<Elt> t(r + 2, 0);
        t[0] = 1;
        t[1] = F.neg(g(r, r));
        // w runs through Aa^k C for the leading r x r block Aa and column C
        std::vector<Elt> w(r), nw(r);
        for (std::uint32_t i = 0; i < r; ++i) w[i] = g(i, r);
        for (std::uint32_t k = 0; k < r; ++k) {
            Elt s = 0;
            for (std::uint32_t j = 0; j < r; ++j) s = F.add(s, F.mul(g(r, j), w[j]));
            t[k + 2] = F.neg(s);
            if (k + 1 < r) {
                for (std::uint32_t i = 0; i < r; ++i) {
                    Elt acc = 0;
                    for (std::uint32_t j = 0; j < r; ++j) acc = F.add(acc, F.mul(g(i, j), w[j]));
                    nw[i] = acc;
                }
                std::swap(w, nw);
            }
        }
        std::vector<Elt> next(r + 2, 0);
        for (std::uint32_t i = 0; i < r + 2; ++i) {
            Elt s = 0;
            for (std::uint32_t j = 0; j <= std::min(i, r); ++j) s = F.add(s, F.mul(t[i - j], vect[j]));
            next[i] = s;
        }
        vect = std::move(next);
    }
    std::reverse(vect.begin(), vect.end());
    return Poly(Fp, std::move(vect));
}

/// dim C_V(g) = d - rank(g - I)
inline std::uint32_t fixed_space_dim(const Mat& g) { return g.dim() - g.minus_scalar(1).rank(); }

/// Dimension of the a-eigenspace of g over the base field.
inline std::uint32_t eigenspace_dim(const Mat& g, Elt a) { return g.dim() - g.minus_scalar(a).rank(); }

/// Evaluates the polynomial f at the matrix g (Horner).
inline Mat poly_at(const Poly& f, const Mat& g) {
    Mat r(g.field(), g.dim());
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        r = r * g;
        for (std::uint32_t j = 0; j < g.dim(); ++j) r.at(j, j) = g.field()->add(r(j, j), f.coeff(i));
    }
    return r;
}

struct EigenEntry {
    Poly field_class;             ///< irreducible factor of the characteristic polynomial
    std::uint32_t per_root_dim = 0;
    std::uint32_t algebraic_mult = 0;
};

/**
 * @brief Geometric eigenspace dimensions of one element over the algebraic closure.
 */
struct EigenProfile {
    std::string element_label;
    std::vector<EigenEntry> entries;
    std::uint32_t emax = 0;

    /// Sum of degree * per-root dimension.
    std::uint32_t total() const {
        std::uint32_t s = 0;
        for (const auto& e : entries) s += static_cast<std::uint32_t>(e.field_class.degree()) * e.per_root_dim;
        return s;
    }

    /// Every eigenspace dimension, one per root, descending.
    std::vector<std::uint32_t> dims() const {
        std::vector<std::uint32_t> out;
        for (const auto& e : entries)
            for (int i = 0; i < e.field_class.degree(); ++i) out.push_back(e.per_root_dim);
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    /// Index notation, e.g. "(16,12^2)".
    std::string to_string() const { return index_notation(dims()); }

    static std::string index_notation(const std::vector<std::uint32_t>& dims) {
        std::string s = "(";
        for (std::size_t i = 0; i < dims.size();) {
            std::size_t j = i;
            while (j < dims.size() && dims[j] == dims[i]) ++j;
            if (i) s += ",";
            s += std::to_string(dims[i]);
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s + ")";
    }
};

namespace detail {

inline std::uint32_t kernel_dim_of_factor(const Mat& g, const Poly& f) {
    return g.dim() - poly_at(f, g).rank();
}

} // namespace detail

/**
 * @brief Eigenspace dimensions of g at every eigenvalue in the algebraic closure.
 *
 * For each irreducible factor of degree e, g is lifted to GF(r^e) and the
 * rank of g - lambda I is taken at the least root lambda. A second root and
 * the identity dim ker f(g) = e * dim E_lambda are checked as well. Beyond
 * the 2^32 field-size limit only the kernel identity is used.
 */
inline EigenProfile eigen_profile(const Mat& g, const std::string& label = {}) {
    EigenProfile prof;
    prof.element_label = label;
    const FieldPtr& F = g.field();
    std::map<std::uint32_t, FieldPtr> ext;
    for (auto& [f, mult] : factor_poly(char_poly(g))) {
        EigenEntry entry;
        entry.field_class = f;
        entry.algebraic_mult = static_cast<std::uint32_t>(mult);
        const std::uint32_t e = static_cast<std::uint32_t>(f.degree());
        const std::uint32_t ker = detail::kernel_dim_of_factor(g, f);
        if (ker % e != 0) throw std::logic_error("kernel dimension not divisible by factor degree");
        const std::uint32_t by_kernel = ker / e;
        bool fits = true;
        std::uint64_t size = 1;
        for (std::uint32_t i = 0; i < F->k() * e; ++i) {
            if (size > (std::uint64_t(1) << 32) / F->p()) {
                fits = false;
                break;
            }
            size *= F->p();
        }
        if (e == 1) {
            entry.per_root_dim = eigenspace_dim(g, F->neg(f.coeff(0)));
        } else if (fits) {
            auto& big = ext[e];
            if (!big) big = Field::make(F->p(), static_cast<std::uint64_t>(F->k()) * e);
            Embedding emb(F, big);
            Mat lifted = g.mapped(emb);
            std::vector<Elt> fc;
            for (auto c : f.coeffs()) fc.push_back(emb(c));
            auto rs = roots(Poly(big, std::move(fc)));
            if (rs.size() != e) throw std::logic_error("factor does not split in its splitting field");
            entry.per_root_dim = eigenspace_dim(lifted, rs[0]);
            if (eigenspace_dim(lifted, rs[1]) != entry.per_root_dim)
                throw std::logic_error("conjugate eigenvalues have different eigenspace dimensions");
        } else {
            entry.per_root_dim = by_kernel;
        }
        if (entry.per_root_dim != by_kernel) throw std::logic_error("eigenspace dimension disagrees with kernel of factor");
        prof.emax = std::max(prof.emax, entry.per_root_dim);
        prof.entries.push_back(std::move(entry));
    }
    return prof;
}

/// kappa -> dim C_V(kappa g), i.e. the kappa^{-1}-eigenspace of g over the base field.
using TwistProfile = std::map<Elt, std::uint32_t>;

inline TwistProfile twist_profile(const Mat& g) {
    const FieldPtr& F = g.field();
    TwistProfile tp;
    for (std::uint64_t k = 1; k < F->q(); ++k) tp[static_cast<Elt>(k)] = 0;
    for (Elt lambda : roots(char_poly(g))) tp[F->inv(lambda)] = eigenspace_dim(g, lambda);
    return tp;
}

} // namespace regorb
