#pragma once

#include "regorb/gfield.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace regorb {

/// Square matrix over a Field, row-major. Acts on column vectors.
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr f, std::uint32_t d) : f_(std::move(f)), d_(d), e_(static_cast<std::size_t>(d) * d, 0) {}
    Mat(FieldPtr f, std::uint32_t d, std::vector<Elt> entries) : f_(std::move(f)), d_(d), e_(std::move(entries)) {
        if (e_.size() != static_cast<std::size_t>(d) * d)
            throw Error(ErrorKind::InvalidArgument, "matrix needs d*d entries");
        for (auto x : e_)
            if (x >= f_->q()) throw Error(ErrorKind::InvalidArgument, "entry outside the field");
    }

    static Mat identity(FieldPtr f, std::uint32_t d) { return scalar(std::move(f), d, 1); }

    static Mat scalar(FieldPtr f, std::uint32_t d, Elt a) {
        Mat m(std::move(f), d);
        for (std::uint32_t i = 0; i < d; ++i) m.at(i, i) = a;
        return m;
    }

    const FieldPtr& field() const { return f_; }
    std::uint32_t dim() const { return d_; }
    const std::vector<Elt>& entries() const { return e_; }
    Elt operator()(std::uint32_t i, std::uint32_t j) const { return e_[static_cast<std::size_t>(i) * d_ + j]; }
    Elt& at(std::uint32_t i, std::uint32_t j) { return e_[static_cast<std::size_t>(i) * d_ + j]; }

    bool operator==(const Mat& o) const { return d_ == o.d_ && e_ == o.e_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const {
        Mat r(f_, d_);
        multiply(*f_, d_, e_.data(), o.e_.data(), r.e_.data());
        return r;
    }

    /// Writes a*b into out (all d x d, row-major). out must not alias a or b.
    static void multiply(const Field& F, std::uint32_t d, const Elt* a, const Elt* b, Elt* out) {
        if (F.is_prime_field() && F.p() < 65536) {
            const std::uint64_t p = F.p();
            for (std::uint32_t i = 0; i < d; ++i) {
                for (std::uint32_t j = 0; j < d; ++j) {
                    std::uint64_t s = 0;
                    for (std::uint32_t k = 0; k < d; ++k) s += static_cast<std::uint64_t>(a[i * d + k]) * b[k * d + j];
                    out[i * d + j] = static_cast<Elt>(s % p);
                }
            }
            return;
        }
        for (std::uint32_t i = 0; i < d; ++i) {
            for (std::uint32_t j = 0; j < d; ++j) {
                Elt s = 0;
                for (std::uint32_t k = 0; k < d; ++k) s = F.add(s, F.mul(a[i * d + k], b[k * d + j]));
                out[i * d + j] = s;
            }
        }
    }

    Mat pow(std::uint64_t e) const {
        Mat r = identity(f_, d_);
        Mat b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// True iff the matrix is a*I; the scalar is written to *a.
    bool is_scalar(Elt* a = nullptr) const {
        if (d_ == 0) {
            if (a) *a = 1;
            return true;
        }
        Elt s = e_[0];
        for (std::uint32_t i = 0; i < d_; ++i)
            for (std::uint32_t j = 0; j < d_; ++j)
                if ((*this)(i, j) != (i == j ? s : 0)) return false;
        if (a) *a = s;
        return true;
    }

    bool is_identity() const {
        Elt s;
        return is_scalar(&s) && s == 1;
    }

    /// g - a I
    Mat minus_scalar(Elt a) const {
        Mat r = *this;
        for (std::uint32_t i = 0; i < d_; ++i) r.at(i, i) = f_->sub(r(i, i), a);
        return r;
    }

    Mat scaled(Elt a) const {
        Mat r = *this;
        for (auto& x : r.e_) x = f_->mul(x, a);
        return r;
    }

    Mat transpose() const {
        Mat r(f_, d_);
        for (std::uint32_t i = 0; i < d_; ++i)
            for (std::uint32_t j = 0; j < d_; ++j) r.at(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<Elt> apply(const std::vector<Elt>& v) const {
        std::vector<Elt> r(d_, 0);
        for (std::uint32_t i = 0; i < d_; ++i) {
            Elt s = 0;
            for (std::uint32_t j = 0; j < d_; ++j) s = f_->add(s, f_->mul((*this)(i, j), v[j]));
            r[i] = s;
        }
        return r;
    }

    std::uint32_t rank() const { return rank_of(*f_, e_, d_, d_); }

    std::optional<Mat> inverse() const {
        // Gauss-Jordan on [A | I]
        const Field& F = *f_;
        std::uint32_t n = d_;
        std::vector<Elt> a = e_;
        Mat inv = identity(f_, n);
        for (std::uint32_t c = 0; c < n; ++c) {
            std::uint32_t piv = n;
            for (std::uint32_t r = c; r < n; ++r)
                if (a[r * n + c]) {
                    piv = r;
                    break;
                }
            if (piv == n) return std::nullopt;
            if (piv != c) {
                for (std::uint32_t j = 0; j < n; ++j) {
                    std::swap(a[piv * n + j], a[c * n + j]);
                    std::swap(inv.at(piv, j), inv.at(c, j));
                }
            }
            Elt s = F.inv(a[c * n + c]);
            for (std::uint32_t j = 0; j < n; ++j) {
                a[c * n + j] = F.mul(a[c * n + j], s);
                inv.at(c, j) = F.mul(inv(c, j), s);
            }
            for (std::uint32_t r = 0; r < n; ++r) {
                if (r == c || !a[r * n + c]) continue;
                Elt m = a[r * n + c];
                for (std::uint32_t j = 0; j < n; ++j) {
                    a[r * n + j] = F.sub(a[r * n + j], F.mul(m, a[c * n + j]));
                    inv.at(r, j) = F.sub(inv(r, j), F.mul(m, inv(c, j)));
                }
            }
        }
        return inv;
    }

    bool invertible() const { return rank() == d_; }

    /// Entrywise image under a field embedding.
    Mat mapped(const Embedding& emb) const {
        Mat r(emb.target(), d_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = emb(e_[i]);
        return r;
    }

    /// Rank of a rows x cols matrix by Gaussian elimination.
    static std::uint32_t rank_of(const Field& F, std::vector<Elt> a, std::uint32_t rows, std::uint32_t cols) {
        std::uint32_t rank = 0;
        for (std::uint32_t c = 0; c < cols && rank < rows; ++c) {
            std::uint32_t piv = rows;
            for (std::uint32_t r = rank; r < rows; ++r)
                if (a[static_cast<std::size_t>(r) * cols + c]) {
                    piv = r;
                    break;
                }
            if (piv == rows) continue;
            if (piv != rank)
                for (std::uint32_t j = c; j < cols; ++j)
                    std::swap(a[static_cast<std::size_t>(piv) * cols + j], a[static_cast<std::size_t>(rank) * cols + j]);
            Elt s = F.inv(a[static_cast<std::size_t>(rank) * cols + c]);
            for (std::uint32_t r = rank + 1; r < rows; ++r) {
                Elt v = a[static_cast<std::size_t>(r) * cols + c];
                if (!v) continue;
                Elt m = F.mul(v, s);
                for (std::uint32_t j = c; j < cols; ++j)
                    a[static_cast<std::size_t>(r) * cols + j] =
                        F.sub(a[static_cast<std::size_t>(r) * cols + j], F.mul(m, a[static_cast<std::size_t>(rank) * cols + j]));
            }
            ++rank;
        }
        return rank;
    }

    std::string to_string() const {
        std::string s;
        for (std::uint32_t i = 0; i < d_; ++i) {
            s += "[";
            for (std::uint32_t j = 0; j < d_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
            s += "]";
        }
        return s;
    }

private:
    FieldPtr f_;
    std::uint32_t d_ = 0;
    std::vector<Elt> e_;
};

/// Basis (as rows) of the solution space {v : m v = 0}.
inline std::vector<std::vector<Elt>> nullspace(const Mat& m) {
    const Field& F = *m.field();
    std::uint32_t n = m.dim();
    std::vector<Elt> a = m.entries();
    std::vector<std::uint32_t> pivots;
    std::uint32_t rank = 0;
    for (std::uint32_t c = 0; c < n && rank < n; ++c) {
        std::uint32_t piv = n;
        for (std::uint32_t r = rank; r < n; ++r)
            if (a[r * n + c]) {
                piv = r;
                break;
            }
        if (piv == n) continue;
        for (std::uint32_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[rank * n + j]);
        Elt s = F.inv(a[rank * n + c]);
        for (std::uint32_t j = 0; j < n; ++j) a[rank * n + j] = F.mul(a[rank * n + j], s);
        for (std::uint32_t r = 0; r < n; ++r) {
            if (r == rank || !a[r * n + c]) continue;
            Elt mul = a[r * n + c];
            for (std::uint32_t j = 0; j < n; ++j) a[r * n + j] = F.sub(a[r * n + j], F.mul(mul, a[rank * n + j]));
        }
        pivots.push_back(c);
        ++rank;
    }
    std::vector<std::vector<Elt>> basis;
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::uint32_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Elt> v(n, 0);
        v[f] = 1;
        for (std::uint32_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(a[i * n + f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace regorb
