#pragma once

#include "regorb/mat.hpp"

#include <cstdint>
#include <cstring>
#include <optional>
#include <utility>
#include <vector>

namespace regorb {

inline constexpr std::uint64_t kDefaultGroupCap = 10'000'000;

/**
 * @brief Least a >= 1 with g^a scalar, together with that scalar.
 */
inline std::pair<std::uint64_t, Elt> projective_order(const Mat& g) {
    Mat x = g;
    Elt z;
    for (std::uint64_t a = 1;; ++a) {
        if (x.is_scalar(&z)) return {a, z};
        x = x * g;
        if (a > (std::uint64_t(1) << 32))
            throw Error(ErrorKind::NotInvertible, "matrix has no finite projective order");
    }
}

/// Multiplicative order of an invertible matrix.
inline std::uint64_t element_order(const Mat& g) {
    auto [a, z] = projective_order(g);
    return a * g.field()->mult_order(z);
}

namespace detail {

inline std::uint64_t hash_bytes(const std::uint8_t* p, std::size_t n) {
    std::uint64_t h = 0x243f6a8885a308d3ULL ^ n;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        std::uint64_t w;
        std::memcpy(&w, p + i, 8);
        h = (h ^ w) * 0x9fb21c651e98df25ULL;
        h ^= h >> 29;
    }
    std::uint64_t tail = 0;
    for (std::size_t j = 0; i < n; ++i, ++j) tail |= static_cast<std::uint64_t>(p[i]) << (8 * j);
    h = (h ^ tail) * 0x9fb21c651e98df25ULL;
    h ^= h >> 32;
    return h;
}

} // namespace detail

/**
 * @brief A finite matrix group with every element stored.
 *
 * Elements live in a packed arena (1, 2 or 4 bytes per entry) in BFS
 * insertion order; an open-addressing table maps matrices to indices.
 * Index 0 is the identity.
 */
class GroupEnumeration {
public:
    /**
     * @brief Breadth-first closure of the generators.
     *
     * Each stored element is multiplied on the right by every generator in
     * list order, so the element order is reproducible.
     */
    static GroupEnumeration enumerate(const std::vector<Mat>& gens, std::uint64_t cap = kDefaultGroupCap,
                                      FieldPtr field = nullptr, std::uint32_t dim = 0) {
        if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be positive");
        if (gens.empty() && !field) throw Error(ErrorKind::InvalidArgument, "need generators or a field and dimension");
        GroupEnumeration G;
        G.field_ = field ? field : gens.front().field();
        G.d_ = field ? dim : gens.front().dim();
        for (const auto& g : gens) {
            if (!g.field()->same_as(*G.field_) || g.dim() != G.d_)
                throw Error(ErrorKind::FieldMismatch, "generators must share one field and dimension");
            if (!g.invertible()) throw Error(ErrorKind::SingularGenerator, "generator is singular");
        }
        G.gens_ = gens;
        G.init_storage();
        const std::uint32_t n2 = G.d_ * G.d_;
        std::vector<Elt> cur(n2), prod(n2);
        G.insert(Mat::identity(G.field_, G.d_).entries().data());
        if (G.count() > cap) throw Error(ErrorKind::CapExceeded, "group order exceeds cap");
        for (std::uint64_t i = 0; i < G.count(); ++i) {
            G.load(i, cur.data());
            for (const auto& g : gens) {
                Mat::multiply(*G.field_, G.d_, cur.data(), g.entries().data(), prod.data());
                if (G.find_raw(prod.data()) < 0) {
                    if (G.count() >= cap)
                        throw Error(ErrorKind::CapExceeded, "group order exceeds cap of " + std::to_string(cap));
                    G.insert(prod.data());
                }
            }
        }
        G.find_scalars();
        return G;
    }

    const FieldPtr& field() const { return field_; }
    std::uint32_t dim() const { return d_; }
    const std::vector<Mat>& generators() const { return gens_; }
    std::uint64_t count() const { return count_; }
    BigInt order() const { return BigInt(count_); }

    Mat element(std::uint64_t i) const {
        std::vector<Elt> e(static_cast<std::size_t>(d_) * d_);
        load(i, e.data());
        return Mat(field_, d_, std::move(e));
    }

    /// Unpacks element i into out (d*d entries).
    void load(std::uint64_t i, Elt* out) const {
        const std::size_t n2 = static_cast<std::size_t>(d_) * d_;
        const std::uint8_t* src = arena_.data() + i * stride_;
        switch (width_) {
        case 1:
            for (std::size_t j = 0; j < n2; ++j) out[j] = src[j];
            break;
        case 2:
            for (std::size_t j = 0; j < n2; ++j) {
                std::uint16_t v;
                std::memcpy(&v, src + 2 * j, 2);
                out[j] = v;
            }
            break;
        default:
            std::memcpy(out, src, n2 * 4);
        }
    }

    /// Index of the matrix, if it is in the group.
    std::optional<std::uint64_t> find(const Mat& m) const {
        if (m.dim() != d_) return std::nullopt;
        std::int64_t i = find_raw(m.entries().data());
        if (i < 0) return std::nullopt;
        return static_cast<std::uint64_t>(i);
    }

    std::int64_t find_raw(const Elt* e) const {
        pack(e, scratch_.data());
        std::uint64_t h = detail::hash_bytes(scratch_.data(), stride_) & mask_;
        for (;;) {
            std::uint32_t slot = table_[h];
            if (slot == 0) return -1;
            if (std::memcmp(arena_.data() + static_cast<std::size_t>(slot - 1) * stride_, scratch_.data(), stride_) == 0)
                return slot - 1;
            h = (h + 1) & mask_;
        }
    }

    std::uint64_t multiply(std::uint64_t i, std::uint64_t j) const {
        const std::size_t n2 = static_cast<std::size_t>(d_) * d_;
        std::vector<Elt> a(n2), b(n2), c(n2);
        load(i, a.data());
        load(j, b.data());
        Mat::multiply(*field_, d_, a.data(), b.data(), c.data());
        return static_cast<std::uint64_t>(find_raw(c.data()));
    }

    /// Indices of the scalar matrices in G (the subgroup F(G) under the standing hypotheses).
    const std::vector<std::uint64_t>& scalar_subgroup() const { return scalars_; }
    const std::vector<Elt>& scalar_values() const { return scalar_values_; }

    /// |G / F(G)|
    std::uint64_t projective_count() const { return count_ / scalars_.size(); }

    /// Image of a column vector (coordinates) under element i.
    void apply(std::uint64_t i, const Elt* v, Elt* out) const {
        const std::size_t n2 = static_cast<std::size_t>(d_) * d_;
        thread_local std::vector<Elt> m;
        m.resize(n2);
        load(i, m.data());
        const Field& F = *field_;
        for (std::uint32_t r = 0; r < d_; ++r) {
            Elt s = 0;
            for (std::uint32_t c = 0; c < d_; ++c) s = F.add(s, F.mul(m[r * d_ + c], v[c]));
            out[r] = s;
        }
    }

    std::size_t memory_bytes() const { return arena_.capacity() + table_.capacity() * 4; }

private:
    void init_storage() {
        width_ = field_->q() <= 256 ? 1 : field_->q() <= 65536 ? 2 : 4;
        stride_ = static_cast<std::size_t>(d_) * d_ * width_;
        if (stride_ == 0) stride_ = 1;
        scratch_.assign(stride_, 0);
        table_.assign(1024, 0);
        mask_ = table_.size() - 1;
    }

    void pack(const Elt* e, std::uint8_t* out) const {
        const std::size_t n2 = static_cast<std::size_t>(d_) * d_;
        if (n2 == 0) {
            out[0] = 0;
            return;
        }
        switch (width_) {
        case 1:
            for (std::size_t j = 0; j < n2; ++j) out[j] = static_cast<std::uint8_t>(e[j]);
            break;
        case 2:
            for (std::size_t j = 0; j < n2; ++j) {
                std::uint16_t v = static_cast<std::uint16_t>(e[j]);
                std::memcpy(out + 2 * j, &v, 2);
            }
            break;
        default:
            std::memcpy(out, e, n2 * 4);
        }
    }

    void insert(const Elt* e) {
        if ((count_ + 1) * 2 > table_.size()) rehash(table_.size() * 2);
        std::size_t off = arena_.size();
        arena_.resize(off + stride_);
        pack(e, arena_.data() + off);
        place(count_);
        ++count_;
    }

    void place(std::uint64_t idx) {
        std::uint64_t h = detail::hash_bytes(arena_.data() + idx * stride_, stride_) & mask_;
        while (table_[h] != 0) h = (h + 1) & mask_;
        table_[h] = static_cast<std::uint32_t>(idx + 1);
    }

    void rehash(std::size_t size) {
        table_.assign(size, 0);
        mask_ = size - 1;
        for (std::uint64_t i = 0; i < count_; ++i) place(i);
    }

    void find_scalars() {
        const std::size_t n2 = static_cast<std::size_t>(d_) * d_;
        std::vector<Elt> e(n2);
        for (std::uint64_t i = 0; i < count_; ++i) {
            load(i, e.data());
            bool scalar = true;
            for (std::uint32_t r = 0; r < d_ && scalar; ++r)
                for (std::uint32_t c = 0; c < d_; ++c)
                    if (e[r * d_ + c] != (r == c ? e[0] : 0)) {
                        scalar = false;
                        break;
                    }
            if (scalar) {
                scalars_.push_back(i);
                scalar_values_.push_back(d_ ? e[0] : 1);
            }
        }
    }

    FieldPtr field_;
    std::uint32_t d_ = 0;
    std::vector<Mat> gens_;
    std::size_t width_ = 1;
    std::size_t stride_ = 1;
    std::vector<std::uint8_t> arena_;
    std::vector<std::uint32_t> table_;
    std::uint64_t mask_ = 0;
    std::uint64_t count_ = 0;
    mutable std::vector<std::uint8_t> scratch_;
    std::vector<std::uint64_t> scalars_;
    std::vector<Elt> scalar_values_;
};

/**
 * @brief Conjugacy data for one H-class of projective prime order, H = G/F(G).
 */
struct ClassDatum {
    Mat rep;
    std::uint64_t rep_index = 0;
    BigInt class_size;      ///< |x̄^H|
    std::uint64_t elt_order = 1;
    std::uint64_t proj_order = 1;
    Elt scalar = 1;         ///< rep^proj_order = scalar * I
    bool unipotent = false; ///< proj_order equals the module characteristic
};

/**
 * @brief One datum per H-class of elements of projective prime order.
 *
 * Each class is the closure of the coset {xz : z in F(G)} under conjugation
 * by the generators; its H-size is the number of G-elements found divided
 * by |F(G)|. Representatives are the first class members in BFS order.
 */
inline std::vector<ClassDatum> prime_projective_classes(const GroupEnumeration& G) {
    std::vector<ClassDatum> out;
    const std::uint64_t n = G.count();
    const std::uint64_t zsize = G.scalar_subgroup().size();
    const std::uint64_t hsize = n / zsize;
    if (hsize == 1) return out;
    const auto primes = prime_divisors(hsize);
    const FieldPtr& F = G.field();
    const std::uint32_t d = G.dim();

    // projective order (when prime) for every element
    std::vector<std::uint32_t> prime_of(n, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        Mat g = G.element(i);
        if (g.is_scalar()) continue;
        for (auto a : primes) {
            if (g.pow(a).is_scalar()) {
                prime_of[i] = static_cast<std::uint32_t>(a);
                break;
            }
        }
    }

    std::vector<Mat> gen_inv;
    for (const auto& g : G.generators()) gen_inv.push_back(*g.inverse());
    std::vector<Mat> scalars;
    for (auto v : G.scalar_values()) scalars.push_back(Mat::scalar(F, d, v));

    std::vector<bool> seen(n, false);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!prime_of[i] || seen[i]) continue;
        Mat x = G.element(i);
        std::vector<std::uint64_t> members;
        for (const auto& z : scalars) {
            std::uint64_t j = *G.find(x * z);
            if (!seen[j]) {
                seen[j] = true;
                members.push_back(j);
            }
        }
        for (std::size_t m = 0; m < members.size(); ++m) {
            Mat y = G.element(members[m]);
            for (std::size_t k = 0; k < gen_inv.size(); ++k) {
                Mat c = gen_inv[k] * y * G.generators()[k];
                std::uint64_t j = *G.find(c);
                if (!seen[j]) {
                    seen[j] = true;
                    members.push_back(j);
                }
            }
        }
        ClassDatum cd;
        cd.rep = x;
        cd.rep_index = i;
        cd.class_size = BigInt(members.size() / zsize);
        cd.proj_order = prime_of[i];
        cd.scalar = 1;
        x.pow(cd.proj_order).is_scalar(&cd.scalar);
        cd.elt_order = element_order(x);
        cd.unipotent = cd.proj_order == F->p();
        out.push_back(std::move(cd));
    }
    return out;
}

} // namespace regorb
