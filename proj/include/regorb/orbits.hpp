#pragma once

#include "regorb/matgroup.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace regorb {

inline constexpr std::uint64_t kDefaultSpaceCap = 10'000'000;

/**
 * @brief The vectors of GF(q)^d, indexed by v = sum v_i q^(d-1-i), so index
 * order is lexicographic order of coordinate tuples.
 */
class VectorSpace {
public:
    VectorSpace(FieldPtr F, std::uint32_t d, std::uint64_t cap = kDefaultSpaceCap) : F_(std::move(F)), d_(d) {
        q_ = F_->q();
        size_ = 1;
        place_.assign(d_, 0);
        for (std::uint32_t i = 0; i < d_; ++i) {
            if (size_ > cap / q_)
                throw Error(ErrorKind::SpaceCapExceeded,
                            "|V| = " + std::to_string(q_) + "^" + std::to_string(d_) + " exceeds " + std::to_string(cap));
            size_ *= q_;
        }
        if (size_ > cap) throw Error(ErrorKind::SpaceCapExceeded, "|V| exceeds " + std::to_string(cap));
        std::uint64_t w = 1;
        for (std::uint32_t i = d_; i-- > 0;) {
            place_[i] = w;
            w *= q_;
        }
    }

    const FieldPtr& field() const { return F_; }
    std::uint32_t dim() const { return d_; }
    std::uint64_t size() const { return size_; }

    void decode(std::uint64_t idx, Elt* v) const {
        for (std::uint32_t i = d_; i-- > 0;) {
            v[i] = static_cast<Elt>(idx % q_);
            idx /= q_;
        }
    }

    std::vector<Elt> decode(std::uint64_t idx) const {
        std::vector<Elt> v(d_);
        decode(idx, v.data());
        return v;
    }

    std::uint64_t encode(const Elt* v) const {
        std::uint64_t idx = 0;
        for (std::uint32_t i = 0; i < d_; ++i) idx = idx * q_ + v[i];
        return idx;
    }

    /// Index of m v for a d x d row-major matrix m.
    std::uint64_t image(const Elt* m, const Elt* v) const {
        std::uint64_t idx = 0;
        const Field& F = *F_;
        if (F.is_prime_field() && q_ < 65536) {
            for (std::uint32_t i = 0; i < d_; ++i) {
                std::uint64_t s = 0;
                const Elt* row = m + static_cast<std::size_t>(i) * d_;
                for (std::uint32_t j = 0; j < d_; ++j) s += static_cast<std::uint64_t>(row[j]) * v[j];
                idx += (s % q_) * place_[i];
            }
            return idx;
        }
        for (std::uint32_t i = 0; i < d_; ++i) {
            Elt s = 0;
            const Elt* row = m + static_cast<std::size_t>(i) * d_;
            for (std::uint32_t j = 0; j < d_; ++j) s = F.add(s, F.mul(row[j], v[j]));
            idx += s * place_[i];
        }
        return idx;
    }

    /// True iff m v = v.
    bool fixes(const Elt* m, const Elt* v) const {
        const Field& F = *F_;
        const bool prime = F.is_prime_field() && q_ < 65536;
        for (std::uint32_t i = 0; i < d_; ++i) {
            const Elt* row = m + static_cast<std::size_t>(i) * d_;
            Elt s;
            if (prime) {
                std::uint64_t acc = 0;
                for (std::uint32_t j = 0; j < d_; ++j) acc += static_cast<std::uint64_t>(row[j]) * v[j];
                s = static_cast<Elt>(acc % q_);
            } else {
                s = 0;
                for (std::uint32_t j = 0; j < d_; ++j) s = F.add(s, F.mul(row[j], v[j]));
            }
            if (s != v[i]) return false;
        }
        return true;
    }

private:
    FieldPtr F_;
    std::uint32_t d_;
    std::uint64_t q_ = 0;
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> place_;
};

/// Least b >= 0 with (r^d)^b >= |G|.
inline std::uint64_t b_lower(const BigInt& group_order, std::uint64_t r, std::uint64_t d) {
    if (group_order < 1) throw Error(ErrorKind::InvalidArgument, "group order must be positive");
    const BigInt v = ipow(r, d);
    if (v < 2) {
        if (group_order == 1) return 0;
        throw Error(ErrorKind::InvalidArgument, "a nontrivial group cannot act faithfully on a zero space");
    }
    std::uint64_t b = 0;
    BigInt p = 1;
    while (p < group_order) {
        p *= v;
        ++b;
    }
    return b;
}

struct Orbit {
    std::uint64_t rep = 0;  ///< least index in the orbit
    std::uint64_t size = 0;
};

namespace detail {

/// Generator matrices as flat entry arrays.
inline std::vector<std::vector<Elt>> generator_entries(const GroupEnumeration& G) {
    std::vector<std::vector<Elt>> out;
    for (const auto& g : G.generators()) out.push_back(g.entries());
    return out;
}

/// BFS over generator images from start, marking visited; returns the orbit size.
inline std::uint64_t bfs_orbit(const VectorSpace& V, const std::vector<std::vector<Elt>>& gens, std::uint64_t start,
                               std::vector<bool>& visited, std::vector<std::uint64_t>& queue) {
    std::vector<Elt> v(V.dim());
    queue.clear();
    queue.push_back(start);
    visited[start] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        V.decode(queue[h], v.data());
        for (const auto& g : gens) {
            std::uint64_t w = V.image(g.data(), v.data());
            if (!visited[w]) {
                visited[w] = true;
                queue.push_back(w);
            }
        }
    }
    return queue.size();
}

} // namespace detail

/// Orbits of G on V, in increasing order of their least element.
inline std::vector<Orbit> orbit_partition(const GroupEnumeration& G, std::uint64_t space_cap = kDefaultSpaceCap) {
    VectorSpace V(G.field(), G.dim(), space_cap);
    auto gens = detail::generator_entries(G);
    std::vector<bool> visited(V.size(), false);
    std::vector<std::uint64_t> queue;
    std::vector<Orbit> out;
    for (std::uint64_t i = 0; i < V.size(); ++i)
        if (!visited[i]) out.push_back({i, detail::bfs_orbit(V, gens, i, visited, queue)});
    return out;
}

/// Size of the orbit of the vector with index idx.
inline std::uint64_t orbit_size(const GroupEnumeration& G, std::uint64_t idx, std::uint64_t space_cap = kDefaultSpaceCap) {
    VectorSpace V(G.field(), G.dim(), space_cap);
    std::vector<bool> visited(V.size(), false);
    std::vector<std::uint64_t> queue;
    return detail::bfs_orbit(V, detail::generator_entries(G), idx, visited, queue);
}

/// Indices (into G) of the elements fixing the vector v.
inline std::vector<std::uint64_t> stabilizer_elements(const GroupEnumeration& G, const VectorSpace& V, std::uint64_t idx) {
    std::vector<Elt> v = V.decode(idx);
    std::vector<Elt> m(static_cast<std::size_t>(G.dim()) * G.dim());
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < G.count(); ++i) {
        G.load(i, m.data());
        if (V.fixes(m.data(), v.data())) out.push_back(i);
    }
    return out;
}

inline std::uint64_t stabilizer_order(const GroupEnumeration& G, std::uint64_t idx, std::uint64_t space_cap = kDefaultSpaceCap) {
    VectorSpace V(G.field(), G.dim(), space_cap);
    return stabilizer_elements(G, V, idx).size();
}

namespace detail {

inline bool has_trivial_stabilizer(const GroupEnumeration& G, const VectorSpace& V, std::uint64_t idx,
                                   std::vector<Elt>& m, std::vector<Elt>& v) {
    V.decode(idx, v.data());
    for (std::uint64_t i = 1; i < G.count(); ++i) {
        G.load(i, m.data());
        if (V.fixes(m.data(), v.data())) return false;
    }
    return true;
}

inline std::optional<std::uint64_t> regular_scan_parallel(const GroupEnumeration& G, const VectorSpace& V,
                                                          unsigned threads) {
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::vector<std::uint64_t> local(threads, std::numeric_limits<std::uint64_t>::max());
    auto worker = [&](unsigned t) {
        std::vector<Elt> m(static_cast<std::size_t>(G.dim()) * G.dim()), v(G.dim());
        for (std::uint64_t c = t; c < V.size(); c += threads) {
            if (c > best.load(std::memory_order_relaxed)) return;
            if (has_trivial_stabilizer(G, V, c, m, v)) {
                local[t] = c;
                std::uint64_t cur = best.load();
                while (c < cur && !best.compare_exchange_weak(cur, c)) {
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    std::uint64_t result = *std::min_element(local.begin(), local.end());
    if (result == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return result;
}

} // namespace detail

/**
 * @brief Lexicographically least vector with trivial stabilizer, if any.
 *
 * The serial scan takes the least unvisited vector, computes its orbit by
 * BFS over the generators and accepts when the orbit has |G| elements. With
 * threads > 1 the candidates are striped across workers, each testing its
 * own candidates for a trivial stabilizer directly, and the least hit wins.
 */
inline std::optional<std::vector<Elt>> regular_orbit_search(const GroupEnumeration& G,
                                                            std::uint64_t space_cap = kDefaultSpaceCap,
                                                            unsigned threads = 1) {
    VectorSpace V(G.field(), G.dim(), space_cap);
    if (G.count() > V.size()) return std::nullopt;
    if (threads > 1) {
        auto hit = detail::regular_scan_parallel(G, V, threads);
        if (!hit) return std::nullopt;
        return V.decode(*hit);
    }
    auto gens = detail::generator_entries(G);
    std::vector<bool> visited(V.size(), false);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t i = 0; i < V.size(); ++i) {
        if (visited[i]) continue;
        if (detail::bfs_orbit(V, gens, i, visited, queue) == G.count()) return V.decode(i);
    }
    return std::nullopt;
}

struct BaseResult {
    std::uint64_t size = 0;
    std::vector<std::vector<Elt>> base;  ///< one minimal base, as coordinate vectors
};

namespace detail {

class BaseSearch {
public:
    BaseSearch(const GroupEnumeration& G, const VectorSpace& V) : G_(G), V_(V), n2_(static_cast<std::size_t>(G.dim()) * G.dim()) {}

    /// Tries to extend to a base using at most rem further points, S being the current pointwise stabilizer.
    bool search(const std::vector<std::uint64_t>& S, std::uint64_t rem) {
        if (S.size() == 1) return true;
        if (rem == 0) return false;
        if (exceeds_power(S.size(), rem)) return false;
        std::vector<Orbit> orbits = partition(S);
        for (const auto& o : orbits) {
            if (o.size == S.size()) {
                chosen_.push_back(o.rep);
                return true;
            }
        }
        if (rem == 1) return false;
        // smallest stabilizer first
        std::stable_sort(orbits.begin(), orbits.end(), [](const Orbit& a, const Orbit& b) { return a.size > b.size; });
        for (const auto& o : orbits) {
            if (o.size == 1) break;
            if (exceeds_power(S.size() / o.size, rem - 1)) continue;
            std::vector<std::uint64_t> sub = stabilizer_within(S, o.rep);
            chosen_.push_back(o.rep);
            if (search(sub, rem - 1)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    /// First level: orbits of G from its generators, stabilizers by scanning G.
    bool search_top(std::uint64_t rem) {
        if (G_.count() == 1) return true;
        if (rem == 0 || exceeds_power(G_.count(), rem)) return false;
        if (!top_) {
            top_ = std::vector<Orbit>{};
            auto gens = generator_entries(G_);
            std::vector<bool> visited(V_.size(), false);
            std::vector<std::uint64_t> queue;
            for (std::uint64_t i = 0; i < V_.size(); ++i)
                if (!visited[i]) top_->push_back({i, bfs_orbit(V_, gens, i, visited, queue)});
            std::stable_sort(top_->begin(), top_->end(), [](const Orbit& a, const Orbit& b) { return a.size > b.size; });
        }
        for (const auto& o : *top_) {
            if (o.size == G_.count()) {
                chosen_ = {o.rep};
                return true;
            }
        }
        if (rem == 1) return false;
        for (const auto& o : *top_) {
            if (o.size == 1) break;
            if (exceeds_power(G_.count() / o.size, rem - 1)) continue;
            chosen_ = {o.rep};
            if (search(stabilizer_elements(G_, V_, o.rep), rem - 1)) return true;
        }
        chosen_.clear();
        return false;
    }

    const std::vector<std::uint64_t>& chosen() const { return chosen_; }

private:
    bool exceeds_power(std::uint64_t s, std::uint64_t rem) const {
        long double bound = 1;
        for (std::uint64_t i = 0; i < rem; ++i) {
            bound *= static_cast<long double>(V_.size());
            if (bound >= static_cast<long double>(s)) return false;
        }
        return static_cast<long double>(s) > bound;
    }

    std::vector<Orbit> partition(const std::vector<std::uint64_t>& S) {
        load_all(S);
        std::vector<bool> visited(V_.size(), false);
        std::vector<Orbit> out;
        std::vector<Elt> v(G_.dim());
        for (std::uint64_t w = 0; w < V_.size(); ++w) {
            if (visited[w]) continue;
            V_.decode(w, v.data());
            std::uint64_t count = 0;
            for (std::size_t s = 0; s < S.size(); ++s) {
                std::uint64_t u = V_.image(mats_.data() + s * n2_, v.data());
                if (!visited[u]) {
                    visited[u] = true;
                    ++count;
                }
            }
            out.push_back({w, count});
        }
        return out;
    }

    std::vector<std::uint64_t> stabilizer_within(const std::vector<std::uint64_t>& S, std::uint64_t w) {
        load_all(S);
        std::vector<Elt> v = V_.decode(w);
        std::vector<std::uint64_t> out;
        for (std::size_t s = 0; s < S.size(); ++s)
            if (V_.fixes(mats_.data() + s * n2_, v.data())) out.push_back(S[s]);
        return out;
    }

    void load_all(const std::vector<std::uint64_t>& S) {
        if (loaded_ == S) return;
        mats_.resize(S.size() * n2_);
        for (std::size_t s = 0; s < S.size(); ++s) G_.load(S[s], mats_.data() + s * n2_);
        loaded_ = S;
    }

    const GroupEnumeration& G_;
    const VectorSpace& V_;
    std::size_t n2_;
    std::optional<std::vector<Orbit>> top_;
    std::vector<std::uint64_t> chosen_;
    std::vector<Elt> mats_;
    std::vector<std::uint64_t> loaded_;
};

} // namespace detail

/**
 * @brief Exact base size by iterative deepening from the counting lower
 * bound. At each depth the search branches over orbit representatives of
 * the current pointwise stabilizer, held as an explicit list of elements.
 */
inline BaseResult base_size_exact(const GroupEnumeration& G, std::uint64_t space_cap = kDefaultSpaceCap) {
    VectorSpace V(G.field(), G.dim(), space_cap);
    BaseResult out;
    if (G.count() == 1) return out;
    detail::BaseSearch search(G, V);
    std::uint64_t lo = std::max<std::uint64_t>(1, b_lower(G.order(), G.field()->q(), G.dim()));
    for (std::uint64_t c = lo; c <= G.dim(); ++c) {
        if (search.search_top(c)) {
            out.size = search.chosen().size();
            for (auto idx : search.chosen()) out.base.push_back(V.decode(idx));
            return out;
        }
    }
    throw std::logic_error("no base of size at most dim V; the group does not act faithfully");
}

struct CoverageReport {
    std::uint64_t covered = 0;
    std::uint64_t total = 0;
    std::uint64_t subgroups = 0;  ///< cyclic subgroups <x̄> of prime order scanned

    bool regular_orbit_exists() const { return covered < total; }
};

/**
 * @brief Marks every vector fixed by some element of projective prime order.
 *
 * One element is taken from each subgroup <x̄> of prime order in G/F(G); the
 * vectors fixed by xz over z in F(G) are its eigenspaces at z^{-1}, and
 * the other generators of <x̄> fix the same vectors.
 */
inline CoverageReport covering_scan(const GroupEnumeration& G, std::uint64_t space_cap = kDefaultSpaceCap) {
    VectorSpace V(G.field(), G.dim(), space_cap);
    CoverageReport rep;
    rep.total = V.size();
    const FieldPtr& F = G.field();
    const std::uint32_t d = G.dim();
    std::vector<bool> mark(V.size(), false);
    const std::uint64_t hsize = G.projective_count();
    if (hsize == 1) return rep;
    // the zero vector is fixed by everything
    mark[0] = true;
    rep.covered = 1;
    const auto primes = prime_divisors(hsize);
    std::vector<Mat> scalars;
    for (auto z : G.scalar_values()) scalars.push_back(Mat::scalar(F, d, z));
    std::vector<bool> done(G.count(), false);
    std::vector<Elt> w(d);
    for (std::uint64_t i = 0; i < G.count(); ++i) {
        if (done[i]) continue;
        Mat x = G.element(i);
        if (x.is_scalar()) continue;
        std::uint64_t a = 0;
        for (auto p : primes)
            if (x.pow(p).is_scalar()) {
                a = p;
                break;
            }
        if (!a) continue;
        ++rep.subgroups;
        Mat y = x;
        for (std::uint64_t j = 1; j < a; ++j, y = y * x)
            for (const auto& z : scalars) done[*G.find(y * z)] = true;
        for (auto zv : G.scalar_values()) {
            auto basis = nullspace(x.minus_scalar(F->inv(zv)));
            const std::size_t k = basis.size();
            if (k == 0) continue;
            // all F-combinations of the basis, odometer style
            std::vector<Elt> coef(k, 0);
            for (;;) {
                std::fill(w.begin(), w.end(), 0);
                for (std::size_t b = 0; b < k; ++b)
                    if (coef[b])
                        for (std::uint32_t t = 0; t < d; ++t) w[t] = F->add(w[t], F->mul(coef[b], basis[b][t]));
                std::uint64_t idx = V.encode(w.data());
                if (!mark[idx]) {
                    mark[idx] = true;
                    ++rep.covered;
                }
                std::size_t b = 0;
                while (b < k && ++coef[b] == F->q()) coef[b++] = 0;
                if (b == k) break;
            }
        }
    }
    return rep;
}

} // namespace regorb
