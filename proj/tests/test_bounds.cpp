#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace regorb;
using testing_support::load_group;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

std::vector<std::uint64_t> prime_powers(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q <= limit; ++q) {
        auto f = factorize(q);
        if (f.size() == 1) out.push_back(q);
    }
    return out;
}

const std::vector<Family> kAllFamilies{Family::Linear,         Family::Unitary,         Family::Symplectic,
                                       Family::OrthogonalPlus, Family::OrthogonalMinus, Family::OrthogonalOdd,
                                       Family::Triality,       Family::E6,              Family::E7,
                                       Family::E8,             Family::F4,              Family::G2,
                                       Family::Suzuki,         Family::Ree,             Family::TwistedE6,
                                       Family::ReeF4};

const std::vector<ElementKind> kAllKinds{
    ElementKind::inner_involution, ElementKind::transvection,   ElementKind::reflection,
    ElementKind::field_auto_inv,   ElementKind::graph_auto_inv, ElementKind::graph_field_inv,
    ElementKind::diagonal_inv,     ElementKind::odd_semisimple, ElementKind::unipotent,
    ElementKind::generic};

std::vector<std::uint64_t> dims_for(Family f) {
    switch (f) {
    case Family::Linear: return {2, 3, 4, 5, 6};
    case Family::Unitary: return {3, 4, 5, 6};
    case Family::Symplectic: return {4, 6, 8};
    case Family::OrthogonalPlus:
    case Family::OrthogonalMinus: return {8, 10};
    case Family::OrthogonalOdd: return {7, 9};
    default: return {0};
    }
}

}  // namespace

TEST(MinimalDegree, TableValues) {
    EXPECT_EQ(d1_lookup({Family::Linear, 2, 9}, 2), 3);
    EXPECT_EQ(d1_lookup({Family::Unitary, 4, 2}, 3), 4);
    EXPECT_EQ(d1_lookup({Family::Symplectic, 4, 2}, 3), 4);
    // generic rows: (q-1)/(2,q-1) for L2(q), (q^n - q)/(q - 1) - 1 for Ln(q)
    EXPECT_EQ(d1_lookup({Family::Linear, 2, 13}, 2), 6);
    EXPECT_EQ(d1_lookup({Family::Linear, 2, 81}, 2), 40);
    EXPECT_EQ(d1_lookup({Family::Linear, 5, 2}, 3), 29);
    EXPECT_EQ(d1_lookup({Family::Unitary, 11, 2}, 3), (ipow(2, 11) - 1) / 3);
    EXPECT_EQ(kind_of([] { d1_lookup({Family::Linear, 2, 9}, 3); }), ErrorKind::DefiningCharacteristic);
    EXPECT_EQ(kind_of([] { d1_lookup({Family::Unitary, 2, 4}, 3); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([] { d1_lookup({Family::Suzuki, 0, 2}, 3); }), ErrorKind::OutOfRange);
}

TEST(MinimalDegree, MonotoneInQForFixedCharacteristic) {
    for (auto fam : kAllFamilies) {
        for (auto n : dims_for(fam)) {
            std::map<std::uint64_t, BigInt> last;  // characteristic -> previous value
            for (auto q : prime_powers(32)) {
                const std::uint64_t p = factorize(q).front().first;
                const std::uint64_t r = p == 2 ? 3 : 2;
                BigInt v;
                try {
                    v = d1_lookup({fam, n, q}, r);
                } catch (const Error& e) {
                    ASSERT_EQ(e.kind(), ErrorKind::OutOfRange) << to_string(fam) << " q=" << q;
                    continue;
                }
                EXPECT_GE(v, 1);
                if (last.count(p)) EXPECT_GE(v, last[p]) << to_string(fam) << " n=" << n << " q=" << q;
                last[p] = v;
            }
        }
    }
}

TEST(SecondDegree, Thresholds) {
    // (q^m - 1)(q^m - q) / (2 (q + 1)) at m = 7, q = 3, evaluated independently
    BigInt a = ipow(3, 7) - 1, b = ipow(3, 7) - 3;
    EXPECT_EQ(a * b, BigInt(4774224));
    EXPECT_EQ(d2_threshold({Family::Symplectic, 14, 3}, 2), BigInt(596778));
    EXPECT_EQ(d2_threshold({Family::Linear, 6, 2}, 3), 217);
    EXPECT_EQ(d2_threshold({Family::Linear, 6, 3}, 2), 6292);
    EXPECT_EQ(kind_of([] { d2_threshold({Family::Unitary, 4, 3}, 2); }), ErrorKind::ExcludedPair);
    EXPECT_EQ(kind_of([] { d2_threshold({Family::Unitary, 4, 2}, 3); }), ErrorKind::ExcludedPair);
    EXPECT_EQ(kind_of([] { d2_threshold({Family::Symplectic, 4, 3}, 2); }), ErrorKind::ExcludedPair);
    EXPECT_EQ(kind_of([] { d2_threshold({Family::Symplectic, 6, 4}, 3); }), ErrorKind::OutOfRange);
}

TEST(SecondDegree, LinearEpsilon) {
    // epsilon is 1 exactly when r0 divides (q^n - 1)/(q - 1)
    EXPECT_EQ(epsilon_nqr(3, 2, 7), 1);
    EXPECT_EQ(epsilon_nqr(3, 2, 3), 0);
    EXPECT_EQ(epsilon_nqr(4, 3, 5), 1);
    EXPECT_EQ(epsilon_nqr(4, 3, 2), 1);
    EXPECT_EQ(epsilon_nqr(4, 3, 7), 0);
    // L7(2) in characteristic 7 and 3: (q^6 - 1) ((q^5 - q)/(q - 1) - eps)
    EXPECT_EQ(d2_threshold({Family::Linear, 7, 2}, 7), BigInt(63) * (30 - epsilon_nqr(5, 2, 7)));
    EXPECT_EQ(d2_threshold({Family::Linear, 7, 2}, 31), BigInt(63) * 29);
}

TEST(Alpha, PublishedCases) {
    EXPECT_EQ(alpha_bound({Family::Linear, 2, 9}, ElementKind::field_auto_inv).value, 5u);
    EXPECT_EQ(alpha_bound({Family::Linear, 2, 25}, ElementKind::field_auto_inv).value, 4u);
    EXPECT_EQ(alpha_bound({Family::Linear, 2, 13}, ElementKind::odd_semisimple).value, 2u);
    for (std::uint64_t m : {2u, 3u, 4u, 7u}) {
        EXPECT_EQ(alpha_bound({Family::Symplectic, 2 * m, 5}, ElementKind::transvection).value, 2 * m);
        EXPECT_EQ(alpha_bound({Family::Symplectic, 2 * m, 4}, ElementKind::transvection).value, 2 * m + 1);
    }
    EXPECT_EQ(alpha_bound({Family::Linear, 3, 4}, ElementKind::graph_field_inv).value, 4u);
    EXPECT_EQ(alpha_bound({Family::OrthogonalOdd, 9, 3}, ElementKind::reflection).value, 9u);
    EXPECT_EQ(alpha_bound({Family::Linear, 7, 2}, ElementKind::generic).value, 7u);
    auto flagged = alpha_bound({Family::Linear, 4, 2}, ElementKind::inner_involution);
    EXPECT_TRUE(flagged.flagged);
    EXPECT_EQ(flagged.value, 4u);
    EXPECT_FALSE(flagged.note.empty());
    EXPECT_EQ(kind_of([] { alpha_bound({Family::Linear, 3, 5}, ElementKind::reflection); }), ErrorKind::OutOfRange);
}

TEST(Alpha, AtLeastTwoEverywhere) {
    std::size_t evaluated = 0;
    for (auto fam : kAllFamilies) {
        for (auto n : dims_for(fam)) {
            for (auto q : prime_powers(32)) {
                for (auto k : kAllKinds) {
                    try {
                        auto a = alpha_bound({fam, n, q}, k);
                        EXPECT_GE(a.value, 2u);
                        ++evaluated;
                    } catch (const Error& e) {
                        ASSERT_EQ(e.kind(), ErrorKind::OutOfRange);
                    }
                }
            }
        }
    }
    EXPECT_GT(evaluated, 1000u);
}

namespace {

// Least number of conjugates of x (in T) found to generate T, searching
// random tuples of each length up to `limit` and falling back to an
// exhaustive search when the tuple space is small.
std::optional<std::uint64_t> conjugates_needed(const GroupEnumeration& G, const std::set<std::uint64_t>& T,
                                               std::uint64_t x, std::uint64_t limit, std::mt19937_64& rng) {
    const std::uint64_t n = G.count();
    std::vector<std::uint64_t> tel(T.begin(), T.end());
    std::set<std::uint64_t> cls;
    Mat xm = G.element(x);
    for (auto t : tel) {
        Mat h = G.element(t);
        cls.insert(*G.find(*h.inverse() * xm * h));
    }
    std::vector<std::uint64_t> conj(cls.begin(), cls.end());
    std::map<std::uint64_t, std::vector<std::uint32_t>> right;
    auto right_mult = [&](std::uint64_t c) -> const std::vector<std::uint32_t>& {
        auto& v = right[c];
        if (v.empty()) {
            v.resize(n);
            for (std::uint64_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(G.multiply(i, c));
        }
        return v;
    };
    std::vector<char> seen(n);
    auto generates = [&](const std::vector<std::uint64_t>& tuple) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<std::uint32_t> queue{0};
        seen[0] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (auto c : tuple) {
                auto j = right_mult(c)[queue[h]];
                if (!seen[j]) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
            }
        return queue.size() == T.size();
    };
    for (std::uint64_t k = 1; k <= limit; ++k) {
        for (int trial = 0; trial < 400; ++trial) {
            std::vector<std::uint64_t> tuple{x};
            for (std::uint64_t i = 1; i < k; ++i) tuple.push_back(conj[rng() % conj.size()]);
            if (generates(tuple)) return k;
        }
        double space = std::pow(static_cast<double>(conj.size()), static_cast<double>(k - 1));
        if (space > 20000) continue;
        std::vector<std::size_t> idx(k - 1, 0);
        for (;;) {
            std::vector<std::uint64_t> tuple{x};
            for (auto i : idx) tuple.push_back(conj[i]);
            if (generates(tuple)) return k;
            std::size_t b = 0;
            while (b < idx.size() && ++idx[b] == conj.size()) idx[b++] = 0;
            if (b == idx.size()) break;
        }
    }
    return std::nullopt;
}

std::set<std::uint64_t> square_subgroup(const GroupEnumeration& G) {
    std::vector<Mat> gens;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(G.count(), 300); ++i) gens.push_back(G.element(i).pow(2));
    auto S = GroupEnumeration::enumerate(gens, G.count(), G.field(), G.dim());
    std::set<std::uint64_t> out;
    for (std::uint64_t i = 0; i < S.count(); ++i) out.insert(*G.find(S.element(i)));
    return out;
}

}  // namespace

TEST(Alpha, BruteForceConjugateGenerationNeverExceedsTheBound) {
    struct Case {
        const char* file;
        GroupFamily family;
        bool extended;
    };
    const std::vector<Case> cases{
        {"l3_2_v3_2.gen", {Family::Linear, 3, 2}, false},    {"l2_4_v4_2.gen", {Family::Linear, 2, 4}, false},
        {"l2_4_2_v4_2.gen", {Family::Linear, 2, 4}, true},   {"l2_9_v4_2.gen", {Family::Linear, 2, 9}, false},
        {"l2_9_2_1_v4_2.gen", {Family::Linear, 2, 9}, true}, {"l2_13_v14_2.gen", {Family::Linear, 2, 13}, false},
        {"l2_13_2_v14_2.gen", {Family::Linear, 2, 13}, true},
    };
    std::mt19937_64 rng(17);
    for (const auto& cs : cases) {
        auto G = load_group(cs.file);
        std::set<std::uint64_t> all;
        for (std::uint64_t i = 0; i < G.count(); ++i) all.insert(i);
        std::set<std::uint64_t> inner = cs.extended ? square_subgroup(G) : all;
        const std::uint64_t defining_char = factorize(cs.family.q).front().first;
        for (const auto& c : prime_projective_classes(G)) {
            const bool outer = !inner.count(c.rep_index);
            ElementKind kind;
            if (outer) kind = (cs.family.q == 4 || cs.family.q == 9) ? ElementKind::field_auto_inv : ElementKind::diagonal_inv;
            else if (c.proj_order == defining_char) kind = ElementKind::unipotent;
            else if (c.proj_order != 2) kind = ElementKind::odd_semisimple;
            else kind = ElementKind::inner_involution;
            const std::uint64_t bound = alpha_bound(cs.family, kind).value;
            // <G0, x> is all of G for outer x and G0 otherwise
            const auto& T = outer ? all : inner;
            auto k = conjugates_needed(G, T, c.rep_index, bound, rng);
            EXPECT_TRUE(k.has_value()) << cs.file << ": no " << bound << " conjugates of a class of order "
                                       << c.proj_order << " generate";
        }
    }
}

TEST(Counts, SmallOrderBounds) {
    // A1: dim 3, 2 roots, N2 = 2
    for (std::uint64_t q : {4u, 5u, 7u, 81u}) {
        EXPECT_EQ(count_small_order({Family::Linear, 2, q}, 2), 2 * (BigInt(q) * q + q));
    }
    EXPECT_EQ(count_exponent({Family::Linear, 3, 4}, 3), 6);
    EXPECT_EQ(count_small_order({Family::Linear, 3, 4}, 3), 2 * (ipow(4, 6) + ipow(4, 5)));
    EXPECT_EQ(count_exponent({Family::Linear, 2, 13}, 3), Rational(7, 3));
    EXPECT_EQ(count_small_order({Family::Linear, 2, 13}, 3), 2 * (ipow(13, 3) + ipow(13, 2)));
    EXPECT_EQ(kind_of([] { count_small_order({Family::Suzuki, 0, 8}, 2); }), ErrorKind::ExcludedType);
    EXPECT_EQ(kind_of([] { count_small_order({Family::Ree, 0, 27}, 2); }), ErrorKind::ExcludedType);
    EXPECT_EQ(kind_of([] { count_small_order({Family::ReeF4, 0, 8}, 3); }), ErrorKind::ExcludedType);
}

TEST(Counts, BoundsDominateEnumeratedCounts) {
    struct Case {
        const char* file;
        GroupFamily family;
    };
    for (const auto& cs : std::vector<Case>{{"u4_2_2_v6_2.gen", {Family::Unitary, 4, 2}},
                                            {"l3_2_v3_2.gen", {Family::Linear, 3, 2}},
                                            {"l2_9_2_1_v4_2.gen", {Family::Linear, 2, 9}},
                                            {"l2_4_2_v4_2.gen", {Family::Linear, 2, 4}},
                                            {"l2_13_2_v14_2.gen", {Family::Linear, 2, 13}}}) {
        auto G = load_group(cs.file);
        std::map<std::uint64_t, BigInt> counts{{2, 0}, {3, 0}};
        for (const auto& c : prime_projective_classes(G))
            if (c.proj_order <= 3) counts[c.proj_order] += c.class_size;
        for (auto [p, n] : counts) EXPECT_LE(n, count_small_order(cs.family, p)) << cs.file << " p=" << p;
        if (std::string(cs.file) == "u4_2_2_v6_2.gen") {
            EXPECT_EQ(counts[2], 891);
            EXPECT_EQ(counts[3], 800);
        }
    }
}

TEST(Counts, GraphAutomorphisms) {
    EXPECT_EQ(graph_count(4, 3, GraphCase::linear), 39366);
    EXPECT_EQ(graph_count(3, 4, GraphCase::graph_field), 512);
    EXPECT_EQ(graph_count(3, 2, GraphCase::unitary), 128);
    EXPECT_EQ(kind_of([] { graph_count(2, 4, GraphCase::linear); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([] { graph_count(3, 8, GraphCase::graph_field); }), ErrorKind::OutOfRange);
}

TEST(Combinators, CompositionFactorsAndTensorProducts) {
    const std::uint64_t f = (5 * 21) / 6;  // floor(5 * 21 / 6) = 17
    EXPECT_EQ(combine_compfactors({f * 5, f * 5, f * 5, f, 5}), 277u);
    EXPECT_EQ(combine_compfactors({}), 0u);
    EXPECT_EQ(combine_compfactors({11}), 11u);
    EXPECT_EQ(combine_tensor(40, 4, 30, 3), 120u);
    EXPECT_EQ(combine_tensor(7, 9, 7, 9), 63u);
    EXPECT_EQ(combine_tensor(21, 5, 17, 5), 85u);
    EXPECT_EQ(41u * 3 + 40u * 4, 283u);
    EXPECT_EQ(kind_of([] { combine_tensor(3, 3, 4, 1); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(fieldext_bound(1, 2), 2u);
    EXPECT_EQ(fieldext_bound(5, 1), 5u);
    EXPECT_EQ(fieldext_bound(2, 3), 6u);
}

namespace {

Mat kron(const Mat& a, const Mat& b) {
    const auto& F = *a.field();
    Mat m(a.field(), a.dim() * b.dim());
    for (std::uint32_t i = 0; i < a.dim(); ++i)
        for (std::uint32_t j = 0; j < a.dim(); ++j)
            for (std::uint32_t k = 0; k < b.dim(); ++k)
                for (std::uint32_t l = 0; l < b.dim(); ++l) m.at(i * b.dim() + k, j * b.dim() + l) = F.mul(a(i, j), b(k, l));
    return m;
}

}  // namespace

TEST(Combinators, UpperBoundsOnConstructedModules) {
    auto A = load_group("l3_2_v3_2.gen");
    auto B = load_group("l2_4_v4_2.gen");
    std::mt19937_64 rng(23);
    for (int s = 0; s < 60; ++s) {
        Mat a = A.element(rng() % A.count()), b = B.element(rng() % B.count());
        // tensor product
        std::uint64_t e = eigen_profile(kron(a, b)).emax;
        EXPECT_LE(e, combine_tensor(3, 4, eigen_profile(a).emax, eigen_profile(b).emax));
        // an extension with random off-diagonal block: fixed spaces add up at most
        Mat m(a.field(), 7);
        for (std::uint32_t i = 0; i < 3; ++i)
            for (std::uint32_t j = 0; j < 3; ++j) m.at(i, j) = a(i, j);
        for (std::uint32_t i = 0; i < 4; ++i)
            for (std::uint32_t j = 0; j < 4; ++j) m.at(3 + i, 3 + j) = b(i, j);
        for (std::uint32_t i = 0; i < 3; ++i)
            for (std::uint32_t j = 0; j < 4; ++j) m.at(i, 3 + j) = rng() % 2;
        EXPECT_LE(fixed_space_dim(m), combine_compfactors({fixed_space_dim(a), fixed_space_dim(b)}));
    }
}
