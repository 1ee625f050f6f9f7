#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace regorb;
using testing_support::load_group;

namespace {

// Elements of G fixing v, by direct scan.
std::vector<std::uint64_t> fixers(const GroupEnumeration& G, const VectorSpace& V, const std::vector<Elt>& v,
                                  const std::vector<std::uint64_t>* within = nullptr) {
    std::vector<Elt> buf(static_cast<std::size_t>(G.dim()) * G.dim());
    std::vector<std::uint64_t> out;
    auto test = [&](std::uint64_t i) {
        G.load(i, buf.data());
        if (V.fixes(buf.data(), v.data())) out.push_back(i);
    };
    if (within)
        for (auto i : *within) test(i);
    else
        for (std::uint64_t i = 0; i < G.count(); ++i) test(i);
    return out;
}

bool pointwise_stabilizer_trivial(const GroupEnumeration& G, const VectorSpace& V,
                                  const std::vector<std::vector<Elt>>& pts) {
    std::vector<std::uint64_t> S(G.count());
    for (std::uint64_t i = 0; i < G.count(); ++i) S[i] = i;
    for (const auto& p : pts) S = fixers(G, V, p, &S);
    return S.size() == 1;
}

// Restriction of scalars from GF(p^k) to GF(p) along the basis 1, w, ..., w^(k-1).
Mat restrict_scalars(const Mat& m, const FieldPtr& P) {
    const Field& F = *m.field();
    const std::uint32_t k = F.k(), d = m.dim();
    Mat out(P, d * k);
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 0; j < d; ++j)
            for (std::uint32_t c = 0; c < k; ++c) {
                Elt basis = static_cast<Elt>(ipow(F.p(), c));
                auto col = F.coeffs(F.mul(m(i, j), basis));
                for (std::uint32_t a = 0; a < k; ++a) out.at(i * k + a, j * k + c) = col[a];
            }
    return out;
}

std::vector<Mat> sl2_generators(const FieldPtr& F) {
    const Elt w = F->primitive_element();
    const Elt one = 1, zero = 0;
    return {Mat(F, 2, {one, one, zero, one}), Mat(F, 2, {w, zero, zero, F->inv(w)}),
            Mat(F, 2, {zero, one, F->neg(one), zero})};
}

}  // namespace

TEST(BLower, CountingBound) {
    EXPECT_EQ(b_lower(1, 2, 5), 0u);
    EXPECT_EQ(b_lower(51840, 2, 6), 3u);
    EXPECT_EQ(b_lower(60, 2, 4), 2u);
    EXPECT_EQ(b_lower(16, 2, 4), 1u);
    EXPECT_EQ(b_lower(17, 2, 4), 2u);
    EXPECT_EQ(b_lower(ipow(2, 200) + 1, 2, 40), 6u);
}

TEST(BaseSize, PublishedValues) {
    struct Case {
        const char* file;
        std::uint64_t order, b;
    };
    for (const auto& c : std::vector<Case>{{"l3_2_v3_2.gen", 168, 3},
                                           {"l2_4_v4_2.gen", 60, 2},
                                           {"l2_9_2_1_v4_2.gen", 720, 4},
                                           {"u4_2_v6_2.gen", 25920, 4},
                                           {"u4_2_2_v6_2.gen", 51840, 5}}) {
        auto G = load_group(c.file);
        ASSERT_EQ(G.order(), c.order) << c.file;
        VectorSpace V(G.field(), G.dim());
        auto res = base_size_exact(G);
        EXPECT_EQ(res.size, c.b) << c.file;
        ASSERT_EQ(res.base.size(), res.size);
        EXPECT_TRUE(pointwise_stabilizer_trivial(G, V, res.base)) << c.file;
        EXPECT_GE(res.size, b_lower(G.order(), G.field()->q(), G.dim()));
    }
}

TEST(BaseSize, NoSmallerBaseBySearch) {
    // every (b-1)-tuple of vectors has a nontrivial pointwise stabilizer
    for (const char* name : {"l3_2_v3_2.gen", "l2_9_2_1_v4_2.gen", "l2_4_v4_2.gen"}) {
        auto G = load_group(name);
        VectorSpace V(G.field(), G.dim());
        const auto b = base_size_exact(G).size;
        std::vector<std::size_t> idx(b - 1, 0);
        for (;;) {
            std::vector<std::vector<Elt>> pts;
            for (auto i : idx) pts.push_back(V.decode(i));
            ASSERT_FALSE(pointwise_stabilizer_trivial(G, V, pts)) << name;
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == V.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
}

TEST(BaseSize, SymplecticSixOnSevenDimensionalModule) {
    for (const char* name : {"psp6_2_v7_3.gen", "2xpsp6_2_v7_3.gen"}) {
        auto G = load_group(name);
        VectorSpace V(G.field(), G.dim());
        auto res = base_size_exact(G);
        EXPECT_EQ(res.size, 3u) << name;
        EXPECT_TRUE(pointwise_stabilizer_trivial(G, V, res.base));
        // no two vectors have trivial pointwise stabilizer: for each orbit
        // representative v, G_v has no regular orbit on V
        for (const auto& o : orbit_partition(G)) {
            if (G.count() / o.size > V.size()) continue;
            auto S = fixers(G, V, V.decode(o.rep));
            ASSERT_EQ(S.size() * o.size, G.count());
            bool found = false;
            for (std::uint64_t w = 0; w < V.size() && !found; ++w) found = fixers(G, V, V.decode(w), &S).size() == 1;
            EXPECT_FALSE(found) << name << " has a base of size 2 through vector " << o.rep;
        }
    }
}

TEST(RegularOrbit, L2_13Dichotomy) {
    auto G = load_group("l2_13_v14_2.gen");
    auto H = load_group("l2_13_2_v14_2.gen");
    ASSERT_EQ(G.order(), 1092u);
    ASSERT_EQ(H.order(), 2184u);
    VectorSpace V(G.field(), G.dim());
    auto w = regular_orbit_search(G);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(fixers(G, V, *w).size(), 1u);
    EXPECT_FALSE(regular_orbit_search(H).has_value());
    auto cg = covering_scan(G);
    auto ch = covering_scan(H);
    EXPECT_LT(cg.covered, cg.total);
    EXPECT_EQ(cg.total, 16384u);
    EXPECT_EQ(ch.covered, ch.total);
    EXPECT_EQ(base_size_exact(G).size, 1u);
    EXPECT_EQ(base_size_exact(H).size, 2u);
}

TEST(RegularOrbit, SmallCases) {
    auto F = Field::make_prime(3);
    auto T = GroupEnumeration::enumerate({}, 10, F, 4);
    auto w = regular_orbit_search(T);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, std::vector<Elt>(4, 0));
    EXPECT_EQ(base_size_exact(T).size, 0u);
    auto c = covering_scan(T);
    EXPECT_EQ(c.covered, 0u);
    EXPECT_TRUE(c.regular_orbit_exists());

    auto L = load_group("l2_4_v4_2.gen");
    EXPECT_FALSE(regular_orbit_search(L).has_value());
    auto cl = covering_scan(L);
    EXPECT_EQ(cl.covered, 16u);
    EXPECT_EQ(cl.total, 16u);
}

TEST(RegularOrbit, WitnessIsLexicographicallyFirst) {
    for (const char* name : {"l2_13_v14_2.gen", "u4_2_v5_3.gen"}) {
        auto G = load_group(name);
        VectorSpace V(G.field(), G.dim());
        auto w = regular_orbit_search(G);
        std::optional<std::uint64_t> first;
        for (std::uint64_t i = 0; i < V.size() && !first; ++i)
            if (orbit_size(G, i) == G.count()) first = i;
        ASSERT_EQ(w.has_value(), first.has_value()) << name;
        if (first) EXPECT_EQ(V.encode(w->data()), *first) << name;
    }
}

TEST(RegularOrbit, ParallelScanMatchesSerial) {
    for (const char* name : {"l2_13_v14_2.gen", "l2_13_2_v14_2.gen", "u4_2_v5_3.gen", "l3_2_v3_2.gen"}) {
        auto G = load_group(name);
        auto serial = regular_orbit_search(G, kDefaultSpaceCap, 1);
        for (unsigned t : {2u, 3u, 4u}) EXPECT_EQ(regular_orbit_search(G, kDefaultSpaceCap, t), serial) << name;
    }
}

TEST(RegularOrbit, CoveringScanAgreesWithSearch) {
    for (const char* name : {"l3_2_v3_2.gen", "l2_4_v4_2.gen", "l2_4_2_v4_2.gen", "l2_9_v4_2.gen",
                             "l2_9_2_1_v4_2.gen", "l2_13_v14_2.gen", "l2_13_2_v14_2.gen", "u4_2_v5_3.gen",
                             "2xu4_2_v5_3.gen", "u4_2_2_v5_3.gen", "u4_2_v6_2.gen", "u4_2_2_v6_2.gen"}) {
        auto G = load_group(name);
        auto c = covering_scan(G);
        EXPECT_EQ(c.regular_orbit_exists(), regular_orbit_search(G).has_value()) << name;
        EXPECT_EQ(c.regular_orbit_exists(), base_size_exact(G).size <= 1) << name;
        EXPECT_GT(c.subgroups, 0u);
    }
}

TEST(Orbits, OrbitStabilizerAndBurnside) {
    for (const char* name : {"l3_2_v3_2.gen", "l2_9_2_1_v4_2.gen", "u4_2_v5_3.gen", "2xu4_2_v5_3.gen",
                             "u4_2_2_v6_2.gen"}) {
        auto G = load_group(name);
        VectorSpace V(G.field(), G.dim());
        auto parts = orbit_partition(G);
        std::uint64_t total = 0;
        for (const auto& o : parts) total += o.size;
        EXPECT_EQ(total, V.size()) << name;
        // Burnside: |G| * #orbits = sum over g of |C_V(g)|
        BigInt fixed_total = 0;
        for (std::uint64_t i = 0; i < G.count(); ++i) fixed_total += ipow(G.field()->q(), fixed_space_dim(G.element(i)));
        EXPECT_EQ(fixed_total, BigInt(G.count()) * parts.size()) << name;
        for (std::uint64_t v = 0; v < V.size(); ++v) {
            const auto stab = stabilizer_order(G, v);
            EXPECT_EQ(orbit_size(G, v) * stab, G.count()) << name << " v=" << v;
            if (v % 37 == 0) EXPECT_EQ(fixers(G, V, V.decode(v)).size(), stab);
        }
    }
}

TEST(Orbits, FieldExtensionConsistency) {
    for (std::uint64_t q : {4u, 9u}) {
        auto F = Field::make(factorize(q).front().first, factorize(q).front().second);
        auto P = Field::make_prime(F->p());
        auto gens = sl2_generators(F);
        auto G = GroupEnumeration::enumerate(gens, kDefaultGroupCap, F, 2);
        std::vector<Mat> rgens;
        for (const auto& g : gens) rgens.push_back(restrict_scalars(g, P));
        auto R = GroupEnumeration::enumerate(rgens, kDefaultGroupCap, P, 2 * F->k());
        ASSERT_EQ(G.order(), R.order());
        ASSERT_EQ(G.order(), q * (q * q - 1));
        // the restriction is a homomorphism
        for (std::uint64_t i = 0; i < G.count(); i += 7)
            EXPECT_TRUE(R.find(restrict_scalars(G.element(i), P)).has_value());
        const auto b_ext = base_size_exact(G).size;
        const auto b_sub = base_size_exact(R).size;
        EXPECT_EQ(b_ext, 2u);
        EXPECT_LE(b_sub, fieldext_bound(b_ext, F->k()));
    }
}

TEST(Orbits, SpaceCap) {
    auto G = load_group("l2_13_v14_2.gen");
    for (auto f : std::vector<std::function<void()>>{[&] { regular_orbit_search(G, 1000); },
                                                    [&] { base_size_exact(G, 1000); },
                                                    [&] { covering_scan(G, 16383); }}) {
        try {
            f();
            ADD_FAILURE() << "expected SpaceCapExceeded";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::SpaceCapExceeded);
        }
    }
    EXPECT_NO_THROW(covering_scan(G, 16384));
}
