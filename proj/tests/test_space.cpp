#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bfp/corpus.hpp"
#include "bfp/space.hpp"
#include "instances.hpp"

using namespace bfp;
namespace bt = bfp::testing;

namespace {

std::size_t count(const AxiomReport& r, Axiom a) {
    std::size_t n = 0;
    for (const auto& v : r.violations) n += v.axiom == a;
    return n;
}

}  // namespace

TEST(Axioms, DiscreteFiveByFivePasses) {
    auto s = corpus::discrete_space(5);
    auto r = check_axioms(s);
    EXPECT_TRUE(r.all_ok());
    EXPECT_TRUE(r.violations.empty());
}

TEST(Axioms, ZeroDistanceWithoutOverlapFailsSeparation) {
    auto s = corpus::discrete_space(5);
    s.dist[0][1] = 0.0;
    auto r = check_axioms(s);
    EXPECT_FALSE(r.axiom1_ok);
    ASSERT_FALSE(r.violations.empty());
    EXPECT_EQ(r.violations[0].axiom, Axiom::Separation);
    EXPECT_EQ(r.violations[0].witness, (std::vector<std::string>{"e1", "f2"}));
}

TEST(Axioms, SinglePointOverlap) {
    FiniteBipolarSpace s{{"p"}, {"p"}, {{0.0}}, {{0, 0}}};
    EXPECT_TRUE(check_axioms(s).all_ok());
}

TEST(Axioms, OverlapWithPositiveDistanceFailsSeparation) {
    FiniteBipolarSpace s{{"p"}, {"p"}, {{0.5}}, {{0, 0}}};
    auto r = check_axioms(s);
    EXPECT_FALSE(r.axiom1_ok);
}

TEST(Axioms, AsymmetricOverlapWitness) {
    // x = (e1, f1), y = (e2, f2): d(x, y) = d(e1, f2) must equal d(y, x) = d(e2, f1).
    auto s = corpus::discrete_space(3);
    s.dist[0][1] = 1.5;
    auto r = check_axioms(s, 10.0);
    EXPECT_FALSE(r.axiom2_ok);
    ASSERT_EQ(count(r, Axiom::OverlapSymmetry), 1u);
    for (const auto& v : r.violations)
        if (v.axiom == Axiom::OverlapSymmetry) {
            EXPECT_EQ(v.witness, (std::vector<std::string>{"e1", "f2", "e2", "f1"}));
            EXPECT_EQ(v.lhs, 1.5);
            EXPECT_EQ(v.rhs, 1.0);
        }
}

TEST(Axioms, TetrahedralBreakNamesQuadruple) {
    auto s = corpus::discrete_space(3);
    // Witness (e, r, z, f): d(e1, f3) <= d(e1, f1) + d(e2, f1) + d(e2, f3) = 0 + 1 + 1
    s.dist[0][2] = 2.5;
    s.dist[2][0] = 2.5;
    auto r = check_axioms(s);
    EXPECT_TRUE(r.axiom1_ok);
    EXPECT_TRUE(r.axiom2_ok);
    EXPECT_FALSE(r.axiom3_ok);
    bool seen = false;
    for (const auto& v : r.violations) {
        if (v.axiom != Axiom::Tetrahedral) continue;
        EXPECT_GT(v.lhs, v.rhs);
        if (v.witness == std::vector<std::string>{"e1", "e2", "f1", "f3"}) {
            seen = true;
            EXPECT_EQ(v.lhs, 2.5);
            EXPECT_EQ(v.rhs, 2.0);
        }
    }
    EXPECT_TRUE(seen);
}

TEST(Axioms, ViolationsAreOrderedByAxiom) {
    auto s = corpus::discrete_space(4);
    s.dist[1][3] = 0.0;
    s.dist[0][2] = 9.0;
    auto r = check_axioms(s);
    for (std::size_t i = 1; i < r.violations.size(); ++i)
        EXPECT_LE(static_cast<int>(r.violations[i - 1].axiom), static_cast<int>(r.violations[i].axiom));
}

TEST(Axioms, TetrahedralToleranceAbsorbsRoundoff) {
    auto s = corpus::discrete_space(3);
    s.dist[0][2] = 2.0 + 1e-13;
    s.dist[2][0] = 2.0 + 1e-13;
    EXPECT_TRUE(check_axioms(s).axiom3_ok);
    EXPECT_FALSE(check_axioms(s, 0.0).axiom3_ok);
}

TEST(Distance, ByLabel) {
    auto s = corpus::discrete_space(5);
    EXPECT_EQ(distance(s, "e1", "f1"), 0.0);
    EXPECT_EQ(distance(s, "e1", "f2"), 1.0);
    EXPECT_THROW(distance(s, "e9", "f1"), InputError);
    EXPECT_THROW(distance(s, "e1", "e1"), InputError);
}

TEST(Distance, AuxiliaryQ0Table) {
    auto s = corpus::example_pc_q0_space();
    EXPECT_EQ(distance(s, "e2", "f4"), 7.0);
    EXPECT_EQ(distance(s, "e1", "f2"), 4.0);
    EXPECT_FALSE(check_axioms(s).axiom3_ok);
}

TEST(Validate, RejectsMalformedTables) {
    auto good = corpus::discrete_space(2);
    EXPECT_NO_THROW(validate(good));

    auto neg = good;
    neg.dist[1][0] = -1.0;
    EXPECT_THROW(validate(neg), InputError);

    auto nan = good;
    nan.dist[0][1] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(validate(nan), InputError);

    auto inf = good;
    inf.dist[0][1] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(validate(inf), InputError);

    auto ragged = good;
    ragged.dist[1].pop_back();
    EXPECT_THROW(validate(ragged), InputError);

    auto dup = good;
    dup.left[1] = "e1";
    EXPECT_THROW(validate(dup), InputError);

    auto empty = good;
    empty.right.clear();
    EXPECT_THROW(validate(empty), InputError);

    auto bad_overlap = good;
    bad_overlap.overlap.push_back({5, 0});
    EXPECT_THROW(validate(bad_overlap), InputError);

    auto reused = good;
    reused.overlap = {{0, 0}, {0, 1}};
    EXPECT_THROW(validate(reused), InputError);
}

TEST(Validate, ErrorNamesEntry) {
    auto s = corpus::discrete_space(2);
    s.dist[1][0] = -3.0;
    try {
        validate(s);
        FAIL();
    } catch (const InputError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("e2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("f1"), std::string::npos) << msg;
    }
}

TEST(Partners, OverlapLookup) {
    auto s = corpus::discrete_space(3);
    EXPECT_TRUE(s.is_overlap(1, 1));
    EXPECT_FALSE(s.is_overlap(1, 2));
    EXPECT_EQ(s.right_partner(2), std::optional<std::size_t>(2));
    s.overlap = {{0, 0}};
    EXPECT_FALSE(s.left_partner(2).has_value());
}

TEST(AxiomProperties, RandomRaySpacesPass) {
    bt::Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        std::size_t nl = 1 + rng() % 6, nr = 1 + rng() % 6;
        auto s = bt::random_ray_space(rng, nl, nr);
        ASSERT_NO_THROW(validate(s));
        auto r = check_axioms(s);
        ASSERT_TRUE(r.all_ok()) << "trial " << t;
    }
}

TEST(AxiomProperties, InjectedZeroIsAlwaysCaught) {
    bt::Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        auto s = bt::random_ray_space(rng, 2 + rng() % 5, 2 + rng() % 5);
        std::size_t i = 1 + rng() % (s.left_size() - 1);
        std::size_t j = 1 + rng() % (s.right_size() - 1);
        s.dist[i][j] = 0.0;
        auto r = check_axioms(s);
        ASSERT_FALSE(r.axiom1_ok);
        bool named = false;
        for (const auto& v : r.violations)
            if (v.axiom == Axiom::Separation && v.witness == std::vector<std::string>{s.left[i], s.right[j]}) named = true;
        ASSERT_TRUE(named);
    }
}

TEST(AxiomProperties, InflationAboveBoundBreaksTetrahedral) {
    bt::Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        auto s = bt::random_ray_space(rng, 2 + rng() % 5, 2 + rng() % 5);
        std::size_t i = 1 + rng() % (s.left_size() - 1);
        std::size_t j = 1 + rng() % (s.right_size() - 1);
        // Smallest bound d(e_i, f_j) must respect, over every detour (r, z).
        double bound = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < s.right_size(); ++r)
            for (std::size_t z = 0; z < s.left_size(); ++z)
                if (r != j && z != i) bound = std::min(bound, s.at(i, r) + s.at(z, r) + s.at(z, j));
        s.dist[i][j] = bound + 1.0;
        auto r = check_axioms(s);
        ASSERT_FALSE(r.axiom3_ok);
        ASSERT_TRUE(r.axiom1_ok);
    }
}

TEST(AxiomProperties, Deterministic) {
    auto s = corpus::discrete_space(4);
    s.dist[0][3] = 5.0;
    auto a = check_axioms(s);
    auto b = check_axioms(s);
    ASSERT_EQ(a.violations.size(), b.violations.size());
    for (std::size_t k = 0; k < a.violations.size(); ++k) {
        EXPECT_EQ(a.violations[k].witness, b.violations[k].witness);
        EXPECT_EQ(a.violations[k].lhs, b.violations[k].lhs);
    }
}
