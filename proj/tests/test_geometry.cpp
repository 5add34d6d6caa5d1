#include <gtest/gtest.h>

#include "ebr/galois.hpp"
#include "ebr/geometry.hpp"

using namespace ebr;

namespace {

const Triplet kWitness{12, 111, 13};

}  // namespace

TEST(Geometry, PointsOnConic) {
    const PresetField k1 = tower_build(kWitness, Preset::K1);
    auto pts = weierstrass_on_conic(k1);
    ASSERT_EQ(pts.size(), 8u);
    for (const auto& p : pts) EXPECT_TRUE(p.on_conic) << p.label;

    ProjPoint moved = pts[0].point;
    moved.coords[2] += k1.tower().one();
    EXPECT_FALSE(conic_value(k1, moved).is_zero());
}

TEST(Geometry, P1ByHand) {
    // P1 = (c - eta0 : 10a : 10a eta1p); the conic value reduces with the
    // eta relations to (eta0^2 - c^2 + 100ab)/(100a) = 0.
    const PresetField k = tower_build(kWitness, Preset::K1);
    ProjPoint p{"P2", {k.eval("c - eta0"), k.eval("10*a"), k.eval("10*a*eta1p")}};
    EXPECT_TRUE(conic_value(k, p).is_zero());
    EXPECT_TRUE(p.same(weierstrass_on_conic(k)[0].point));
}

TEST(Geometry, OrbitSeparation) {
    auto sep = weierstrass_orbit_separation(tower_build(kWitness, Preset::K1));
    EXPECT_TRUE(sep.p_points_satisfy);
    EXPECT_TRUE(sep.q_points_avoid);
}

TEST(Geometry, PhiEquivariance) {
    const PresetField k0 = tower_build(kWitness, Preset::K0);
    auto r = phi_equivariance(k0);
    ASSERT_EQ(r.size(), 2u);
    for (const auto& e : r) EXPECT_TRUE(e.negates) << e.factor;
    for (const auto& e : phi_equivariance(k0, {-1, -1, -1, -1, -1, -1})) {
        EXPECT_TRUE(e.identity) << e.factor;
        EXPECT_FALSE(e.negates) << e.factor;
    }
    // Formal substitution by hand on the first factor.
    Poly num = parse_poly(k0, "w0 - sqrt5*w1"), den = parse_poly(k0, "v0 + 2*v1");
    EXPECT_EQ(den.signed_substitution({-1, -1, -1, 1, 1, 1}), -den);
    EXPECT_EQ(num.signed_substitution({-1, -1, -1, 1, 1, 1}), num);
}

TEST(Geometry, MinusOnePairing) {
    auto pr = exceptional_minus_one_pairing(tower_build(kWitness, Preset::K0));
    EXPECT_TRUE(pr.closed);
    EXPECT_TRUE(pr.involution);
    EXPECT_TRUE(pr.fixed_point_free);
    for (int i = 0; i < 4; ++i) {
        ASSERT_GE(pr.image[i], 0);
        EXPECT_EQ(pr.image[pr.image[i]], i);
        EXPECT_NE(pr.image[i], i);
    }
}

TEST(Geometry, GenusLedger) {
    auto g = genus_bookkeeping();
    EXPECT_TRUE(g.ok());
    EXPECT_EQ(g.at("B").geometric_genus, 5);
    EXPECT_EQ(g.at("Btilde").geometric_genus, 3);
    EXPECT_EQ(g.at("B0").arithmetic_genus, 9);
    EXPECT_EQ(g.at("Btilde0").arithmetic_genus, 5);
    // Etale double cover: 2g(B) - 2 = 2(2g(Btilde) - 2).
    EXPECT_EQ(2 * 5 - 2, 2 * (2 * 3 - 2));

    auto entries = g.entries;
    for (auto& e : entries)
        if (e.name == "B0") e.arithmetic_genus = 8;
    EXPECT_FALSE(check_ledger(entries).empty());
}

TEST(Geometry, PointTableOnlyLambdaDisagrees) {
    const PresetField k = tower_build(kWitness, Preset::K);
    std::vector<std::string> bad;
    for (const auto& c : point_table_check(k, load_galois_rows()))
        if (!c.agree) bad.push_back(c.row);
    EXPECT_EQ(bad, std::vector<std::string>{"lambda"});
    auto lam = induced_point_perm(k, find_row(load_galois_rows(), "lambda"));
    ASSERT_TRUE(lam.has_value());
    EXPECT_EQ(*lam, (PointPerm{1, 0, 3, 2, 4, 5, 6, 7}));
}
