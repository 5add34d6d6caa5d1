#include <gtest/gtest.h>

#include "ebr/presets.hpp"
#include "ebr/tables.hpp"

using namespace ebr;

namespace {

const Triplet kWitness{12, 111, 13};

const PresetField& witness_k() {
    static const PresetField k = tower_build(kWitness, Preset::K);
    return k;
}

}  // namespace

TEST(Tower, ElementArithmetic) {
    Tower q;
    Tower t = q.adjoin("sqrt2", q.constant(2)).adjoin("sqrt5", q.constant(5));
    TowerElem s2 = t.root("sqrt2"), s5 = t.root("sqrt5");
    EXPECT_EQ((s2 + t.one()) * (s2 - t.one()), t.one());
    EXPECT_EQ(s5.inv(), s5 * t.constant(Rational(1, 5)));
    EXPECT_EQ(s2 * s5 * s2 * s5, t.constant(10));
    EXPECT_THROW(t.zero().inv(), std::domain_error);
}

TEST(Tower, SquareTests) {
    Tower q;
    auto r = q.sqrt(q.constant(4));
    ASSERT_EQ(r.verdict, Tri::Yes);
    EXPECT_EQ(*r.witness * *r.witness, q.constant(4));
    EXPECT_EQ(q.sqrt(q.constant(2)).verdict, Tri::No);
    // c^2 - 100ab = 169 - 133200 is negative.
    Integer d = kWitness.c * kWitness.c - 100 * kWitness.a * kWitness.b;
    EXPECT_EQ(d, 169 - 133200);
    EXPECT_EQ(q.sqrt(q.constant(d)).verdict, Tri::No);

    Tower t = q.adjoin("sqrt2", q.constant(2));
    auto w = t.sqrt(t.constant(3) + t.constant(2) * t.root("sqrt2"));  // (1 + sqrt2)^2
    ASSERT_EQ(w.verdict, Tri::Yes);
    EXPECT_EQ(*w.witness * *w.witness, t.constant(3) + t.constant(2) * t.root("sqrt2"));
    EXPECT_EQ(t.sqrt(t.root("sqrt2")).verdict, Tri::No);
}

TEST(Tower, DegenerateStepKeepsWitness) {
    Tower q;
    Tower t = q.adjoin("r", q.constant(9));
    EXPECT_EQ(t.degenerate(0), Tri::Yes);
    EXPECT_EQ(t.root("r") * t.root("r"), t.constant(9));
    EXPECT_TRUE(t.root("r").is_rational());
}

TEST(Tower, Automorphisms) {
    const PresetField k0 = tower_build(kWitness, Preset::K0);
    const Tower& t = k0.tower();
    auto id = TowerAut::identity(t);
    EXPECT_EQ(id.apply(k0.value("kappa")), k0.value("kappa"));
    auto s = TowerAut::from_images(t, {{"sqrt5", -k0.value("sqrt5")}});
    EXPECT_EQ(s.apply(k0.value("sqrt5") + k0.value("i")), -k0.value("sqrt5") + k0.value("i"));
    EXPECT_EQ(s.compose(s).apply(k0.value("sqrt5")), k0.value("sqrt5"));
    // kappa^2 = -2 + 2 sqrt2 would have to equal -2 - 2 sqrt2.
    EXPECT_THROW(TowerAut::from_images(t, {{"sqrt2", -k0.value("sqrt2")}}), std::invalid_argument);
    EXPECT_NO_THROW(TowerAut::from_images(t, {{"sqrt2", -k0.value("sqrt2")}, {"kappa", k0.value("kappabar")}}));
}

TEST(Presets, PresetShapes) {
    const PresetField k0 = tower_build(kWitness, Preset::K0);
    EXPECT_EQ(k0.tower().size(), 4u);
    EXPECT_EQ(k0.tower().degree_log2(), 4u);
    const PresetField k1 = tower_build(kWitness, Preset::K1);
    for (const char* n : {"theta0", "sqrtab", "eta1p", "gamma1p"}) EXPECT_TRUE(k1.has(n)) << n;
    for (std::size_t j = 0; j < k0.tower().size(); ++j) EXPECT_EQ(k1.tower().name(j), k0.tower().name(j));
    const PresetField k = tower_build(Triplet{1, 1, 1}, Preset::K);
    EXPECT_EQ(k.tower().size(), 18u);
    for (std::size_t j = 0; j < k.tower().size(); ++j) EXPECT_NE(to_string(k.tower().degenerate(j)), "");
}

TEST(Presets, DisplayedIdentities) {
    const auto& k = witness_k();
    auto e = [&](const char* s) { return k.eval(s); };
    EXPECT_TRUE(verify_identity(e("eta1p^2*50*a + c - eta0"), k.tower().zero()));
    EXPECT_TRUE(verify_identity(e("theta1p*theta1m"), e("4*a*gamma0")));
    EXPECT_TRUE(verify_identity(e("xi1m*xi1p"), e("eta0")));
    EXPECT_TRUE(verify_identity(e("gamma1p*gamma1m"), e("(5*a + c)*theta0")));
    EXPECT_FALSE(verify_identity(e("gamma1p*gamma1m"), e("(5*a + c)*theta0 + 1")));
}

TEST(Presets, AllRelationsHold) {
    auto rels = check_relations(witness_k());
    ASSERT_EQ(rels.size(), 12u);
    for (const auto& r : rels) EXPECT_TRUE(r.holds) << r.name << " " << r.error;
}

TEST(Presets, FlippedThetaSignFails) {
    // The radicand of theta1- with the other sign, "+ (10a + 2c) theta0".
    const auto& k = witness_k();
    TowerElem flipped = k.eval("20*a^2 - 10*a*b - 2*b*c + (10*a + 2*c)*theta0");
    TowerElem used = k.eval("20*a^2 - 10*a*b - 2*b*c - (10*a + 2*c)*theta0");
    TowerElem sq = k.eval("theta1m^2");
    EXPECT_FALSE(verify_identity(sq, flipped));
    EXPECT_TRUE(verify_identity(sq, used));
    // Independently: the product of the two radicands must be (4a gamma0)^2.
    EXPECT_TRUE(verify_identity(k.eval("theta1p^2") * used, k.eval("(4*a*gamma0)^2")));
}

TEST(Presets, RelationsFailOnAlteredTables) {
    nlohmann::json t = default_tables();
    for (auto& r : t["relations"])
        if (r["name"] == "gamma1_product") r["rhs"] = "(5*a - c)*theta0";
    auto rels = check_relations(tower_build(kWitness, Preset::K, t), t);
    int failed = 0;
    for (const auto& r : rels) failed += !r.holds;
    EXPECT_EQ(failed, 1);
}

TEST(Presets, ZeroRadicandIsReported) {
    // c^2 = 100ab makes eta0 vanish.
    EXPECT_THROW(tower_build(Triplet{1, 1, 10}, Preset::K), std::exception);
}
