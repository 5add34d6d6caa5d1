#include <gtest/gtest.h>

#include "ebr/galmod.hpp"
#include "ebr/piclat.hpp"
#include "ebr/tables.hpp"

using namespace ebr;

namespace {

const Triplet kWitness{12, 111, 13};

const PicLattice& lat() {
    static const PicLattice l;
    return l;
}

const PresetField& witness_k() {
    static const PresetField k = tower_build(kWitness, Preset::K);
    return k;
}

f2::Vec span_of(const QuotientF2& q, const std::vector<std::string>& labels) {
    f2::Vec v = 0;
    for (const auto& l : labels) v ^= q.image(lat().named(l));
    return v;
}

}  // namespace

TEST(PicLattice, GramRules) {
    const auto& L = lat();
    EXPECT_EQ(L.gram(L.named("F1"), L.named("G1")), 4);
    EXPECT_EQ(L.gram(L.named("F1"), L.named("F1")), 0);
    EXPECT_EQ(L.gram(L.named("Z1"), L.named("Z1")), 10);
    // D = F_i + G_i pairs to 4 with every F_k.
    for (int i = 1; i <= 14; ++i)
        for (int k = 1; k <= 14; ++k) {
            auto d = L.parse("F" + std::to_string(i) + " + G" + std::to_string(i));
            EXPECT_EQ(L.gram(d, L.named("F" + std::to_string(k))), 4);
        }
    EXPECT_EQ(L.rank(), 15);
}

TEST(PicLattice, Z1ByExpansion) {
    // Z1 = (F1 + F2 + F3 + F10 + F12)/2: the F's pair to 4 when distinct, 0 otherwise... so
    // Z1^2 = (1/4) * sum over ordered distinct pairs of F_i.F_j.
    const auto& L = lat();
    Rational s = 0;
    const std::vector<std::string> f = {"F1", "F2", "F3", "F10", "F12"};
    for (const auto& x : f)
        for (const auto& y : f) s += L.gram(L.named(x), L.named(y));
    EXPECT_EQ(s / 4, L.gram(L.named("Z1"), L.named("Z1")));
}

TEST(PicLattice, EvenAndIntegral) {
    const auto& L = lat();
    auto g = L.lattice_gram();
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(Integer(g[i][i] % 2), 0);
    for (int i = 1; i <= 4; ++i)
        for (const auto& b : L.basis())
            EXPECT_EQ(L.gram(L.named("Z" + std::to_string(i)), b).get_den(), 1);
}

TEST(PicLattice, ExceptionalPullbacks) {
    const auto& L = lat();
    EXPECT_EQ(L.gram(L.parse("F1 + 2*G1 - F2 + F3 - F10 - F12"), L.parse("F1 + 2*G1 - F2 + F3 - F10 - F12")), -8);
    auto pb = exceptional_pullbacks(L);
    ASSERT_EQ(pb.size(), 4u);
    for (const auto& c : pb) {
        EXPECT_EQ(c.self_intersection, -8) << c.label;
        EXPECT_TRUE(c.in_lattice) << c.label;
    }
}

TEST(PicLattice, PullbackSublattice) {
    auto p = pullback_sublattice(lat());
    EXPECT_EQ(p.rank, 6);
    EXPECT_TRUE(p.contains(lat(), lat().named("G1")));
    EXPECT_FALSE(p.contains(lat(), lat().named("F5")));
}

TEST(QuotientF2, BasisAndImages) {
    QuotientF2 q(lat(), pullback_sublattice(lat()));
    EXPECT_EQ(q.dim(), 9);
    ASSERT_TRUE(q.set_basis({"F5", "F6", "F8", "F9", "F11", "F13", "Z2", "Z3", "Z4"}));
    EXPECT_EQ(q.image(lat().named("F14")), span_of(q, {"F5", "F6", "F8", "F9", "F13"}));
    for (const char* z : {"G1", "F1", "F2", "F3", "F10", "F12", "Z1"}) EXPECT_EQ(q.image(lat().named(z)), 0u) << z;
    EXPECT_FALSE(q.set_basis({"F5", "F5", "F8", "F9", "F11", "F13", "Z2", "Z3", "Z4"}));
}

TEST(QuotientF2, Invariants) {
    QuotientF2 q(lat(), pullback_sublattice(lat()));
    ASSERT_TRUE(q.set_basis({"F5", "F6", "F8", "F9", "F11", "F13", "Z2", "Z3", "Z4"}));
    EXPECT_EQ(f2::rank(invariants_under(q, {})), 9);

    auto rows = load_galois_rows();
    auto gk1 = gk1_generators(witness_k(), rows);
    auto inv = invariants_under(q, gk1.rows);
    f2::Span s;
    for (auto v : inv) s.add(v);
    EXPECT_EQ(s.dim(), 5);
    for (const char* l : {"F5", "F6", "F8", "F9", "F11"}) EXPECT_TRUE(s.contains(q.image(lat().named(l)))) << l;

    auto all = gk1.rows;
    for (const auto& r : k0_rows(witness_k(), rows)) all.push_back(r);
    auto fixed = invariants_under(q, all);
    f2::Span t;
    for (auto v : fixed) t.add(v);
    EXPECT_EQ(t.dim(), 3);
    EXPECT_TRUE(t.contains(span_of(q, {"F11"})));
    EXPECT_TRUE(t.contains(span_of(q, {"F5", "F6"})));
    EXPECT_TRUE(t.contains(span_of(q, {"F8", "F9"})));
}

TEST(QuotientF2, Decomposition) {
    QuotientF2 q(lat(), pullback_sublattice(lat()));
    ASSERT_TRUE(q.set_basis({"F5", "F6", "F8", "F9", "F11", "F13", "Z2", "Z3", "Z4"}));
    const auto& k = witness_k();
    auto rows = load_galois_rows();
    auto gk1 = gk1_generators(k, rows).rows;
    auto k0 = k0_rows(k, rows);
    std::vector<bool> fab, fth;
    for (const auto& r : k0) {
        auto a = field_action(k, r);
        fab.push_back(a.flips_sqrtab);
        fth.push_back(a.flips_theta0);
    }
    EXPECT_TRUE(verify_decomposition(q, gk1, k0, fab, fth).ok());

    // Without the F8 <-> F9 swap the theta0 part is fixed and the fixed space grows.
    auto no_swap = k0;
    for (auto& r : no_swap)
        if (r.pic["F8"] == "F9") {
            r.pic["F8"] = "F8";
            r.pic["F9"] = "F9";
            r.pic["G8"] = "G8";
            r.pic["G9"] = "G9";
        }
    EXPECT_FALSE(verify_decomposition(q, gk1, no_swap, fab, fth).ok());

    std::vector<GaloisRow> trivial(k0.size());
    for (std::size_t i = 0; i < trivial.size(); ++i) {
        trivial[i].name = k0[i].name;
        for (const auto& [a, b] : k0[i].pic) trivial[i].pic[a] = a;
    }
    EXPECT_FALSE(verify_decomposition(q, gk1, trivial, fab, fth).ok());
}

TEST(GaloisRows, AllRowsAreIsometries) {
    for (const auto& r : load_galois_rows()) {
        EXPECT_TRUE(row_is_isometry(lat(), r)) << r.name;
        EXPECT_TRUE(row_preserves_lattice(lat(), r)) << r.name;
    }
}

TEST(GaloisRows, AlteredFourthRootRowFails) {
    // With F5 -> G6 the row leaves the lattice.
    nlohmann::json t = default_tables();
    for (auto& r : t["galois"])
        if (r["name"] == "root4ab")
            for (auto& e : r["pic_y"])
                if (e == "F5->F6") e = "F5->G6";
    const auto rows = load_galois_rows(t);
    const GaloisRow& altered = find_row(rows, "root4ab");
    EXPECT_FALSE(row_preserves_lattice(lat(), altered));
    // Independently: Z2 is sent outside the lattice.
    auto img = apply_row(lat(), altered, lat().named("Z2"));
    EXPECT_FALSE(lat().contains(img));
}
