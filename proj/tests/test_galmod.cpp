#include <gtest/gtest.h>

#include <set>

#include "ebr/galmod.hpp"

using namespace ebr;

namespace {

const Triplet kWitness{12, 111, 13};

const PresetField& witness_k() {
    static const PresetField k = tower_build(kWitness, Preset::K);
    return k;
}

PointPerm swaps(const std::vector<std::pair<int, int>>& s) {
    PointPerm p = identity_point_perm();
    for (auto [a, b] : s) std::swap(p[a], p[b]);
    return p;
}

// Odd-P subsets S (as 8-bit masks with |S| even) such that every perm maps
// S to S, its complement, S + {P1..P4} or S + {Q1..Q4}; each class counted once.
std::set<int> fixed_odd_classes(const std::vector<PointPerm>& perms) {
    std::set<int> out;
    for (int m = 0; m < 256; ++m) {
        if (__builtin_popcount(m) % 2 || __builtin_popcount(m & 0x0F) % 2 == 0) continue;
        bool fixed = true;
        for (const auto& p : perms) {
            int img = 0;
            for (int k = 0; k < 8; ++k)
                if (m >> k & 1) img |= 1 << p[k];
            fixed = fixed && (img == m || img == (m ^ 0xFF) || img == (m ^ 0x0F) || img == (m ^ 0xF0));
        }
        if (fixed) out.insert(std::min({m, m ^ 0xFF, m ^ 0x0F, m ^ 0xF0}));
    }
    return out;
}

}  // namespace

TEST(Jac2, Group) {
    EXPECT_EQ(WClass::of({"P1", "P2"}) + WClass::of({"P2", "P3"}), WClass::of({"P1", "P3"}));
    auto g = jac2_group();
    EXPECT_EQ(g.size(), 64u);
    for (auto s : g) EXPECT_TRUE((s + s).is_zero());
    EXPECT_THROW(WClass(0x07), std::invalid_argument);
}

TEST(Jac2, Kernel) {
    EXPECT_EQ(fstar_kernel(), WClass::of({"P1", "P2", "P3", "P4"}));
    EXPECT_TRUE((fstar_kernel() + fstar_kernel()).is_zero());
    EXPECT_EQ(fstar_kernel(), WClass::of({"Q1", "Q2", "Q3", "Q4"}));
}

TEST(FstarImage, Module) {
    auto rows = k0_rows(witness_k(), load_galois_rows());
    FstarImage fi(rows);
    EXPECT_EQ(fi.module().dim, 5);
    ASSERT_EQ(fi.basis().size(), 5u);
    EXPECT_EQ(fi.basis()[0], WClass::of({"P1", "P3"}));
    EXPECT_EQ(fi.basis()[4], WClass::of({"P1", "Q1"}));
    EXPECT_TRUE(fi.fixed_mixed_pairs().empty());
    EXPECT_EQ(fi.coords(fstar_kernel()), 0u);
}

TEST(FstarImage, Submodules) {
    auto rows = k0_rows(witness_k(), load_galois_rows());
    FstarImage fi(rows);
    auto subs = enumerate_invariant_submodules(fi.module(), 2);
    ASSERT_FALSE(subs.empty());
    for (const auto& s : subs)
        for (auto v : s) EXPECT_EQ(v & ~f2::Vec(0x0F), 0u);
    auto whole = enumerate_invariant_submodules(fi.module(), 1);
    ASSERT_EQ(whole.size(), 1u);
    EXPECT_EQ(f2::rank(whole[0]), 5);
    EXPECT_TRUE(enumerate_invariant_submodules(fi.module(), 64).empty());
    // Every invariant index-2 subspace is among all 4-dim subspaces.
    EXPECT_EQ(all_subspaces(5, 4).size(), 31u);
}

TEST(Scan, OddClassCount) {
    EXPECT_EQ(odd_p_classes().size(), 32u);
    EXPECT_EQ(invariance_scan({}).size(), 32u);
    EXPECT_EQ(fixed_odd_classes({}).size(), 16u);  // also modulo the kernel
}

TEST(Scan, WitnessIsEmpty) {
    auto sel = select_scan_rows(witness_k(), load_galois_rows());
    auto perms = point_perms(sel.rows);
    EXPECT_TRUE(invariance_scan(perms).empty());
    EXPECT_TRUE(fixed_odd_classes(perms).empty());
}

TEST(Scan, WithoutEta0) {
    auto sel = select_scan_rows(witness_k(), load_galois_rows());
    std::vector<GaloisRow> rows;
    for (const auto& r : sel.rows)
        if (r.name != "eta0") rows.push_back(r);
    auto perms = point_perms(rows);
    // The sqrt(a) row still moves every odd P-subset, so the control stays empty.
    EXPECT_EQ(invariance_scan(perms).empty(), fixed_odd_classes(perms).empty());
    EXPECT_TRUE(fixed_odd_classes({swaps({{0, 1}, {2, 3}})}).empty());
    // A pair of disjoint P-swaps fixes no odd P-subset, not even alone; a
    // single transposition fixes {P3}.
    EXPECT_TRUE(invariance_scan({swaps({{0, 2}, {1, 3}})}).empty());
    EXPECT_FALSE(invariance_scan({swaps({{0, 1}})}).empty());
    EXPECT_EQ(invariance_scan({swaps({{0, 1}})}).size(), 2 * fixed_odd_classes({swaps({{0, 1}})}).size());
}

TEST(Transitivity, Controls) {
    EXPECT_FALSE(transitivity_check({swaps({{0, 1}}), swaps({{1, 2}}), swaps({{2, 3}})}));
    EXPECT_FALSE(transitivity_check({swaps({{0, 2}, {1, 3}})}));
    std::vector<PointPerm> cyc = {{1, 2, 3, 4, 5, 6, 7, 0}};
    EXPECT_TRUE(transitivity_check(cyc));
}

TEST(Transitivity, TableHasTwoOrbits) {
    auto perms = point_perms(load_galois_rows());
    auto orbits = point_orbits(perms);
    ASSERT_EQ(orbits.size(), 2u);
    EXPECT_EQ(orbits[0], (std::vector<int>{0, 1, 2, 3}));
    EXPECT_EQ(orbits[1], (std::vector<int>{4, 5, 6, 7}));
    EXPECT_FALSE(transitivity_check(perms));
}
