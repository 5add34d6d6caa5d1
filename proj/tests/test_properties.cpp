#include <gtest/gtest.h>

#include "ebr/piclat.hpp"
#include "random_inputs.hpp"

using namespace ebr;
using namespace ebr::testgen;

TEST(Property, HilbertProductFormula) {
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 200; ++i) {
        Rational x = random_rational(rng), y = random_rational(rng);
        int prod = hilbert_symbol(x, y, Place::real());
        for (const auto& p : bad_primes(x, y)) prod *= hilbert_symbol(x, y, Place::prime(p));
        EXPECT_EQ(prod, 1) << x << " " << y;
        // Symmetric, and (x, -x) = 1.
        EXPECT_EQ(hilbert_symbol(x, y, Place::prime(3)), hilbert_symbol(y, x, Place::prime(3)));
        EXPECT_EQ(hilbert_symbol(x, -x, Place::prime(2)), 1);
    }
}

TEST(Property, ResidueBimultiplicative) {
    std::mt19937_64 rng(99);
    Tower q;
    for (int i = 0; i < 200; ++i) {
        RatFunc f1 = parse_ratfunc(random_function(rng), q), f2 = parse_ratfunc(random_function(rng), q);
        RatFunc g = parse_ratfunc(random_function(rng), q);
        QuaternionSymbolFF a{f1 * f2, g}, b{f1, g}, c{f2, g}, swapped{g, f1 * f2};
        for (const auto& v : symbol_support({a, b, c}, q)) {
            EXPECT_EQ(residue_symbol(a, v), residue_symbol(b, v) * residue_symbol(c, v))
                << a.str() << " at " << v.str();
            EXPECT_EQ(residue_symbol(a, v), residue_symbol(swapped, v));
        }
        // The residues of one symbol satisfy the corestriction condition.
        EXPECT_TRUE(corestriction_sum(residue_profile({a}, q, true)).trivial()) << a.str();
    }
}

TEST(Property, FaddeevRoundtripAndRejection) {
    std::mt19937_64 rng(5);
    Tower q;
    Tower k5 = q.adjoin("sqrt5", q.constant(5));
    int accepted = 0, rejected = 0;
    for (int i = 0; i < 300; ++i) {
        bool over5 = i % 2;
        const Tower& k = over5 ? k5 : q;
        auto rp = random_profile(rng, over5);
        auto prof = parse_profile(rp.entries, k);
        bool expect_ok = profile_admissible(rp.entries, k);
        auto fr = faddeev_reconstruct(prof);
        EXPECT_EQ(fr.ok, expect_ok) << ::testing::PrintToString(rp.entries);
        if (fr.ok) {
            EXPECT_TRUE(fr.roundtrip) << ::testing::PrintToString(rp.entries);
            ++accepted;
        } else {
            ++rejected;
        }
    }
    EXPECT_GT(accepted, 50);
    EXPECT_GT(rejected, 20);
}

TEST(Property, RowsAreIsometries) {
    PicLattice lat;
    auto rows = load_galois_rows();
    for (const auto& r : rows) {
        EXPECT_TRUE(row_is_isometry(lat, r)) << r.name;
        for (const auto& s : rows) EXPECT_TRUE(row_is_isometry(lat, compose(r, s))) << r.name << "*" << s.name;
    }
}
