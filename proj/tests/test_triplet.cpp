#include <gtest/gtest.h>

#include "ebr/triplet.hpp"

using namespace ebr;

namespace {

const Triplet kWitness{12, 111, 13};

bool is_square_mod(long a, long p) {
    a = ((a % p) + p) % p;
    for (long x = 0; x < p; ++x)
        if (x * x % p == a) return true;
    return false;
}

}  // namespace

TEST(Triplet, Nonsingular) {
    EXPECT_TRUE(check_nonsingular(kWitness));
    EXPECT_FALSE(check_nonsingular(Triplet{1, 1, 10}));
    EXPECT_FALSE(check_nonsingular(Triplet{0, 1, 1}));
    // Each factor evaluated directly.
    long a = 12, b = 111, c = 13;
    for (long f : {a * b * c, 5 * a + 5 * b + c, 20 * a + 5 * b + 2 * c, 4 * a * a + b * b, c * c - 100 * a * b,
                   c * c + 5 * b * c + 10 * a * c + 25 * a * b})
        EXPECT_NE(f, 0);
}

TEST(Triplet, WitnessConditions) {
    CheckOptions opt;
    auto rep = check_all(kWitness, opt);
    ASSERT_EQ(rep.conditions.size(), 8u);
    for (int k = 0; k < 6; ++k) EXPECT_EQ(rep.conditions[k].verdict, Verdict::Pass) << k + 1;
    EXPECT_EQ(rep.conditions[6].verdict, Verdict::Probable);
    EXPECT_EQ(rep.conditions[7].verdict, Verdict::Pass);
    EXPECT_FALSE(rep.any_fail());
}

TEST(Triplet, ModularConditionsByHand) {
    EXPECT_EQ(12 % 7, 5);
    EXPECT_EQ(111 % 7, 6);
    EXPECT_EQ(13 % 7, 6);
    EXPECT_EQ(check_condition(kWitness, 5).verdict, Verdict::Pass);
    EXPECT_EQ(((-111 * 13) % 5 + 5) % 5, 2);
    EXPECT_FALSE(is_square_mod(-1443, 5));
    EXPECT_EQ(check_condition(kWitness, 4).verdict, Verdict::Pass);
}

TEST(Triplet, Condition4AgainstSquares) {
    for (long b = 1; b <= 12; ++b)
        for (long c = 1; c <= 12; ++c) {
            Triplet t{7, b, c};
            bool expect = !is_square_mod(-b * c, 5);
            EXPECT_EQ(check_condition(t, 4).verdict == Verdict::Pass, expect) << b << " " << c;
        }
}

TEST(Triplet, RealPlaceOrSmallPrimesOnly) {
    CheckOptions opt;
    opt.prime_bound = 20;
    auto r = check_condition(kWitness, 7, opt);
    EXPECT_EQ(r.verdict, Verdict::Probable);
}

TEST(Triplet, LocalPointsSatisfyEquations) {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 37ULL}) {
        auto lp = local_point(kWitness, p);
        ASSERT_NE(lp.status, LocalPoint::Status::Inconclusive) << p;
        if (lp.status == LocalPoint::Status::NoPointsGoodPrime) continue;
        Integer m = 1;
        for (unsigned i = 0; i < std::max(1u, lp.precision); ++i) m *= p;
        for (const auto& v : surface_values(kWitness, lp.point)) EXPECT_EQ(Integer(v % m), 0) << p;
    }
}

TEST(Search, WitnessInBox) {
    auto box = SearchBox::parse("10..14,109..113,11..15");
    auto res = ebr::search(box, {4, 5, 6}, {}, 2);
    EXPECT_TRUE(res.complete);
    EXPECT_EQ(res.examined, 125u);
    bool found = false;
    for (const auto& h : res.hits) found = found || h.triplet == kWitness;
    EXPECT_TRUE(found);
    for (std::size_t i = 1; i < res.hits.size(); ++i) EXPECT_TRUE(res.hits[i - 1].triplet < res.hits[i].triplet);
}

TEST(Search, Condition5SmallBoxByEnumeration) {
    auto res = ebr::search(SearchBox::parse("1..4,1..4,1..4"), {5});
    std::size_t expect = 0;
    for (long a = 1; a <= 4; ++a)
        for (long b = 1; b <= 4; ++b)
            for (long c = 1; c <= 4; ++c)
                if (check_nonsingular(Triplet{a, b, c}) && a % 7 == 5 && b % 7 == 6 && c % 7 == 6) ++expect;
    EXPECT_EQ(expect, 0u);
    EXPECT_EQ(res.hits.size(), expect);
}

TEST(Search, ThreadCountDoesNotChangeOutput) {
    auto box = SearchBox::parse("1..30,1..30,1..6");
    auto one = ebr::search(box, {1, 2, 4}, {}, 1), four = ebr::search(box, {1, 2, 4}, {}, 4);
    ASSERT_EQ(one.hits.size(), four.hits.size());
    for (std::size_t i = 0; i < one.hits.size(); ++i) EXPECT_EQ(one.hits[i].triplet, four.hits[i].triplet);
}

TEST(Search, StopFlagMarksIncomplete) {
    std::atomic<bool> stop{true};
    auto res = ebr::search(SearchBox::parse("1..50,1..50,1..50"), {4}, {}, 2, &stop);
    EXPECT_FALSE(res.complete);
}

TEST(Search, BadBox) {
    EXPECT_THROW(SearchBox::parse("1..x"), std::invalid_argument);
    EXPECT_THROW(SearchBox::parse("1..2,1..2"), std::invalid_argument);
}

TEST(Search, EmptyBox) {
    auto res = ebr::search(SearchBox::parse("5..1,1..1,1..1"), {4});
    EXPECT_TRUE(res.complete);
    EXPECT_TRUE(res.hits.empty());
    EXPECT_EQ(res.examined, 0u);
}
