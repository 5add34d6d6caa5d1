#include <gtest/gtest.h>

#include "ebr/brauer.hpp"
#include "ebr/suites.hpp"

using namespace ebr;

namespace {

const Tower kQ;

RatFunc rf(const std::string& s, const Tower& k = kQ, const std::string& var = "t") {
    return parse_ratfunc(s, k, var);
}
FFPlace place(const std::string& s, const Tower& k = kQ) { return FFPlace::finite(parse_upoly(s, k), k); }
SquareClass cls(long n) { return SquareClass::of(kQ.constant(n)); }

}  // namespace

TEST(Poly, Arithmetic) {
    UPoly p = parse_upoly("t^3 - 2*t + 1", kQ), d = parse_upoly("t - 1", kQ);
    auto [q, r] = p.divmod(d);
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(q, parse_upoly("t^2 + t - 1", kQ));
    EXPECT_EQ(poly_gcd(p, parse_upoly("t^2 - 1", kQ)), d);
    EXPECT_EQ(p.negate_variable(), parse_upoly("-t^3 + 2*t + 1", kQ));
    EXPECT_EQ(d.power_variable(2), parse_upoly("t^2 - 1", kQ));
}

TEST(Poly, Factoring) {
    RatFunc f = rf("(t^2 - 1)*(t^2 + 1)^2 : t^3");
    EXPECT_EQ(f.valuation(place("t - 1")), 1);
    EXPECT_EQ(f.valuation(place("t + 1")), 1);
    EXPECT_EQ(f.valuation(place("t^2 + 1")), 2);
    EXPECT_EQ(f.valuation(place("t")), -3);
    EXPECT_EQ(f.valuation(FFPlace::infinity(kQ)), -3);
    EXPECT_THROW(place("t^2 - 4"), std::invalid_argument);
    EXPECT_THROW(rf("t^3 - 2"), Unsupported);
}

TEST(Brauer, Valuations) {
    EXPECT_EQ(valuation(rf("t^2"), place("t")), 2);
    EXPECT_EQ(valuation(rf("1 : t - 1"), place("t - 1")), -1);
    EXPECT_EQ(valuation(rf("(t^2 + 1) : t^3"), FFPlace::infinity(kQ)), 1);
}

TEST(Brauer, ResidueExamples) {
    auto s = parse_symbol("(t, t+1)", kQ);
    EXPECT_TRUE(residue_symbol(s, place("t")).trivial());
    EXPECT_EQ(residue_symbol(s, place("t + 1")), cls(-1));
    EXPECT_EQ(residue_symbol(parse_symbol("(t, t)", kQ), place("t")), cls(-1));
    EXPECT_EQ(residue_symbol(parse_symbol("(7, t)", kQ), place("t")), cls(7));
    EXPECT_TRUE(residue_profile({parse_symbol("(1, t^2 + 3)", kQ)}, kQ).entries.empty());
}

TEST(Brauer, ResidueAtQuadraticPlace) {
    // (t, t^2 + 1) at t^2 + 1: the residue is theta = image of t, so the class
    // of i in Q(i).
    auto v = place("t^2 + 1");
    auto r = residue_symbol(parse_symbol("(t, t^2 + 1)", kQ), v);
    EXPECT_FALSE(r.trivial());
    EXPECT_EQ(r, SquareClass::of(v.root()));
    // t^2 = -1 is not a square class change: (t^2, t^2 + 1) has residue -1.
    EXPECT_EQ(residue_symbol(parse_symbol("(t^2, t^2 + 1)", kQ), v), SquareClass::of(v.residue_field().constant(-1)));
}

TEST(Brauer, FaddeevExamples) {
    auto fr = faddeev_reconstruct(parse_profile({"t:-1"}, kQ));
    ASSERT_TRUE(fr.ok);
    ASSERT_EQ(fr.algebra.size(), 1u);
    EXPECT_EQ(fr.algebra[0].str(), "(-1, (t))");
    EXPECT_TRUE(fr.roundtrip);
    EXPECT_EQ(fr.recomputed.at(place("t")), cls(-1));

    auto empty = faddeev_reconstruct(parse_profile({}, kQ));
    EXPECT_TRUE(empty.ok && empty.algebra.empty() && empty.roundtrip);

    auto quad = faddeev_reconstruct(parse_profile({"t^2+1:theta - 1"}, kQ));
    ASSERT_TRUE(quad.ok);
    EXPECT_TRUE(quad.roundtrip);
    auto v = place("t^2 + 1");
    EXPECT_EQ(quad.recomputed.at(v), SquareClass::of(v.root() - v.residue_field().one()));
}

TEST(Brauer, FaddeevObstruction) {
    auto bad = faddeev_reconstruct(parse_profile({"t:-1", "inf:1"}, kQ));
    EXPECT_FALSE(bad.ok);
    ASSERT_TRUE(bad.obstruction.has_value());
    EXPECT_EQ(*bad.obstruction, cls(-1));
    EXPECT_TRUE(faddeev_reconstruct(parse_profile({"t:-1", "inf:-1"}, kQ)).ok);
    // N(theta + 1) = -2 at t^2 - 3.
    EXPECT_FALSE(faddeev_reconstruct(parse_profile({"t^2-3:theta+1", "inf:-1"}, kQ)).ok);
    EXPECT_TRUE(faddeev_reconstruct(parse_profile({"t^2-3:theta+1", "inf:-2"}, kQ)).ok);
}

TEST(Brauer, OverQuadraticBase) {
    Tower k5 = kQ.adjoin("sqrt5", kQ.constant(5));
    auto r = parse_profile({"t^2-2:theta+sqrt5", "t-sqrt5:3+sqrt5"}, k5);
    auto fr = faddeev_reconstruct(r);
    ASSERT_TRUE(fr.ok);
    EXPECT_TRUE(fr.roundtrip);
}

TEST(Brauer, CoresExpandOracle) {
    Tower q;
    BranchCoverData xt{q, 2, {parse_upoly("u", q, "u")}, RatFunc()};
    DeclaredFunction ell{{parse_ratfunc("u^2", q, "u")}, {}};
    auto ce = cores_expand(ell, xt);
    ASSERT_TRUE(ce.collapsed.has_value());
    BiSymbol expect{BiFunc::of_u(parse_ratfunc("u^2", q, "u")),
                    BiFunc::x_minus(parse_upoly("u", q, "u")) * BiFunc::x_minus(parse_upoly("-u", q, "u"))};
    EXPECT_EQ(ce.collapsed->str(), expect.str());

    DeclaredFunction one{{RatFunc()}, {}};
    auto prof = residues_A_ell(one, xt);
    for (const auto& c : prof.components) EXPECT_TRUE(c.cls.trivial());

    BranchCoverData split{q, 1, {parse_upoly("1", q), parse_upoly("-1", q), parse_upoly("2", q), parse_upoly("-2", q)},
                          RatFunc()};
    auto d = cores_expand(DeclaredFunction{std::vector<RatFunc>(4, rf("5")), {}}, split);
    ASSERT_TRUE(d.collapsed.has_value());
    EXPECT_EQ(d.collapsed->f.str("t"), BiFunc::of_u(rf("5")).str("t"));
    EXPECT_EQ(d.collapsed->g.x_degree(), 4);
}

TEST(Brauer, DeskCoversAgreeWithOracle) {
    for (const auto& dc : desk_cover_cases())
        for (const auto& l : dc.functions) {
            auto cmp = compare_with_cores(l, dc.cover);
            EXPECT_TRUE(cmp.agree) << dc.name << ": " << cmp.to_json().dump();
            EXPECT_TRUE(cmp.boundary_is_l) << dc.name;
        }
}

TEST(Brauer, Membership) {
    Tower q;
    BranchCoverData xt{q, 2, {parse_upoly("u", q, "u")}, RatFunc()};
    auto allowed = allowed_points(xt);
    DeclaredFunction sq{{parse_ratfunc("(u - 3)^2", q, "u")}, {}};
    EXPECT_TRUE(membership_kBE(divisor_of(sq, xt), allowed));
    DeclaredFunction l{{parse_ratfunc("u^2", q, "u")}, {}};
    EXPECT_TRUE(membership_kBE(divisor_of(l, xt), allowed));
    DeclaredFunction odd{{parse_ratfunc("3*(u - 1)*(u + 2)^2", q, "u")}, {}};
    EXPECT_FALSE(membership_kBE(divisor_of(odd, xt), allowed));
    // A declared divisor that disagrees with the valuations is reported.
    DeclaredFunction wrong{{parse_ratfunc("u - 1", q, "u")}, {{"B1:u - 1", 2}}};
    EXPECT_FALSE(divisor_mismatches(wrong, xt).empty());
}

TEST(Brauer, ParseErrors) {
    EXPECT_ANY_THROW(parse_symbol("(t,", kQ));
    EXPECT_ANY_THROW(parse_symbol("(t, 0)", kQ));
    EXPECT_ANY_THROW(parse_profile({"t"}, kQ));
}
