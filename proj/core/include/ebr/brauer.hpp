#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebr/poly.hpp"

namespace ebr {

// (f, g) over k(t).
struct QuaternionSymbolFF {
    RatFunc f, g;
    std::string str(const std::string& var = "t") const;
};
// Formal sum of symbols, a 2-torsion class of Br k(t).
using SymbolSum = std::vector<QuaternionSymbolFF>;

// "(f, g)" with f, g as accepted by parse_ratfunc.
QuaternionSymbolFF parse_symbol(const std::string& text, const Tower& base, const std::string& var = "t",
                                const std::map<std::string, TowerElem>& names = {});

inline int valuation(const RatFunc& f, const FFPlace& v) { return f.valuation(v); }

// (-1)^(ab) f^b g^(-a) at v with a = v(f), b = v(g), as a class of the
// residue field modulo squares.
SquareClass residue_symbol(const QuaternionSymbolFF& s, const FFPlace& v);
SquareClass residue_symbol(const SymbolSum& s, const FFPlace& v);

// Finite places where some entry has a zero or pole, then infinity.
std::vector<FFPlace> symbol_support(const SymbolSum& s, const Tower& base);

struct ResidueProfile {
    Tower base;
    std::string var = "t";
    std::map<FFPlace, SquareClass> entries;  // unlisted places carry the trivial class

    SquareClass at(const FFPlace& v) const;
    bool lists_infinity() const;
    std::string str() const;
    nlohmann::json to_json() const;  // array of [place, class] pairs plus flags
};

ResidueProfile residue_profile(const SymbolSum& a, const Tower& base, bool keep_trivial = false);

// Entries "place:class": place is a monic polynomial in var or "inf"; class
// is a constant of the residue field, where "theta" names the root of the
// place polynomial.
ResidueProfile parse_profile(const std::vector<std::string>& entries, const Tower& base,
                             const std::string& var = "t");

// Product over the listed places of N(r_v) from the residue field to k. For
// a profile that lists infinity this class is trivial exactly when the
// profile comes from Br k(t).
SquareClass corestriction_sum(const ResidueProfile& r);

struct FaddeevResult {
    bool ok = false;
    SymbolSum algebra;
    std::optional<SquareClass> obstruction;  // set when !ok
    ResidueProfile recomputed;
    // Recomputed residues equal the profile at every finite place, and at
    // infinity when the profile lists it.
    bool roundtrip = false;
    nlohmann::json to_json() const;
};
// Sum of (r, t - t0) for rational places, and (g, pi) + (pi(t1), t - t1)
// with g linear, g(theta) = r, t1 the root of g, for quadratic places. No
// constant algebra is added.
FaddeevResult faddeev_reconstruct(const ResidueProfile& r);

// Bivariate functions over k(u)(x) --------------------------------------

// c * prod pi(u)^e * prod (x - alpha(u))^f with alpha in k[u].
class BiFunc {
public:
    BiFunc() = default;
    static BiFunc of_u(const RatFunc& f);
    static BiFunc x_minus(const UPoly& alpha, int e = 1);

    const RatFunc& u_part() const { return u_; }
    const std::map<std::string, std::pair<UPoly, int>>& x_factors() const { return x_; }
    int x_degree() const;

    BiFunc inv() const;
    BiFunc pow(int e) const;
    friend BiFunc operator*(const BiFunc& a, const BiFunc& b);
    BiFunc negate_u(const Tower& base) const;  // u -> -u

    std::string str(const std::string& uvar = "u") const;

private:
    RatFunc u_;
    std::map<std::string, std::pair<UPoly, int>> x_;
};

struct BiSymbol {
    BiFunc f, g;
    std::string str(const std::string& uvar = "u") const;
};

// Places of k(u)(x) used here: the section x = alpha(u), the section at
// x = infinity, and the fibre over a finite place of k(u).
struct BiPlace {
    enum class Kind { Section, XInfinity, Vertical };
    Kind kind = Kind::XInfinity;
    UPoly alpha;
    FFPlace pi;

    static BiPlace section(const UPoly& alpha) { return {Kind::Section, alpha, {}}; }
    static BiPlace x_infinity() { return {}; }
    static BiPlace vertical(const FFPlace& p) { return {Kind::Vertical, {}, p}; }
    std::string str(const std::string& uvar = "u") const;
    friend bool operator<(const BiPlace& a, const BiPlace& b);
};

int valuation(const BiFunc& f, const BiPlace& v);
// Horizontal places give classes of k(u); vertical ones classes of kappa(pi)(x).
SquareClass residue_bi(const std::vector<BiSymbol>& s, const BiPlace& v, const Tower& base,
                       const std::string& uvar = "u");
std::vector<BiPlace> bi_support(const std::vector<BiSymbol>& s);

// Desk covers -------------------------------------------------------------

// y^2 = c'(t) h(x) with h = prod over components of prod (x - alpha(u)),
// t = u^m. For m = 2 each listed root alpha(u) stands for the component with
// roots alpha(u), alpha(-u); for m = 1, u is t itself.
struct BranchCoverData {
    Tower base;
    int m = 1;
    std::vector<UPoly> roots;
    RatFunc cprime;

    std::string uvar() const { return m == 1 ? "t" : "u"; }
    std::vector<UPoly> all_roots() const;
    int genus() const { return static_cast<int>(all_roots().size()) / 2 - 1; }
    void validate() const;  // throws std::invalid_argument
    std::string str() const;
};

// An element of k(B): one value per component, in that component's
// coordinate u. The divisor is optional input data.
struct DeclaredFunction {
    std::vector<RatFunc> values;
    std::map<std::string, int> divisor;  // labels "B1:u - 1", "B1:inf"
};

// Divisor of the function on the components (labels as above).
std::map<std::string, int> divisor_of(const DeclaredFunction& l, const BranchCoverData& b);
// Labels where the declared divisor disagrees with the valuations.
std::vector<std::string> divisor_mismatches(const DeclaredFunction& l, const BranchCoverData& b);
// Points at t = infinity on each component.
std::set<std::string> allowed_points(const BranchCoverData& b);
// True iff every point with odd multiplicity is in the allowed set.
bool membership_kBE(const std::map<std::string, int>& divisor, const std::set<std::string>& allowed);

struct CoresExpansion {
    std::vector<BiSymbol> terms;      // (l^s, x - alpha^s) over every root
    std::optional<BiSymbol> collapsed;  // (l, h(x)) when l lies in k(t)
};
CoresExpansion cores_expand(const DeclaredFunction& l, const BranchCoverData& b);

struct AEllEntry {
    std::string place;
    SquareClass cls;
    bool constant = true;  // no odd place in x: lies in the image of kappa(t0)
};
struct AEllProfile {
    std::vector<AEllEntry> components;  // residue [l_j] at each component of B
    AEllEntry s_infinity;               // the section x = infinity
    std::vector<AEllEntry> vertical;    // fibres t = t0, with their places
    std::vector<FFPlace> fibres;
    std::string coordinate_change;
    bool vertical_in_constant_image() const;
    nlohmann::json to_json() const;
};
// Residues from the component, norm and fibre formulas (roots are integral
// over k[t], so x has no pole on finite fibres of B).
AEllProfile residues_A_ell(const DeclaredFunction& l, const BranchCoverData& b);

struct OracleComparison {
    bool agree = false;
    bool boundary_is_l = false;  // residue at every root equals the value of l
    std::size_t places = 0;
    std::vector<std::string> mismatches;
    nlohmann::json to_json() const;
};
// Pulls the profile back to k(u)(x) and compares it with the residues of the
// expanded corestriction at every support place plus sample sections.
OracleComparison compare_with_cores(const DeclaredFunction& l, const BranchCoverData& b);

}  // namespace ebr
