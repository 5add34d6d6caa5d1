#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebr/quadtower.hpp"

namespace ebr {

// Raised when a computation needs a place of degree above 2 or a root that
// the factoring routine cannot find.
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense polynomial in one variable over a tower, constant term first.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<TowerElem> coeffs);
    static UPoly constant(const TowerElem& c);
    static UPoly monomial(const TowerElem& c, int degree);
    static UPoly linear(const TowerElem& root);  // x - root

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<TowerElem>& coeffs() const { return c_; }
    TowerElem coeff(int i) const;
    const TowerElem& lead() const { return c_.back(); }
    bool is_rational() const;

    TowerElem eval(const TowerElem& x) const;
    UPoly monic() const;
    UPoly negate_variable() const;     // p(-x)
    UPoly power_variable(int m) const;  // p(x^m)
    UPoly compose(const UPoly& q) const;
    UPoly derivative() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }
    UPoly scaled(const TowerElem& c) const;
    UPoly pow(int e) const;

    // Euclidean division; throws on a zero divisor.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<TowerElem> c_;
};

UPoly poly_gcd(UPoly a, UPoly b);  // monic, or zero

// A place of k(t) over a tower k: a monic irreducible polynomial of degree 1
// or 2, or the place at infinity. Carries its residue field.
class FFPlace {
public:
    FFPlace();  // infinity over Q
    static FFPlace infinity(const Tower& base);
    // Throws std::invalid_argument unless p is monic and irreducible of degree
    // 1 or 2 over base (Unsupported when irreducibility is undecided).
    static FFPlace finite(const UPoly& p, const Tower& base);

    bool is_infinite() const { return poly_.is_zero(); }
    const UPoly& poly() const { return poly_; }
    int degree() const { return is_infinite() ? 1 : poly_.degree(); }
    const Tower& base() const { return base_; }
    const Tower& residue_field() const { return kappa_; }
    // Image of the variable in the residue field (a root of the polynomial).
    const TowerElem& root() const { return theta_; }
    // Norm from the residue field down to the base.
    TowerElem norm(const TowerElem& x) const;
    // Conjugate over the base (identity in degree 1).
    TowerElem conjugate(const TowerElem& x) const;

    std::string str(const std::string& var = "t") const;
    const std::string& key() const { return key_; }

    friend bool operator<(const FFPlace& a, const FFPlace& b);
    friend bool operator==(const FFPlace& a, const FFPlace& b) { return a.key_ == b.key_; }
    friend bool operator!=(const FFPlace& a, const FFPlace& b) { return !(a == b); }

private:
    UPoly poly_;
    Tower base_, kappa_;
    TowerElem theta_;
    std::string key_;
};

// Nonzero rational function in one variable, kept factored as a constant
// times powers of places.
class RatFunc {
public:
    RatFunc();  // 1 over Q
    static RatFunc constant(const TowerElem& c);
    static RatFunc of_place(const FFPlace& p, int e = 1);
    // Factors p over the tower of `base`; throws std::domain_error on zero and
    // Unsupported when a factor of degree above 2 has no root found.
    static RatFunc from_poly(const UPoly& p, const Tower& base);

    const TowerElem& constant_factor() const { return c_; }
    const std::map<FFPlace, int>& factors() const { return f_; }
    bool is_constant() const { return f_.empty(); }
    int degree() const;  // deg numerator - deg denominator

    int valuation(const FFPlace& v) const;
    // Value in the residue field of a function of valuation 0 at v.
    TowerElem unit_value(const FFPlace& v) const;
    // Places (finite ones) where the function has a zero or pole.
    std::vector<FFPlace> support() const;

    UPoly numerator() const;
    UPoly denominator() const;
    TowerElem eval(const TowerElem& x) const;  // x must avoid the poles

    RatFunc inv() const;
    RatFunc pow(int e) const;
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
    // Sums expand and refactor over the tower of `base`.
    static RatFunc sum(const RatFunc& a, const RatFunc& b, const Tower& base);

    RatFunc negate_variable(const Tower& base) const;  // f(-x)
    // f(x^m), refactored over the tower of `base`.
    RatFunc power_variable(int m, const Tower& base) const;
    // The same function over a larger tower, refactored there.
    RatFunc extend(const Tower& bigger) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str(const std::string& var = "t") const;

private:
    TowerElem c_;
    std::map<FFPlace, int> f_;
};

// Square classes ---------------------------------------------------------

// True iff a/b is a square in the tower of a and b. Throws Unsupported if the
// squareness test is inconclusive.
bool same_square_class(const TowerElem& a, const TowerElem& b);
bool is_square_elem(const TowerElem& a);

// A class of K^x / K^x2 where K is a tower field or a rational function field
// over one. The stored representative has exponents 0 or 1 and, when the
// constant is rational, a square-free integer constant.
class SquareClass {
public:
    SquareClass() = default;  // trivial class of Q
    SquareClass(const RatFunc& f, std::string var = "");
    static SquareClass of(const TowerElem& c) { return SquareClass(RatFunc::constant(c)); }

    const RatFunc& rep() const { return rep_; }
    const std::string& var() const { return var_; }
    bool is_constant() const { return rep_.is_constant(); }
    bool trivial() const;
    SquareClass operator*(const SquareClass& o) const;

    friend bool operator==(const SquareClass& a, const SquareClass& b);
    friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }

    std::string str() const;

private:
    RatFunc rep_;
    std::string var_;
};

// Parses a polynomial or rational function; "p : q" means p/q. `names` maps
// extra identifiers (e.g. field generators) to constants.
RatFunc parse_ratfunc(const std::string& text, const Tower& base, const std::string& var = "t",
                      const std::map<std::string, TowerElem>& names = {});
UPoly parse_upoly(const std::string& text, const Tower& base, const std::string& var = "t",
                  const std::map<std::string, TowerElem>& names = {});

}  // namespace ebr
