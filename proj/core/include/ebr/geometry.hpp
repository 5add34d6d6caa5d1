#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebr/galois.hpp"

namespace ebr {

// Projective point with coordinates in a tower.
struct ProjPoint {
    std::string ambient;  // "P2", "P1xP1", ...
    std::vector<TowerElem> coords;
    bool is_zero() const;
    // Equality up to a nonzero scalar (2x2 minors vanish).
    bool same(const ProjPoint& o) const;
};

// Polynomial in v0, v1, v2, w0, w1, w2 with tower coefficients.
class Poly {
public:
    using Exps = std::array<std::uint8_t, 6>;
    static const std::array<std::string, 6>& variables();

    Poly() = default;
    static Poly constant(const TowerElem& c);
    static Poly var(int k, const Tower& t);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Exps, TowerElem>& terms() const { return terms_; }
    std::string str() const;
    // Substitutes x_k -> sign[k] * x_k.
    Poly signed_substitution(const std::array<int, 6>& sign) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);  // constant divisors only
    friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

private:
    void add(const Exps& e, const TowerElem& c);
    std::map<Exps, TowerElem> terms_;
};

// Parses an expression in the six coordinates and the names of the field.
Poly parse_poly(const PresetField& k, const std::string& text);

struct PointCheck {
    std::string label;
    ProjPoint point;
    TowerElem conic_value;
    bool on_conic = false;
};

// Weierstrass points from the point table, each as the intersection of its two lines in P2(v0:v1:v2).
std::vector<PointCheck> weierstrass_on_conic(const PresetField& k,
                                             const nlohmann::json& tables = default_tables());
TowerElem conic_value(const PresetField& k, const ProjPoint& p);

// v0/v1 at the P points is a root of 5a x^2 - c x + 5b; reports whether any
// Q point satisfies it (it may not, if no automorphism mixes P's and Q's).
struct OrbitSeparation {
    bool p_points_satisfy = false;
    bool q_points_avoid = false;
    bool ok() const { return p_points_satisfy && q_points_avoid; }
};
OrbitSeparation weierstrass_orbit_separation(const PresetField& k,
                                             const nlohmann::json& tables = default_tables());

// Double cover coordinates of the map to P1 x P1 and the substitution test.
struct EquivarianceResult {
    std::string factor;
    Poly num, den;
    bool negates = false;   // [num : den] -> [num : -den] after the substitution
    bool identity = false;  // [num : den] -> [num : den]
};
std::vector<EquivarianceResult> phi_equivariance(const PresetField& k,
                                                 const std::array<int, 6>& sign = {-1, -1, -1, 1, 1, 1},
                                                 const nlohmann::json& tables = default_tables());

// The involution (x, t) -> (-x, -t) on the listed blown-down points.
struct PairingResult {
    std::array<int, 4> image{-1, -1, -1, -1};  // -1 if the image is not listed
    bool closed = false;
    bool involution = false;
    bool fixed_point_free = false;
};
PairingResult exceptional_minus_one_pairing(const PresetField& k,
                                            const nlohmann::json& tables = default_tables());

struct GenusEntry {
    std::string name;
    int geometric_genus = 0;
    int nodes = 0;
    int arithmetic_genus = 0;
    std::string covers;  // name of the target curve for a cover, or empty
    int degree = 0;
    int ramification = 0;
};
struct GenusLedger {
    std::vector<GenusEntry> entries;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    const GenusEntry& at(const std::string& name) const;
};
// Builds the ledger: genus of B from adjunction for three quadrics in P4,
// the etale quotient, and the two nodal models. Then checks every entry.
GenusLedger genus_bookkeeping();
std::vector<std::string> check_ledger(const std::vector<GenusEntry>& entries);

// Weierstrass columns of the Galois table against the field action on the point table.
struct PointTableCheck {
    std::string row;
    PointPerm table;
    std::optional<PointPerm> induced;
    bool agree = false;
};
std::vector<PointTableCheck> point_table_check(const PresetField& k,
                                               const std::vector<GaloisRow>& rows,
                                               const nlohmann::json& tables = default_tables());

}  // namespace ebr
