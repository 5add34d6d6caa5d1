#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebr/presets.hpp"

namespace ebr {

// Permutation of the 8 Weierstrass points P1..P4 (0..3), Q1..Q4 (4..7).
using PointPerm = std::array<int, 8>;
PointPerm identity_point_perm();
PointPerm compose(const PointPerm& outer, const PointPerm& inner);
int point_index(const std::string& label);  // "P3" -> 2, "Q1" -> 4
std::string point_label(int k);

// One row of the Galois table, or a product of rows.
struct GaloisRow {
    std::string name;
    std::map<std::string, std::string> field;  // root -> image expression
    std::vector<std::string> pic_x;            // annotation only
    std::map<std::string, std::string> pic;    // F/G label -> F/G label, all 28 labels
    PointPerm weierstrass = identity_point_perm();
    std::vector<std::string> factors;          // row names, rightmost applied first
    std::vector<std::map<std::string, std::string>> factor_fields;
};

// Parses the "galois" array. Entries "A<->B" swap, "A->B" map; since
// F_i + G_i is the same class for every i, A->B also forces
// partner(A)->partner(B). Throws std::invalid_argument on conflicts or
// non-bijective maps.
std::vector<GaloisRow> load_galois_rows(const nlohmann::json& tables = default_tables());

const GaloisRow& find_row(const std::vector<GaloisRow>& rows, const std::string& name);

// outer after inner
GaloisRow compose(const GaloisRow& outer, const GaloisRow& inner);

// How a row acts on the distinguished subfields, decided in the full field.
struct RowFieldAction {
    std::string name;
    bool fixes_k0 = false;
    bool fixes_k1 = false;
    bool flips_theta0 = false;
    bool flips_sqrtab = false;
    bool fixes_theta0 = false;
    bool fixes_sqrtab = false;
};

TowerAut row_automorphism(const PresetField& k, const GaloisRow& row);
RowFieldAction field_action(const PresetField& k, const GaloisRow& row);

// Weierstrass points permutation induced by the field action on the
// point table (the point with equations L1, L2 goes to the point whose
// equations are the images). Computed in the full field.
std::optional<PointPerm> induced_point_perm(const PresetField& k, const GaloisRow& row,
                                            const nlohmann::json& tables = default_tables());

// Generators of Gal(K/K1): rows fixing K1, and products of two rows that
// fix K1 although neither factor does.
struct GeneratorChoice {
    std::vector<GaloisRow> rows;
    std::vector<std::string> notes;
};
GeneratorChoice gk1_generators(const PresetField& k, const std::vector<GaloisRow>& rows);

// Rows fixing K0 (the generators of Gal(K1/K0) after restriction).
std::vector<GaloisRow> k0_rows(const PresetField& k, const std::vector<GaloisRow>& rows);

}  // namespace ebr
