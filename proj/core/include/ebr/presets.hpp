#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/expr.hpp"
#include "ebr/quadtower.hpp"
#include "ebr/tables.hpp"

namespace ebr {

struct Triplet {
    Integer a, b, c;
    std::string str() const;
    friend bool operator==(const Triplet& x, const Triplet& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const Triplet& x, const Triplet& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
};

enum class Preset { K0, K1, K };
std::string to_string(Preset p);
Preset parse_preset(const std::string& s);

// A preset field for a triplet together with named elements: a, b, c, the
// tower roots, and the derived elements listed in the tables file.
class PresetField;
namespace detail {
PresetField build_field(const Triplet&, Preset, const nlohmann::json&, unsigned);
}

class PresetField {
public:
    const Tower& tower() const { return tower_; }
    const Triplet& triplet() const { return triplet_; }
    Preset preset() const { return preset_; }

    bool has(const std::string& name) const { return symbols_.count(name) != 0; }
    const TowerElem& value(const std::string& name) const;
    const std::map<std::string, TowerElem>& symbols() const { return symbols_; }

    TowerElem eval(std::string_view expr) const;
    TowerElem eval(const Expr& e) const;
    // Same, with extra bindings that shadow the field's names.
    TowerElem eval_with(const Expr& e, const std::map<std::string, TowerElem>& extra) const;

    // Coefficients of a linear form in the given variables.
    std::vector<TowerElem> linear_coefficients(std::string_view expr,
                                               const std::vector<std::string>& vars) const;

    // Derived elements that could not be formed (division by zero).
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    friend PresetField detail::build_field(const Triplet&, Preset, const nlohmann::json&, unsigned);
    Tower tower_;
    Triplet triplet_;
    Preset preset_ = Preset::K;
    std::map<std::string, TowerElem> symbols_;
    std::vector<std::string> diagnostics_;
};

PresetField tower_build(const Triplet& t, Preset preset,
                          const nlohmann::json& tables = default_tables(),
                          unsigned depth_cap = Tower::kDefaultDepthCap);

struct RelationResult {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool holds = false;
    std::string error;
};

// Evaluates every listed generator relation in the field (preset K).
std::vector<RelationResult> check_relations(const PresetField& k,
                                            const nlohmann::json& tables = default_tables());

// Automorphism of the field for one Galois table row ("field" images).
TowerAut galois_row_aut(const PresetField& k, const nlohmann::json& row);

}  // namespace ebr
