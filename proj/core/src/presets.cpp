#include "ebr/presets.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

namespace ebr {

std::string Triplet::str() const {
    return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

std::string to_string(Preset p) {
    switch (p) {
        case Preset::K0: return "K0";
        case Preset::K1: return "K1";
        default: return "K";
    }
}

Preset parse_preset(const std::string& s) {
    if (s == "K0") return Preset::K0;
    if (s == "K1") return Preset::K1;
    if (s == "K") return Preset::K;
    throw std::invalid_argument("unknown field preset: " + s);
}

const TowerElem& PresetField::value(const std::string& name) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end())
        throw std::invalid_argument("no element named " + name + " in " + to_string(preset_));
    return it->second;
}

TowerElem PresetField::eval(const Expr& e) const {
    std::function<TowerElem(const std::string&)> var = [this](const std::string& n) {
        return value(n);
    };
    std::function<TowerElem(const Integer&)> num = [this](const Integer& n) {
        return tower_.constant(Rational(n));
    };
    return eval_expr<TowerElem>(e, var, num);
}

TowerElem PresetField::eval(std::string_view expr) const { return eval(*parse_expr(expr)); }

TowerElem PresetField::eval_with(const Expr& e,
                                   const std::map<std::string, TowerElem>& extra) const {
    std::function<TowerElem(const std::string&)> var = [&](const std::string& n) {
        auto it = extra.find(n);
        return it != extra.end() ? it->second : value(n);
    };
    std::function<TowerElem(const Integer&)> num = [this](const Integer& n) {
        return tower_.constant(Rational(n));
    };
    return eval_expr<TowerElem>(e, var, num);
}

std::vector<TowerElem> PresetField::linear_coefficients(std::string_view expr,
                                                          const std::vector<std::string>& vars) const {
    ExprPtr e = parse_expr(expr);
    auto at = [&](std::size_t hot) {
        std::map<std::string, TowerElem> extra;
        for (std::size_t k = 0; k < vars.size(); ++k)
            extra[vars[k]] = k == hot ? tower_.one() : tower_.zero();
        return eval_with(*e, extra);
    };
    std::vector<TowerElem> coeffs;
    TowerElem sum = tower_.zero();
    for (std::size_t k = 0; k < vars.size(); ++k) {
        coeffs.push_back(at(k));
        sum += coeffs.back();
    }
    // homogeneous and linear: value at 0 vanishes and values add up
    std::map<std::string, TowerElem> ones;
    for (const auto& v : vars) ones[v] = tower_.one();
    if (!at(vars.size()).is_zero() || eval_with(*e, ones) != sum)
        throw std::invalid_argument("not a linear form: " + std::string(expr));
    return coeffs;
}

// Deep towers take a noticeable time to certify, so builds are memoized.
PresetField tower_build(const Triplet& t, Preset preset, const nlohmann::json& tables,
                          unsigned depth_cap) {
    static std::mutex mu;
    static std::map<std::string, PresetField> cache;
    const std::string key = t.str() + "|" + to_string(preset) + "|" + std::to_string(depth_cap) + "|" +
                            std::to_string(std::hash<std::string>{}(tables.dump()));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    PresetField f = detail::build_field(t, preset, tables, depth_cap);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(f)).first->second;
}

PresetField detail::build_field(const Triplet& t, Preset preset, const nlohmann::json& tables,
                                  unsigned depth_cap) {
    const auto& spec = tables.at("fields").at(to_string(preset));
    PresetField f;
    f.triplet_ = t;
    f.preset_ = preset;
    f.tower_ = Tower().with_depth_cap(depth_cap);
    f.symbols_["a"] = f.tower_.constant(Rational(t.a));
    f.symbols_["b"] = f.tower_.constant(Rational(t.b));
    f.symbols_["c"] = f.tower_.constant(Rational(t.c));
    for (const auto& step : spec.at("steps")) {
        const std::string name = step.at(0);
        TowerElem rad = f.eval(step.at(1).get<std::string>());
        f.tower_ = f.tower_.adjoin(name, rad);
        f.symbols_[name] = f.tower_.root(name);
    }
    for (auto& [n, v] : f.symbols_) v = v + f.tower_.zero();
    for (const auto& d : spec.at("derived")) {
        const std::string name = d.at(0);
        try {
            f.symbols_[name] = f.eval(d.at(1).get<std::string>());
        } catch (const std::domain_error& e) {
            f.diagnostics_.push_back(name + ": " + e.what());
        }
    }
    return f;
}

std::vector<RelationResult> check_relations(const PresetField& k, const nlohmann::json& tables) {
    std::vector<RelationResult> out;
    for (const auto& rel : tables.at("relations")) {
        RelationResult r;
        r.name = rel.at("name");
        r.lhs = rel.at("lhs");
        r.rhs = rel.at("rhs");
        try {
            r.holds = verify_identity(k.eval(r.lhs), k.eval(r.rhs));
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

TowerAut galois_row_aut(const PresetField& k, const nlohmann::json& row) {
    std::map<std::string, TowerElem> images;
    for (const auto& [root, expr] : row.at("field").items())
        images[root] = k.eval(expr.get<std::string>());
    return TowerAut::from_images(k.tower(), images);
}

}  // namespace ebr
