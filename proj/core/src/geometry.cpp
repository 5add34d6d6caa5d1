#include "ebr/geometry.hpp"

#include <stdexcept>

namespace ebr {

bool ProjPoint::is_zero() const {
    for (const auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

bool ProjPoint::same(const ProjPoint& o) const {
    if (coords.size() != o.coords.size() || is_zero() || o.is_zero()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (coords[i] * o.coords[j] != coords[j] * o.coords[i]) return false;
    return true;
}

const std::array<std::string, 6>& Poly::variables() {
    static const std::array<std::string, 6> v = {"v0", "v1", "v2", "w0", "w1", "w2"};
    return v;
}

Poly Poly::constant(const TowerElem& c) {
    Poly p;
    p.add(Exps{}, c);
    return p;
}

Poly Poly::var(int k, const Tower& t) {
    Poly p;
    Exps e{};
    e[k] = 1;
    p.add(e, t.one());
    return p;
}

void Poly::add(const Exps& e, const TowerElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (int k = 0; k < 6; ++k)
            if (e[k]) out += "*" + variables()[k] + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    }
    return out;
}

Poly Poly::signed_substitution(const std::array<int, 6>& sign) const {
    Poly out;
    for (const auto& [e, c] : terms_) {
        int s = 1;
        for (int k = 0; k < 6; ++k)
            if (sign[k] < 0 && e[k] % 2 == 1) s = -s;
        out.add(e, s > 0 ? c : -c);
    }
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add(e, c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r;
    for (const auto& [e, c] : a.terms_) r.add(e, -c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Poly::Exps e{};
            for (int k = 0; k < 6; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
            r.add(e, ca * cb);
        }
    return r;
}

Poly operator/(const Poly& a, const Poly& b) {
    if (b.terms_.size() != 1 || b.terms_.begin()->first != Poly::Exps{})
        throw std::invalid_argument("polynomial division by a non-constant");
    return a * Poly::constant(b.terms_.begin()->second.inv());
}

Poly parse_poly(const PresetField& k, const std::string& text) {
    const Tower& t = k.tower();
    std::function<Poly(const std::string&)> var = [&](const std::string& n) {
        for (int i = 0; i < 6; ++i)
            if (Poly::variables()[i] == n) return Poly::var(i, t);
        return Poly::constant(k.value(n) + t.zero());
    };
    std::function<Poly(const Integer&)> num = [&](const Integer& n) {
        return Poly::constant(t.constant(Rational(n)));
    };
    return eval_expr<Poly>(*parse_expr(text), var, num);
}

namespace {

std::vector<TowerElem> cross(const std::vector<TowerElem>& u, const std::vector<TowerElem>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

ProjPoint weierstrass_point(const PresetField& k, const nlohmann::json& row) {
    const std::vector<std::string> vars = {"v0", "v1", "v2"};
    auto l1 = k.linear_coefficients(row.at("equations").at(0).get<std::string>(), vars);
    auto l2 = k.linear_coefficients(row.at("equations").at(1).get<std::string>(), vars);
    return ProjPoint{"P2", cross(l1, l2)};
}

}  // namespace

TowerElem conic_value(const PresetField& k, const ProjPoint& p) {
    const auto& x = p.coords;
    return x[0] * x[0] * k.value("a") + x[1] * x[1] * k.value("b") + x[2] * x[2] * k.value("c");
}

std::vector<PointCheck> weierstrass_on_conic(const PresetField& k, const nlohmann::json& tables) {
    std::vector<PointCheck> out;
    for (const auto& row : tables.at("weierstrass_points")) {
        PointCheck pc;
        pc.label = row.at("label");
        pc.point = weierstrass_point(k, row);
        pc.conic_value = conic_value(k, pc.point);
        pc.on_conic = !pc.point.is_zero() && pc.conic_value.is_zero();
        out.push_back(pc);
    }
    return out;
}

OrbitSeparation weierstrass_orbit_separation(const PresetField& k, const nlohmann::json& tables) {
    OrbitSeparation r{true, true};
    const TowerElem &a = k.value("a"), &b = k.value("b"), &c = k.value("c");
    for (const auto& row : tables.at("weierstrass_points")) {
        ProjPoint p = weierstrass_point(k, row);
        if (p.coords[1].is_zero()) {
            r = {false, false};
            return r;
        }
        TowerElem x = p.coords[0] / p.coords[1];
        bool root = (x * x * a).scaled(5) - x * c + b.scaled(5) == TowerElem(k.tower(), 0);
        if (row.at("label").get<std::string>()[0] == 'P')
            r.p_points_satisfy = r.p_points_satisfy && root;
        else
            r.q_points_avoid = r.q_points_avoid && !root;
    }
    return r;
}

std::vector<EquivarianceResult> phi_equivariance(const PresetField& k, const std::array<int, 6>& sign,
                                                 const nlohmann::json& tables) {
    std::vector<EquivarianceResult> out;
    for (const auto& [factor, pair] : tables.at("double_cover_map").items()) {
        EquivarianceResult r;
        r.factor = factor;
        r.num = parse_poly(k, pair.at(0).get<std::string>());
        r.den = parse_poly(k, pair.at(1).get<std::string>());
        Poly n2 = r.num.signed_substitution(sign), d2 = r.den.signed_substitution(sign);
        r.negates = n2 * (-r.den) == d2 * r.num;
        r.identity = n2 * r.den == d2 * r.num;
        out.push_back(r);
    }
    return out;
}

PairingResult exceptional_minus_one_pairing(const PresetField& k, const nlohmann::json& tables) {
    std::vector<std::pair<ProjPoint, ProjPoint>> pts;
    for (const auto& row : tables.at("exceptional_points")) {
        ProjPoint x{"P1", {k.eval(row.at("x").at(0).get<std::string>()), k.eval(row.at("x").at(1).get<std::string>())}};
        ProjPoint t{"P1", {k.eval(row.at("t").at(0).get<std::string>()), k.eval(row.at("t").at(1).get<std::string>())}};
        pts.emplace_back(x, t);
    }
    if (pts.size() != 4) throw std::invalid_argument("expected four exceptional points");
    PairingResult r;
    r.closed = true;
    for (int i = 0; i < 4; ++i) {
        ProjPoint x = pts[i].first, t = pts[i].second;
        x.coords[0] = -x.coords[0];
        t.coords[0] = -t.coords[0];
        for (int j = 0; j < 4; ++j)
            if (pts[j].first.same(x) && pts[j].second.same(t)) r.image[i] = j;
        r.closed = r.closed && r.image[i] >= 0;
    }
    r.involution = r.closed;
    r.fixed_point_free = r.closed;
    if (r.closed)
        for (int i = 0; i < 4; ++i) {
            r.involution = r.involution && r.image[r.image[i]] == i;
            r.fixed_point_free = r.fixed_point_free && r.image[i] != i;
        }
    return r;
}

const GenusEntry& GenusLedger::at(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::invalid_argument("no ledger entry " + name);
}

std::vector<std::string> check_ledger(const std::vector<GenusEntry>& entries) {
    std::vector<std::string> problems;
    auto find = [&](const std::string& n) -> const GenusEntry* {
        for (const auto& e : entries)
            if (e.name == n) return &e;
        return nullptr;
    };
    for (const auto& e : entries) {
        if (e.arithmetic_genus != e.geometric_genus + e.nodes)
            problems.push_back(e.name + ": arithmetic genus is not geometric genus plus nodes");
        if (e.covers.empty()) continue;
        const GenusEntry* t = find(e.covers);
        if (!t) {
            problems.push_back(e.name + ": unknown target " + e.covers);
            continue;
        }
        if (2 * e.arithmetic_genus - 2 != e.degree * (2 * t->arithmetic_genus - 2) + e.ramification)
            problems.push_back(e.name + " -> " + e.covers + ": Riemann-Hurwitz does not balance");
    }
    return problems;
}

GenusLedger genus_bookkeeping() {
    GenusLedger l;
    // three quadrics in P4: 2g - 2 = deg * (sum of degrees - 5) = 8
    const int degree = 2 * 2 * 2;
    const int g_b = (degree * (2 + 2 + 2 - 5)) / 2 + 1;
    // fixed point free involution: 2g_b - 2 = 2 (2g - 2)
    const int g_bt = ((2 * g_b - 2) / 2) / 2 + 1;
    l.entries.push_back({"conic", 0, 0, 0, "", 0, 0});
    l.entries.push_back({"Btilde", g_bt, 0, g_bt, "conic", 2, 2 * g_bt + 2});
    l.entries.push_back({"B", g_b, 0, g_b, "Btilde", 2, 0});
    l.entries.push_back({"B->conic", g_b, 0, g_b, "conic", 4, 2 * g_b - 2 + 8});
    l.entries.push_back({"Btilde0", g_bt, 2, g_bt + 2, "", 0, 0});
    l.entries.push_back({"B0", g_b, 4, g_b + 4, "Btilde0", 2, 0});
    l.problems = check_ledger(l.entries);
    return l;
}

std::vector<PointTableCheck> point_table_check(const PresetField& k, const std::vector<GaloisRow>& rows,
                                               const nlohmann::json& tables) {
    std::vector<PointTableCheck> out;
    for (const auto& r : rows) {
        PointTableCheck c;
        c.row = r.name;
        c.table = r.weierstrass;
        c.induced = induced_point_perm(k, r, tables);
        c.agree = c.induced && *c.induced == r.weierstrass;
        out.push_back(c);
    }
    return out;
}

}  // namespace ebr
