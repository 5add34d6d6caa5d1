#include "ebr/brauer.hpp"

#include "ebr/expr.hpp"

namespace ebr {

namespace {

TowerElem on(const Tower& t, const TowerElem& x) { return x + t.zero(); }

SquareClass trivial_class(const Tower& k, const std::string& var = "") {
    return SquareClass(RatFunc::constant(k.one()), var);
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

}  // namespace

std::string QuaternionSymbolFF::str(const std::string& var) const {
    return "(" + f.str(var) + ", " + g.str(var) + ")";
}

QuaternionSymbolFF parse_symbol(const std::string& text, const Tower& base, const std::string& var,
                                const std::map<std::string, TowerElem>& names) {
    std::vector<std::string> parts = split_top_level(text, ',');
    if (parts.size() != 2) throw ParseError("expected a symbol \"(f, g)\": " + text);
    return {parse_ratfunc(parts[0], base, var, names), parse_ratfunc(parts[1], base, var, names)};
}

SquareClass residue_symbol(const QuaternionSymbolFF& s, const FFPlace& v) {
    const int a = s.f.valuation(v), b = s.g.valuation(v);
    RatFunc u = s.f.pow(b) * s.g.pow(-a);
    if ((a * b) % 2 != 0) u = u * RatFunc::constant(-v.base().one());
    return SquareClass::of(u.unit_value(v));
}

SquareClass residue_symbol(const SymbolSum& s, const FFPlace& v) {
    SquareClass acc = trivial_class(v.residue_field());
    for (const auto& x : s) acc = acc * residue_symbol(x, v);
    return acc;
}

std::vector<FFPlace> symbol_support(const SymbolSum& s, const Tower& base) {
    std::set<FFPlace> places;
    for (const auto& x : s) {
        for (const auto& p : x.f.support()) places.insert(p);
        for (const auto& p : x.g.support()) places.insert(p);
    }
    std::vector<FFPlace> out(places.begin(), places.end());
    out.push_back(FFPlace::infinity(base));
    return out;
}

// Profiles ---------------------------------------------------------------

SquareClass ResidueProfile::at(const FFPlace& v) const {
    auto it = entries.find(v);
    return it == entries.end() ? trivial_class(v.residue_field()) : it->second;
}

bool ResidueProfile::lists_infinity() const {
    for (const auto& [v, c] : entries)
        if (v.is_infinite()) return true;
    return false;
}

std::string ResidueProfile::str() const {
    std::string out = "{";
    for (const auto& [v, c] : entries) {
        if (out.size() > 1) out += ", ";
        out += v.str(var) + " -> " + c.str();
    }
    return out + "}";
}

nlohmann::json ResidueProfile::to_json() const {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& [v, c] : entries) e.push_back({v.str(var), c.str()});
    return {{"var", var}, {"entries", e}};
}

ResidueProfile residue_profile(const SymbolSum& a, const Tower& base, bool keep_trivial) {
    ResidueProfile r;
    r.base = base;
    for (const auto& v : symbol_support(a, base)) {
        SquareClass c = residue_symbol(a, v);
        if (keep_trivial || !c.trivial()) r.entries.emplace(v, c);
    }
    return r;
}

ResidueProfile parse_profile(const std::vector<std::string>& entries, const Tower& base, const std::string& var) {
    ResidueProfile r;
    r.base = base;
    r.var = var;
    for (const auto& e : entries) {
        auto pos = e.find(':');
        if (pos == std::string::npos) throw ParseError("expected \"place:class\": " + e);
        std::string ptxt = trim(e.substr(0, pos)), ctxt = trim(e.substr(pos + 1));
        FFPlace v = ptxt == "inf" ? FFPlace::infinity(base) : FFPlace::finite(parse_upoly(ptxt, base, var), base);
        RatFunc c = parse_ratfunc(ctxt, v.residue_field(), "", {{"theta", v.root()}});
        if (!c.is_constant()) throw ParseError("class is not a constant: " + ctxt);
        if (!r.entries.emplace(v, SquareClass::of(c.constant_factor())).second)
            throw ParseError("place listed twice: " + ptxt);
    }
    return r;
}

SquareClass corestriction_sum(const ResidueProfile& r) {
    TowerElem acc = r.base.one();
    for (const auto& [v, c] : r.entries) {
        if (!c.is_constant()) throw std::invalid_argument("profile classes must be constants");
        acc *= v.norm(on(v.residue_field(), c.rep().constant_factor())).restrict_to(r.base);
    }
    return SquareClass::of(acc);
}

nlohmann::json FaddeevResult::to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& s : algebra) a.push_back(s.str(recomputed.var));
    nlohmann::json j = {{"ok", ok}, {"algebra", a}, {"roundtrip", roundtrip}};
    j["obstruction"] = obstruction ? nlohmann::json(obstruction->str()) : nlohmann::json(nullptr);
    j["recomputed"] = recomputed.to_json();
    return j;
}

FaddeevResult faddeev_reconstruct(const ResidueProfile& r) {
    FaddeevResult out;
    const Tower& k = r.base;
    out.recomputed.base = k;
    out.recomputed.var = r.var;
    for (const auto& [v, c] : r.entries)
        if (!c.is_constant()) throw std::invalid_argument("profile classes must be constants of the residue field");
    if (r.lists_infinity()) {
        SquareClass w = corestriction_sum(r);
        if (!w.trivial()) {
            out.obstruction = w;
            return out;
        }
    }
    for (const auto& [v, c] : r.entries) {
        if (v.is_infinite() || c.trivial()) continue;
        TowerElem rv = on(v.residue_field(), c.rep().constant_factor());
        RatFunc pi = RatFunc::of_place(v);
        if (v.degree() == 1) {
            out.algebra.push_back({RatFunc::constant(rv.restrict_to(k)), pi});
            continue;
        }
        const int top = static_cast<int>(v.residue_field().size()) - 1;
        auto [p, q] = rv.split(top);
        auto [t0, t1] = v.root().split(top);
        TowerElem r1 = (q / t1).restrict_to(k);
        TowerElem r0 = (p - q / t1 * t0).restrict_to(k);
        if (r1.is_zero()) {
            out.algebra.push_back({RatFunc::constant(r0), pi});
            continue;
        }
        TowerElem root = -r0 / r1;
        RatFunc lin = RatFunc::of_place(FFPlace::finite(UPoly::linear(root), k));
        out.algebra.push_back({RatFunc::constant(r1) * lin, pi});
        TowerElem n = v.poly().eval(root);
        if (!is_square_elem(n)) out.algebra.push_back({RatFunc::constant(n), lin});
    }
    out.ok = true;
    out.recomputed = residue_profile(out.algebra, k);
    out.recomputed.var = r.var;
    std::set<FFPlace> places;
    for (const auto& [v, c] : r.entries) places.insert(v);
    for (const auto& [v, c] : out.recomputed.entries) places.insert(v);
    out.roundtrip = true;
    for (const auto& v : places) {
        if (v.is_infinite() && !r.lists_infinity()) continue;
        if (out.recomputed.at(v) != r.at(v)) out.roundtrip = false;
    }
    return out;
}

// BiFunc -----------------------------------------------------------------

BiFunc BiFunc::of_u(const RatFunc& f) {
    BiFunc r;
    r.u_ = f;
    return r;
}

BiFunc BiFunc::x_minus(const UPoly& alpha, int e) {
    BiFunc r;
    if (e != 0) r.x_[alpha.str("u")] = {alpha, e};
    return r;
}

int BiFunc::x_degree() const {
    int d = 0;
    for (const auto& [k, f] : x_) d += f.second;
    return d;
}

BiFunc BiFunc::inv() const { return pow(-1); }

BiFunc BiFunc::pow(int e) const {
    BiFunc r;
    r.u_ = u_.pow(e);
    if (e == 0) return r;
    for (const auto& [k, f] : x_) r.x_[k] = {f.first, f.second * e};
    return r;
}

BiFunc operator*(const BiFunc& a, const BiFunc& b) {
    BiFunc r = a;
    r.u_ = a.u_ * b.u_;
    for (const auto& [k, f] : b.x_) {
        auto it = r.x_.find(k);
        if (it == r.x_.end()) {
            r.x_[k] = f;
        } else if ((it->second.second += f.second) == 0) {
            r.x_.erase(it);
        }
    }
    return r;
}

BiFunc BiFunc::negate_u(const Tower& base) const {
    BiFunc r = of_u(u_.negate_variable(base));
    for (const auto& [k, f] : x_) r = r * x_minus(f.first.negate_variable(), f.second);
    return r;
}

std::string BiFunc::str(const std::string& uvar) const {
    std::string out = u_.str(uvar);
    for (const auto& [k, f] : x_) {
        out += "*(x - (" + f.first.str(uvar) + "))";
        if (f.second != 1) out += "^" + std::to_string(f.second);
    }
    return out;
}

std::string BiSymbol::str(const std::string& uvar) const {
    return "(" + f.str(uvar) + ", " + g.str(uvar) + ")";
}

std::string BiPlace::str(const std::string& uvar) const {
    switch (kind) {
        case Kind::Section: return "x = " + alpha.str(uvar);
        case Kind::XInfinity: return "x = inf";
        case Kind::Vertical: return "fibre " + pi.str(uvar);
    }
    return "";
}

bool operator<(const BiPlace& a, const BiPlace& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.str() < b.str();
}

int valuation(const BiFunc& f, const BiPlace& v) {
    switch (v.kind) {
        case BiPlace::Kind::Section: {
            auto it = f.x_factors().find(v.alpha.str("u"));
            return it == f.x_factors().end() ? 0 : it->second.second;
        }
        case BiPlace::Kind::XInfinity: return -f.x_degree();
        case BiPlace::Kind::Vertical: return f.u_part().valuation(v.pi);
    }
    return 0;
}

namespace {

SquareClass unit_class(const BiFunc& f, const BiPlace& v, const Tower& k, const std::string& uvar) {
    switch (v.kind) {
        case BiPlace::Kind::Section: {
            RatFunc acc = f.u_part() * RatFunc::constant(k.one());
            const std::string key = v.alpha.str("u");
            for (const auto& [name, x] : f.x_factors()) {
                if (name == key) continue;
                acc = acc * RatFunc::from_poly(v.alpha - x.first, k).pow(x.second);
            }
            return SquareClass(acc, uvar);
        }
        case BiPlace::Kind::XInfinity: return SquareClass(f.u_part() * RatFunc::constant(k.one()), uvar);
        case BiPlace::Kind::Vertical: {
            const Tower& kappa = v.pi.residue_field();
            RatFunc acc = RatFunc::constant(on(kappa, f.u_part().unit_value(v.pi)));
            for (const auto& [name, x] : f.x_factors()) {
                TowerElem a0 = on(kappa, x.first.eval(v.pi.root()));
                acc = acc * RatFunc::of_place(FFPlace::finite(UPoly::linear(a0), kappa), x.second);
            }
            return SquareClass(acc, "x");
        }
    }
    throw std::logic_error("unit_class: bad place");
}

}  // namespace

SquareClass residue_bi(const std::vector<BiSymbol>& s, const BiPlace& v, const Tower& base, const std::string& uvar) {
    const bool vert = v.kind == BiPlace::Kind::Vertical;
    SquareClass acc = vert ? trivial_class(v.pi.residue_field(), "x") : trivial_class(base, uvar);
    for (const auto& sym : s) {
        const int a = valuation(sym.f, v), b = valuation(sym.g, v);
        BiFunc u = sym.f.pow(b) * sym.g.pow(-a);
        if ((a * b) % 2 != 0) u = u * BiFunc::of_u(RatFunc::constant(-base.one()));
        acc = acc * unit_class(u, v, base, uvar);
    }
    return acc;
}

std::vector<BiPlace> bi_support(const std::vector<BiSymbol>& s) {
    std::set<BiPlace> places{BiPlace::x_infinity()};
    for (const auto& sym : s)
        for (const BiFunc* f : {&sym.f, &sym.g}) {
            for (const auto& [k, x] : f->x_factors()) places.insert(BiPlace::section(x.first));
            for (const auto& p : f->u_part().support()) places.insert(BiPlace::vertical(p));
        }
    return {places.begin(), places.end()};
}

// Desk covers -------------------------------------------------------------

std::vector<UPoly> BranchCoverData::all_roots() const {
    std::vector<UPoly> out;
    for (const auto& a : roots) {
        out.push_back(a);
        if (m == 2) out.push_back(a.negate_variable());
    }
    return out;
}

void BranchCoverData::validate() const {
    if (m != 1 && m != 2) throw std::invalid_argument("t = u^m needs m = 1 or 2");
    if (roots.empty()) throw std::invalid_argument("h has no roots");
    std::vector<UPoly> all = all_roots();
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i] == all[j]) throw std::invalid_argument("h is not square-free: repeated root " + all[i].str(uvar()));
    if (all.size() % 2 != 0) throw std::invalid_argument("h must have even degree");
}

std::string BranchCoverData::str() const {
    std::string h;
    for (const auto& a : all_roots()) h += "(x - (" + a.str(uvar()) + "))";
    return "y^2 = (" + cprime.str("t") + ")*" + h + (m == 2 ? ", t = u^2" : "");
}

std::map<std::string, int> divisor_of(const DeclaredFunction& l, const BranchCoverData& b) {
    std::map<std::string, int> d;
    for (std::size_t j = 0; j < l.values.size(); ++j) {
        const std::string c = "B" + std::to_string(j + 1) + ":";
        for (const auto& [p, e] : l.values[j].factors()) d[c + p.str(b.uvar())] = e;
        if (int deg = l.values[j].degree(); deg != 0) d[c + "inf"] = -deg;
    }
    return d;
}

std::vector<std::string> divisor_mismatches(const DeclaredFunction& l, const BranchCoverData& b) {
    std::vector<std::string> out;
    if (l.divisor.empty()) return out;
    std::map<std::string, int> d = divisor_of(l, b);
    std::set<std::string> labels;
    for (const auto& [k, e] : d) labels.insert(k);
    for (const auto& [k, e] : l.divisor) labels.insert(k);
    for (const auto& k : labels) {
        auto i = d.find(k);
        auto j = l.divisor.find(k);
        int a = i == d.end() ? 0 : i->second, c = j == l.divisor.end() ? 0 : j->second;
        if (a != c) out.push_back(k + ": declared " + std::to_string(c) + ", computed " + std::to_string(a));
    }
    return out;
}

std::set<std::string> allowed_points(const BranchCoverData& b) {
    std::set<std::string> out;
    for (std::size_t j = 0; j < b.roots.size(); ++j) out.insert("B" + std::to_string(j + 1) + ":inf");
    return out;
}

bool membership_kBE(const std::map<std::string, int>& divisor, const std::set<std::string>& allowed) {
    for (const auto& [k, e] : divisor)
        if (e % 2 != 0 && !allowed.count(k)) return false;
    return true;
}

namespace {

void check_function(const DeclaredFunction& l, const BranchCoverData& b) {
    b.validate();
    if (l.values.size() != b.roots.size())
        throw std::invalid_argument("one value per component of B is required");
    auto bad = divisor_mismatches(l, b);
    if (!bad.empty()) throw std::invalid_argument("declared divisor inconsistent: " + bad.front());
}

// N from k(u) to k(t), t = u^2.
RatFunc norm_down(const RatFunc& f, const Tower& k) {
    RatFunc out = RatFunc::constant(on(k, f.constant_factor() * f.constant_factor()));
    for (const auto& [p, e] : f.factors()) {
        UPoly both = p.poly() * p.poly().negate_variable();
        std::vector<TowerElem> even;
        for (int i = 0; i <= both.degree(); i += 2) even.push_back(both.coeff(i));
        out = out * RatFunc::from_poly(UPoly(even), k).pow(e);
    }
    return out;
}

RatFunc norm_of(const DeclaredFunction& l, const BranchCoverData& b) {
    RatFunc n = RatFunc::constant(b.base.one());
    for (const auto& v : l.values) n = n * (b.m == 1 ? v : norm_down(v, b.base));
    return n;
}

}  // namespace

CoresExpansion cores_expand(const DeclaredFunction& l, const BranchCoverData& b) {
    check_function(l, b);
    const Tower& k = b.base;
    CoresExpansion out;
    bool from_base = true;
    for (std::size_t j = 0; j < b.roots.size(); ++j) {
        const RatFunc& v = l.values[j];
        out.terms.push_back({BiFunc::of_u(v), BiFunc::x_minus(b.roots[j])});
        if (b.m == 2) {
            RatFunc w = v.negate_variable(k);
            out.terms.push_back({BiFunc::of_u(w), BiFunc::x_minus(b.roots[j].negate_variable())});
            from_base = from_base && w == v;
        }
        from_base = from_base && v == l.values[0];
    }
    if (from_base) {
        BiFunc h;
        for (const auto& a : b.all_roots()) h = h * BiFunc::x_minus(a);
        out.collapsed = BiSymbol{BiFunc::of_u(l.values[0]), h};
    }
    return out;
}

bool AEllProfile::vertical_in_constant_image() const {
    for (const auto& e : vertical)
        if (!e.constant) return false;
    return true;
}

nlohmann::json AEllProfile::to_json() const {
    auto entry = [](const AEllEntry& e) {
        return nlohmann::json{{"place", e.place}, {"class", e.cls.str()}, {"constant", e.constant}};
    };
    nlohmann::json c = nlohmann::json::array(), v = nlohmann::json::array();
    for (const auto& e : components) c.push_back(entry(e));
    for (const auto& e : vertical) v.push_back(entry(e));
    return {{"components", c},
            {"s_infinity", entry(s_infinity)},
            {"vertical", v},
            {"vertical_in_constant_image", vertical_in_constant_image()},
            {"coordinate_change", coordinate_change}};
}

AEllProfile residues_A_ell(const DeclaredFunction& l, const BranchCoverData& b) {
    check_function(l, b);
    const Tower& k = b.base;
    AEllProfile out;
    out.coordinate_change = "none: every root of h is integral over k[t]";
    for (std::size_t j = 0; j < b.roots.size(); ++j) {
        SquareClass c(l.values[j], b.uvar());
        out.components.push_back({"B" + std::to_string(j + 1), c, c.is_constant()});
    }
    SquareClass n(norm_of(l, b), "t");
    out.s_infinity = {"x = inf", n, n.is_constant()};

    std::map<FFPlace, RatFunc> fibre;
    for (std::size_t j = 0; j < b.roots.size(); ++j) {
        for (const auto& [pi, e] : l.values[j].factors()) {
            FFPlace rho = pi;
            if (b.m == 2) {
                if (pi.degree() != 1) throw Unsupported("fibres under places of degree 2 in u");
                rho = FFPlace::finite(UPoly::linear(pi.root() * pi.root()), k);
            }
            const Tower& kappa = rho.residue_field();
            TowerElem a0 = on(kappa, b.roots[j].eval(pi.root()));
            RatFunc term = RatFunc::of_place(FFPlace::finite(UPoly::linear(a0), kappa), -e);
            auto it = fibre.find(rho);
            if (it == fibre.end())
                fibre.emplace(rho, RatFunc::constant(kappa.one()) * term);
            else
                it->second = it->second * term;
        }
    }
    for (const auto& [rho, r] : fibre) {
        SquareClass c(r, "x");
        out.vertical.push_back({"fibre " + rho.str("t"), c, c.is_constant()});
        out.fibres.push_back(rho);
    }
    return out;
}

nlohmann::json OracleComparison::to_json() const {
    return {{"agree", agree}, {"boundary_is_l", boundary_is_l}, {"places", places}, {"mismatches", mismatches}};
}

OracleComparison compare_with_cores(const DeclaredFunction& l, const BranchCoverData& b) {
    const Tower& k = b.base;
    const std::string uv = b.uvar();
    CoresExpansion ex = cores_expand(l, b);
    AEllProfile prof = residues_A_ell(l, b);

    std::map<BiPlace, SquareClass> expected;
    std::vector<BiPlace> boundary;
    for (std::size_t j = 0; j < b.roots.size(); ++j) {
        expected[BiPlace::section(b.roots[j])] = SquareClass(l.values[j], uv);
        boundary.push_back(BiPlace::section(b.roots[j]));
        if (b.m == 2) {
            BiPlace conj = BiPlace::section(b.roots[j].negate_variable());
            expected[conj] = SquareClass(l.values[j].negate_variable(k), uv);
            boundary.push_back(conj);
        }
    }
    expected[BiPlace::x_infinity()] = SquareClass(prof.s_infinity.cls.rep().power_variable(b.m, k), uv);
    for (std::size_t i = 0; i < prof.fibres.size(); ++i) {
        const RatFunc& r = prof.vertical[i].cls.rep();
        if (b.m == 1) {
            expected[BiPlace::vertical(prof.fibres[i])] = prof.vertical[i].cls;
            continue;
        }
        RatFunc above = RatFunc::from_poly(prof.fibres[i].poly().power_variable(2), k);
        for (const auto& [pi, e] : above.factors())
            expected[BiPlace::vertical(pi)] = SquareClass(r.extend(pi.residue_field()).pow(e), "x");
    }

    std::set<BiPlace> places;
    for (const auto& [v, c] : expected) places.insert(v);
    for (const auto& v : bi_support(ex.terms)) places.insert(v);
    std::vector<UPoly> all = b.all_roots();
    for (int c : {0, 1, 2, 3, 5, -1}) {
        UPoly beta = UPoly::constant(k.constant(c));
        bool is_root = false;
        for (const auto& a : all) is_root = is_root || a == beta;
        if (!is_root) places.insert(BiPlace::section(beta));
    }

    OracleComparison out;
    out.agree = true;
    for (const auto& v : places) {
        SquareClass oracle = residue_bi(ex.terms, v, k, uv);
        auto it = expected.find(v);
        SquareClass want = it != expected.end() ? it->second
                           : v.kind == BiPlace::Kind::Vertical ? trivial_class(v.pi.residue_field(), "x")
                                                               : trivial_class(k, uv);
        ++out.places;
        if (oracle != want) {
            out.agree = false;
            out.mismatches.push_back(v.str(uv) + ": corestriction " + oracle.str() + ", profile " + want.str());
        }
        if (ex.collapsed) {
            SquareClass col = residue_bi({*ex.collapsed}, v, k, uv);
            if (col != oracle) {
                out.agree = false;
                out.mismatches.push_back(v.str(uv) + ": collapsed symbol " + col.str());
            }
        }
    }
    out.boundary_is_l = true;
    for (const auto& v : boundary)
        out.boundary_is_l = out.boundary_is_l && residue_bi(ex.terms, v, k, uv) == expected.at(v);
    return out;
}

}  // namespace ebr
