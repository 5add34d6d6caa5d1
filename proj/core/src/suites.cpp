#include "ebr/suites.hpp"

#include <chrono>
#include <functional>

#include "ebr/galmod.hpp"
#include "ebr/geometry.hpp"
#include "ebr/piclat.hpp"

namespace ebr {

nlohmann::json Check::to_json() const { return {{"name", name}, {"ok", ok}, {"detail", detail}}; }

nlohmann::json SuiteResult::to_json() const {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : checks) c.push_back(x.to_json());
    return {{"name", name}, {"verdict", to_string(verdict)}, {"checks", c},
            {"notes", notes},  {"info", info},                 {"seconds", seconds}};
}

nlohmann::json PaperReport::to_json() const {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& x : suites) s.push_back(x.to_json());
    return {{"command", "verify-paper"},
            {"triplet", {triplet.a.get_str(), triplet.b.get_str(), triplet.c.get_str()}},
            {"suites", s},
            {"diagnostics", diagnostics},
            {"overall", to_string(overall)}};
}

const std::vector<std::string>& default_suites() {
    static const std::vector<std::string> s = {"tower", "geometry", "picard", "jacobian", "scan"};
    return s;
}

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s = {"tower", "geometry", "picard", "jacobian", "scan", "residues"};
    return s;
}

namespace {

void judge(SuiteResult& r) {
    r.verdict = Verdict::Pass;
    for (const auto& c : r.checks)
        if (!c.ok) r.verdict = Verdict::Fail;
}

std::string perm_str(const PointPerm& p) {
    std::string s;
    for (int k = 0; k < 8; ++k) s += (k ? "," : "") + point_label(p[k]);
    return s;
}

void tower_suite(SuiteResult& r, const Triplet& t) {
    bool undecided = false;
    nlohmann::json steps = nlohmann::json::object();
    for (Preset p : {Preset::K0, Preset::K1, Preset::K}) {
        PresetField f = tower_build(t, p);
        nlohmann::json s = nlohmann::json::object();
        for (std::size_t j = 0; j < f.tower().size(); ++j) {
            Tri d = f.tower().degenerate(j);
            s[f.tower().name(j)] = to_string(d);
            if (d != Tri::No) {
                undecided = true;
                r.notes.push_back(to_string(p) + ": step " + f.tower().name(j) + " degenerate = " + to_string(d));
            }
        }
        steps[to_string(p)] = s;
    }
    r.checks.push_back({"tower_build", !undecided, {{"degenerate", steps}}});

    PresetField k = tower_build(t, Preset::K);
    auto rels = check_relations(k);
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& x : rels)
        if (!x.holds) failed.push_back(x.name + (x.error.empty() ? "" : ": " + x.error));
    r.checks.push_back({"check_relations", failed.empty(), {{"relations", rels.size()}, {"failed", failed}}});
    judge(r);
    if (undecided && r.verdict == Verdict::Fail && failed.empty()) r.verdict = Verdict::Unknown;
    if (undecided && r.verdict == Verdict::Pass) r.verdict = Verdict::Unknown;
}

void geometry_suite(SuiteResult& r, const Triplet& t) {
    PresetField k1 = tower_build(t, Preset::K1), k0 = tower_build(t, Preset::K0);

    nlohmann::json pts = nlohmann::json::object();
    bool all = true;
    for (const auto& p : weierstrass_on_conic(k1)) {
        pts[p.label] = p.on_conic;
        all = all && p.on_conic;
    }
    r.checks.push_back({"weierstrass_on_conic", all, {{"points", pts}}});

    auto sep = weierstrass_orbit_separation(k1);
    r.checks.push_back({"weierstrass_orbit_separation", sep.ok(),
                        {{"p_points_satisfy", sep.p_points_satisfy}, {"q_points_avoid", sep.q_points_avoid}}});

    bool neg = true;
    nlohmann::json fac = nlohmann::json::object();
    for (const auto& e : phi_equivariance(k0)) {
        fac[e.factor] = e.negates;
        neg = neg && e.negates;
    }
    bool control = true;
    for (const auto& e : phi_equivariance(k0, {-1, -1, -1, -1, -1, -1})) control = control && e.identity;
    r.checks.push_back({"phi_equivariance", neg, {{"negates", fac}, {"all_signs_is_identity", control}}});

    auto pr = exceptional_minus_one_pairing(k0);
    nlohmann::json img = nlohmann::json::array();
    for (int i : pr.image) img.push_back(i < 0 ? std::string("-") : "E" + std::to_string(i + 1));
    r.checks.push_back({"exceptional_minus_one_pairing", pr.closed && pr.involution && pr.fixed_point_free,
                        {{"image", img}}});

    GenusLedger g = genus_bookkeeping();
    std::array<int, 4> got{g.at("B").geometric_genus, g.at("Btilde").geometric_genus,
                           g.at("B0").arithmetic_genus, g.at("Btilde0").arithmetic_genus};
    bool match = got == std::array<int, 4>{5, 3, 9, 5};
    r.checks.push_back({"genus_bookkeeping", g.ok() && match, {{"values", got}, {"problems", g.problems}}});

    PresetField k = tower_build(t, Preset::K);
    nlohmann::json disc = nlohmann::json::array();
    for (const auto& c : point_table_check(k, load_galois_rows()))
        if (!c.agree)
            disc.push_back({{"row", c.row},
                            {"table", perm_str(c.table)},
                            {"induced", c.induced ? perm_str(*c.induced) : std::string("none")}});
    r.info["point_table_discrepancies"] = disc;
    judge(r);
}

void picard_suite(SuiteResult& r, const Triplet& t) {
    PicLattice lat;
    r.checks.push_back({"PicLattice", lat.rank() == 15,
                        {{"rank", lat.rank()}, {"discriminant", lat.discriminant().get_str()}}});

    DivisorClass z1 = lat.named("Z1");
    bool even = true, integral = true;
    auto lg = lat.lattice_gram();
    for (std::size_t i = 0; i < lg.size(); ++i) even = even && lg[i][i] % 2 == 0;
    for (int i = 1; i <= 4; ++i) {
        DivisorClass zi = lat.named("Z" + std::to_string(i));
        for (const auto& b : lat.basis()) integral = integral && lat.gram(zi, b).get_den() == 1;
    }
    Rational z11 = lat.gram(z1, z1);
    r.checks.push_back({"gram", z11 == 10 && even && integral,
                        {{"Z1.Z1", z11.get_str()}, {"even", even}, {"Z_pairings_integral", integral}}});

    bool pb = true;
    nlohmann::json pbs = nlohmann::json::object();
    for (const auto& c : exceptional_pullbacks(lat)) {
        pbs[c.label] = {{"self_intersection", c.self_intersection.get_str()}, {"in_lattice", c.in_lattice}};
        pb = pb && c.self_intersection == -8 && c.in_lattice;
    }
    r.checks.push_back({"exceptional_pullbacks", pb, pbs});

    QuotientF2 q(lat, pullback_sublattice(lat));
    const std::vector<std::string> basis = {"F5", "F6", "F8", "F9", "F11", "F13", "Z2", "Z3", "Z4"};
    bool accepted = q.set_basis(basis);
    r.checks.push_back({"quotient_F2", q.dim() == 9 && accepted, {{"dim", q.dim()}, {"basis_accepted", accepted}}});

    PresetField k = tower_build(t, Preset::K);
    auto rows = load_galois_rows();
    auto gk1 = gk1_generators(k, rows);
    auto inv = invariants_under(q, gk1.rows);
    f2::Span span;
    nlohmann::json invs = nlohmann::json::array();
    for (auto v : inv) {
        span.add(v);
        invs.push_back(q.str(v));
    }
    bool exact = span.dim() == 5;
    for (int i = 0; i < 5; ++i) exact = exact && span.contains(f2::Vec(1) << i);
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : gk1.rows) gens.push_back(g.name);
    r.checks.push_back({"invariants_under", accepted && exact,
                        {{"dim", span.dim()}, {"basis", invs}, {"generators", gens}, {"notes", gk1.notes}}});

    auto k0 = k0_rows(k, rows);
    std::vector<bool> fab, fth;
    for (const auto& row : k0) {
        auto a = field_action(k, row);
        fab.push_back(a.flips_sqrtab);
        fth.push_back(a.flips_theta0);
    }
    auto dec = verify_decomposition(q, gk1.rows, k0, fab, fth);
    r.checks.push_back({"verify_decomposition", dec.ok(), {{"notes", dec.notes}}});

    nlohmann::json bad = nlohmann::json::array();
    for (const auto& row : rows)
        if (!row_is_isometry(lat, row) || !row_preserves_lattice(lat, row)) bad.push_back(row.name);
    r.checks.push_back({"row_is_isometry", bad.empty(), {{"rows", rows.size()}, {"failing", bad}}});
    judge(r);
}

void jacobian_suite(SuiteResult& r, const Triplet& t) {
    r.checks.push_back({"jac2_group", jac2_group().size() == 64, {{"order", jac2_group().size()}}});
    r.checks.push_back({"fstar_kernel", fstar_kernel() == WClass::of({"P1", "P2", "P3", "P4"}),
                        {{"kernel", fstar_kernel().str()}}});

    PresetField k = tower_build(t, Preset::K);
    auto rows = load_galois_rows();
    auto k0 = k0_rows(k, rows);
    FstarImage fi(k0);
    nlohmann::json basis = nlohmann::json::array();
    for (auto c : fi.basis()) basis.push_back(c.str());
    r.checks.push_back({"fstar_image_module", fi.module().dim == 5, {{"dim", fi.module().dim}, {"basis", basis}}});

    std::vector<bool> fab, fth;
    for (const auto& row : k0) {
        auto a = field_action(k, row);
        fab.push_back(a.flips_sqrtab);
        fth.push_back(a.flips_theta0);
    }
    bool p_ind = is_induced_pair(fi.module(), 1, 2, fab), q_ind = is_induced_pair(fi.module(), 4, 8, fth);
    r.checks.push_back({"is_induced_pair", p_ind && q_ind, {{"P_over_sqrtab", p_ind}, {"Q_over_theta0", q_ind}}});

    auto mixed = fi.fixed_mixed_pairs();
    nlohmann::json mj = nlohmann::json::array();
    for (auto c : mixed) mj.push_back(c.str());
    r.checks.push_back({"non_split", mixed.empty(), {{"fixed_mixed_pairs", mj}}});

    auto subs = enumerate_invariant_submodules(fi.module(), 2);
    bool inside = !subs.empty();
    for (const auto& s : subs)
        for (auto v : s) inside = inside && (v & ~f2::Vec(0x0F)) == 0;
    r.checks.push_back({"enumerate_invariant_submodules", inside,
                        {{"count", subs.size()}, {"inside_ind_part", inside}}});

    auto perms = point_perms(rows);
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& o : point_orbits(perms)) {
        nlohmann::json x = nlohmann::json::array();
        for (int i : o) x.push_back(point_label(i));
        orbits.push_back(x);
    }
    r.info["fixed_space_dim"] = fi.module().fixed_space().size();
    r.info["weierstrass_orbits"] = orbits;
    r.info["transitive"] = transitivity_check(perms);
    judge(r);
}

void scan_suite(SuiteResult& r, const Triplet& t) {
    PresetField k = tower_build(t, Preset::K);
    auto rows = load_galois_rows();
    auto sel = select_scan_rows(k, rows);
    auto hits = invariance_scan(point_perms(sel.rows));
    nlohmann::json hj = nlohmann::json::array(), used = nlohmann::json::array();
    for (auto c : hits) hj.push_back(c.str());
    for (const auto& e : sel.entries)
        used.push_back({{"row", e.name}, {"included", e.included}, {"reason", e.reason}});
    r.checks.push_back({"invariance_scan", hits.empty(), {{"fixed_classes", hj}, {"rows", used}}});

    std::vector<GaloisRow> without;
    for (const auto& row : sel.rows)
        if (row.name != "eta0") without.push_back(row);
    nlohmann::json cj = nlohmann::json::array();
    for (auto c : invariance_scan(point_perms(without))) cj.push_back(c.str());
    r.info["scan_without_eta0"] = cj;
    judge(r);
}

void residues_suite(SuiteResult& r, const Triplet&) {
    Tower q;
    for (const auto& dc : desk_cover_cases(q)) {
        nlohmann::json per = nlohmann::json::array();
        bool ok = true;
        for (const auto& l : dc.functions) {
            auto cmp = compare_with_cores(l, dc.cover);
            ok = ok && cmp.agree && cmp.boundary_is_l;
            per.push_back(cmp.to_json());
        }
        r.checks.push_back({"residues_A_ell", ok, {{"cover", dc.name}, {"functions", per}}});
    }
    auto fr = faddeev_reconstruct(parse_profile({"t:-1"}, q));
    bool ok = fr.ok && fr.roundtrip && fr.algebra.size() == 1 && fr.algebra[0].str() == "(-1, (t))";
    r.checks.push_back({"faddeev_reconstruct", ok, fr.to_json()});
    judge(r);
}

}  // namespace

SuiteResult run_suite(const std::string& name, const Triplet& t) {
    static const std::map<std::string, std::function<void(SuiteResult&, const Triplet&)>> table = {
        {"tower", tower_suite},       {"geometry", geometry_suite}, {"picard", picard_suite},
        {"jacobian", jacobian_suite}, {"scan", scan_suite},         {"residues", residues_suite}};
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite: " + name);
    SuiteResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        it->second(r, t);
    } catch (const std::exception& e) {
        r.verdict = Verdict::Unknown;
        r.notes.push_back(std::string("aborted: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

PaperReport verify_paper(const Triplet& t, const std::vector<std::string>& suites) {
    PaperReport rep;
    rep.triplet = t;
    bool fail = false, unknown = false;
    for (const auto& s : suites) {
        rep.suites.push_back(run_suite(s, t));
        fail = fail || rep.suites.back().verdict == Verdict::Fail;
        unknown = unknown || rep.suites.back().verdict == Verdict::Unknown;
    }
    bool degenerate = false;
    for (Preset p : {Preset::K0, Preset::K1, Preset::K}) {
        try {
            const Tower& tw = tower_build(t, p).tower();
            for (std::size_t j = 0; j < tw.size(); ++j)
                if (tw.degenerate(j) != Tri::No) {
                    degenerate = true;
                    rep.diagnostics.push_back(to_string(p) + ": step " + tw.name(j) + " degenerate = " +
                                              to_string(tw.degenerate(j)));
                }
        } catch (const std::exception& e) {
            degenerate = true;
            rep.diagnostics.push_back(to_string(p) + ": " + e.what());
        }
    }
    if (degenerate)
        rep.overall = Verdict::Unknown;
    else
        rep.overall = fail ? Verdict::Fail : unknown ? Verdict::Unknown : Verdict::Pass;
    return rep;
}

std::vector<DeskCase> desk_cover_cases(const Tower& base) {
    auto fu = [&](const std::string& s) { return parse_ratfunc(s, base, "u"); };
    auto ft = [&](const std::string& s) { return parse_ratfunc(s, base, "t"); };
    auto pu = [&](const std::string& s) { return parse_upoly(s, base, "u"); };
    auto pt = [&](const std::string& s) { return parse_upoly(s, base, "t"); };
    RatFunc one = RatFunc::constant(base.one());
    std::vector<DeskCase> out;
    out.push_back({"x^2 - t",
                   {base, 2, {pu("u")}, one},
                   {{{fu("u^2")}, {}}, {{fu("u")}, {}}, {{fu("3*(u-1)*(u+2)^2")}, {}}, {{fu("(u+1)/(u-2)")}, {}}}});
    out.push_back({"(x^2 - 1)(x^2 - 4)",
                   {base, 1, {pt("1"), pt("-1"), pt("2"), pt("-2")}, one},
                   {{{ft("5"), ft("5"), ft("5"), ft("5")}, {}},
                    {{ft("3*t*(t-1)"), ft("(t+2)/(t^2+1)"), ft("-t"), ft("5")}, {}},
                    {{ft("t^2"), ft("(t-1)^2"), ft("1"), ft("4")}, {}}}});
    out.push_back({"(x^2 - t)((x - 1)^2 - t)",
                   {base, 2, {pu("u"), pu("u+1")}, one},
                   {{{fu("u*(u-3)^2/(u+2)"), fu("7*(u-1)")}, {}}, {{fu("u^2"), fu("(u+1)^2")}, {}}}});
    out.push_back({"(x^2 - t^2)(x^2 - (t + 1)^2)",
                   {base, 1, {pt("t"), pt("-t"), pt("t+1"), pt("-t-1")}, one},
                   {{{ft("t*(t-2)"), ft("(t+3)/(t-1)"), ft("t^2+2"), ft("6")}, {}}}});
    return out;
}

}  // namespace ebr
