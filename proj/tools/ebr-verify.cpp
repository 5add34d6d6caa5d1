#include <atomic>
#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebr/brauer.hpp"
#include "ebr/suites.hpp"
#include "ebr/tables.hpp"
#include "ebr/triplet.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0, kFail = 1, kUsage = 2;

std::atomic<bool> g_stop{false};
extern "C" void on_sigint(int) { g_stop.store(true); }

struct Common {
    bool json = false;
    bool timings = false;
};

void strip_seconds(json& j) {
    if (j.is_object()) {
        j.erase("seconds");
        for (auto& [k, v] : j.items()) strip_seconds(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_seconds(v);
    }
}

json envelope(const std::string& command, json config, json result) {
    return {{"schema", "ebr-report/1"},
            {"artifact_version", EBR_VERSION},
            {"tables_version", ebr::tables_version(ebr::default_tables())},
            {"command", command},
            {"config", std::move(config)},
            {"result", std::move(result)}};
}

void emit(const Common& c, json j) {
    if (!c.timings) strip_seconds(j);
    std::cout << j.dump(2) << "\n";
}

ebr::Triplet triplet_of(const std::vector<std::string>& v) {
    if (v.size() != 3) throw std::invalid_argument("a triplet needs three integers");
    ebr::Triplet t;
    for (int i = 0; i < 3; ++i) {
        ebr::Integer n;
        if (v[i].empty() || n.set_str(v[i], 10) != 0) throw std::invalid_argument("not an integer: " + v[i]);
        (i == 0 ? t.a : i == 1 ? t.b : t.c) = n;
    }
    if (t.a <= 0 || t.b <= 0 || t.c <= 0) throw std::invalid_argument("a, b, c must be positive");
    return t;
}

// Q with sqrt(d) adjoined for each d, named sqrt<d> (sqrtm<d> for negatives).
ebr::Tower base_field(const std::vector<long>& sqrts) {
    ebr::Tower k;
    for (long d : sqrts) {
        std::string name = d < 0 ? "sqrtm" + std::to_string(-d) : "sqrt" + std::to_string(d);
        k = k.adjoin(name, k.constant(d));
    }
    return k;
}

std::string unicode_minus(std::string s) {
    const std::string m = "\xE2\x88\x92";  // U+2212
    for (auto p = s.find(m); p != std::string::npos; p = s.find(m, p)) s.replace(p, m.size(), "-");
    return s;
}

int cmd_check_triplet(const Common& c, const std::vector<std::string>& abc, unsigned prime_bound) {
    ebr::Triplet t = triplet_of(abc);
    ebr::CheckOptions opt;
    opt.prime_bound = prime_bound;
    auto rep = ebr::check_all(t, opt);
    if (c.json) {
        emit(c, envelope("check-triplet", {{"triplet", {t.a.get_str(), t.b.get_str(), t.c.get_str()}},
                                            {"prime_bound", prime_bound}},
                         rep.to_json()));
    } else {
        std::cout << "triplet " << t.str() << "\n";
        if (!rep.nonsingular) std::cout << "nonsingularity: fail (the discriminant product vanishes)\n";
        for (const auto& r : rep.conditions) {
            std::cout << "(" << r.index << ") " << ebr::to_string(r.verdict) << "  " << r.evidence;
            if (c.timings) std::cout << "  [" << r.seconds << " s]";
            std::cout << "\n";
            for (const auto& n : r.notes) std::cout << "    " << n << "\n";
        }
    }
    return rep.any_fail() ? kFail : kOk;
}

int cmd_verify_paper(const Common& c, const std::vector<std::string>& abc, std::vector<std::string> suites) {
    ebr::Triplet t = abc.empty() ? ebr::Triplet{12, 111, 13} : triplet_of(abc);
    if (suites.empty()) suites = ebr::default_suites();
    for (const auto& s : suites) {
        const auto& all = ebr::all_suites();
        if (std::find(all.begin(), all.end(), s) == all.end()) throw std::invalid_argument("unknown suite: " + s);
    }
    auto rep = ebr::verify_paper(t, suites);
    if (c.json) {
        emit(c, envelope("verify-paper", {{"triplet", {t.a.get_str(), t.b.get_str(), t.c.get_str()}}, {"suites", suites}},
                         rep.to_json()));
    } else {
        std::cout << "triplet " << t.str() << "\n";
        for (const auto& s : rep.suites) {
            std::cout << s.name << ": " << ebr::to_string(s.verdict);
            if (c.timings) std::cout << "  [" << s.seconds << " s]";
            std::cout << "\n";
            for (const auto& k : s.checks) std::cout << "  " << (k.ok ? "ok   " : "FAIL ") << k.name << "\n";
            for (const auto& n : s.notes) std::cout << "  note: " << n << "\n";
            for (const auto& [k, v] : s.info.items()) std::cout << "  " << k << ": " << v.dump() << "\n";
        }
        for (const auto& d : rep.diagnostics) std::cout << "tower: " << d << "\n";
        std::cout << "overall: " << ebr::to_string(rep.overall) << "\n";
    }
    return rep.overall == ebr::Verdict::Fail ? kFail : kOk;
}

int cmd_residue(const Common& c, const std::vector<std::string>& exprs, const std::vector<long>& sqrts,
                const std::string& var) {
    ebr::Tower k = base_field(sqrts);
    ebr::SymbolSum sum;
    for (const auto& e : exprs) sum.push_back(ebr::parse_symbol(unicode_minus(e), k, var));
    auto prof = ebr::residue_profile(sum, k);
    json support = json::array();
    for (const auto& v : ebr::symbol_support(sum, k))
        support.push_back({v.str(var), prof.at(v).str()});
    // A profile of an actual algebra satisfies the corestriction condition
    // and is reproduced by its reconstruction.
    auto fr = ebr::faddeev_reconstruct(prof);
    bool consistent = fr.ok && fr.roundtrip;
    if (c.json) {
        json syms = json::array();
        for (const auto& s : sum) syms.push_back(s.str(var));
        emit(c, envelope("residue", {{"symbols", syms}, {"sqrt", sqrts}, {"var", var}},
                         {{"profile", prof.to_json()}, {"support", support}, {"consistent", consistent}}));
    } else {
        std::cout << prof.str() << "\n";
        std::cout << "support:";
        for (const auto& e : support) std::cout << " " << e[0].get<std::string>() << " -> " << e[1].get<std::string>() << ";";
        std::cout << "\nrecomputed " << (consistent ? "consistent" : "INCONSISTENT") << "\n";
    }
    return consistent ? kOk : kFail;
}

int cmd_faddeev(const Common& c, const std::vector<std::string>& at, const std::vector<long>& sqrts,
                const std::string& var) {
    ebr::Tower k = base_field(sqrts);
    std::vector<std::string> entries;
    for (const auto& a : at) entries.push_back(unicode_minus(a));
    auto prof = ebr::parse_profile(entries, k, var);
    auto fr = ebr::faddeev_reconstruct(prof);
    if (c.json) {
        emit(c, envelope("faddeev", {{"at", entries}, {"sqrt", sqrts}, {"var", var}}, fr.to_json()));
    } else if (fr.ok) {
        std::string s;
        for (const auto& x : fr.algebra) s += (s.empty() ? "" : " + ") + x.str(var);
        std::cout << (s.empty() ? "0" : s) << "\n";
        std::cout << "roundtrip " << (fr.roundtrip ? "ok" : "FAILED") << "\n";
    } else {
        std::cout << "rejected: corestriction sum " << fr.obstruction->str() << " is not trivial\n";
    }
    return fr.ok && fr.roundtrip ? kOk : kFail;
}

int cmd_search(const Common& c, const std::string& box_text, const std::vector<int>& filters, unsigned threads,
               unsigned prime_bound, bool full) {
    auto box = ebr::SearchBox::parse(box_text);
    for (int f : filters)
        if (f < 1 || f > 8) throw std::invalid_argument("filters are condition numbers 1..8");
    ebr::CheckOptions opt;
    opt.prime_bound = prime_bound;
    std::signal(SIGINT, on_sigint);
    auto res = ebr::search(box, filters, opt, threads, &g_stop, full);
    std::signal(SIGINT, SIG_DFL);
    if (c.json) {
        json hits = json::array();
        for (const auto& h : res.hits) hits.push_back(h.to_json());
        emit(c, envelope("search", {{"box", box_text}, {"filters", filters}, {"prime_bound", prime_bound}},
                         {{"hits", hits}, {"examined", res.examined}, {"complete", res.complete}}));
    } else {
        for (const auto& h : res.hits) std::cout << h.triplet.str() << "\n";
        if (!res.complete) std::cout << "# incomplete: interrupted after " << res.examined << " triplets\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of triplet conditions, field tables, lattices and residues"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json, "Machine-readable report");
    app.add_flag("--timings", common.timings, "Include timings (reports are otherwise deterministic)");
    unsigned prime_bound = 100;
    app.add_option("--prime-bound", prime_bound, "Prime bound for condition (7)")->check(CLI::PositiveNumber);

    std::vector<std::string> abc;
    auto* ct = app.add_subcommand("check-triplet", "Conditions (1)-(8) for one triplet");
    ct->add_option("triplet", abc, "a b c")->expected(3)->required();

    std::vector<std::string> vp_abc, suites;
    auto* vp = app.add_subcommand("verify-paper", "Run the verification suites (default triplet 12 111 13)");
    vp->add_option("triplet", vp_abc, "a b c")->expected(3);
    vp->add_option("--suite", suites, "tower, geometry, picard, jacobian, scan, residues")->allow_extra_args(false);

    std::vector<std::string> exprs;
    std::vector<long> sqrts;
    std::string var = "t";
    auto* rs = app.add_subcommand("residue", "Residue profile of a sum of symbols, e.g. \"(t, t+1)\"");
    rs->add_option("symbols", exprs, "One or more symbols, summed")->required();
    rs->add_option("--sqrt", sqrts, "Adjoin sqrt(N) to the base field (named sqrtN)")->allow_extra_args(false);
    rs->add_option("--var", var, "Variable name");

    std::vector<std::string> at;
    auto* fd = app.add_subcommand("faddeev", "Reconstruct an algebra from a residue profile");
    fd->add_option("--at", at, "place:class, e.g. \"t:-1\", \"t^2+1:theta\", \"inf:-1\"")->required();
    fd->add_option("--sqrt", sqrts, "Adjoin sqrt(N) to the base field (named sqrtN)")->allow_extra_args(false);
    fd->add_option("--var", var, "Variable name");

    std::string box;
    std::vector<int> filters;
    unsigned threads = 1;
    bool full = false;
    auto* se = app.add_subcommand("search", "Triplets in a box passing the chosen conditions");
    se->add_option("--box", box, "a0..a1,b0..b1,c0..c1")->required();
    se->add_option("--filter", filters, "Condition numbers to require (default all)")->delimiter(',');
    se->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    se->add_flag("--full", full, "Report all conditions for each hit");

    bool bundled = false;
    auto* dt = app.add_subcommand("dump-tables", "Print the tables in effect (EBR_TABLES overrides)");
    dt->add_flag("--bundled", bundled, "Print the bundled file even if EBR_TABLES is set");

    for (auto* s : {ct, vp, rs, fd, se, dt}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*ct) return cmd_check_triplet(common, abc, prime_bound);
        if (*vp) return cmd_verify_paper(common, vp_abc, suites);
        if (*rs) return cmd_residue(common, exprs, sqrts, var);
        if (*fd) return cmd_faddeev(common, at, sqrts, var);
        if (*se) {
            if (filters.empty()) filters = {1, 2, 3, 4, 5, 6, 7, 8};
            return cmd_search(common, box, filters, threads, prime_bound, full);
        }
        if (*dt) {
            if (bundled)
                std::cout << ebr::bundled_tables_text();
            else
                std::cout << ebr::default_tables().dump(2) << "\n";
            return kOk;
        }
    } catch (const ebr::Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
