#include "ebr/triplet.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <thread>

namespace ebr {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Probable: return "probable";
        default: return "unknown";
    }
}

nlohmann::json ConditionResult::to_json() const {
    return {{"condition", index}, {"verdict", to_string(verdict)}, {"evidence", evidence},
            {"notes", notes},     {"data", data},                  {"seconds", seconds}};
}

bool ConditionReport::any_fail() const {
    if (!nonsingular) return true;
    for (const auto& c : conditions)
        if (c.verdict == Verdict::Fail) return true;
    return false;
}

nlohmann::json ConditionReport::to_json() const {
    nlohmann::json j;
    j["triplet"] = {triplet.a.get_str(), triplet.b.get_str(), triplet.c.get_str()};
    j["nonsingular"] = nonsingular;
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : conditions) j["conditions"].push_back(c.to_json());
    return j;
}

Integer nonsingularity_product(const Triplet& t) {
    const Integer &a = t.a, &b = t.b, &c = t.c;
    return a * b * c * (5 * a + 5 * b + c) * (20 * a + 5 * b + 2 * c) * (4 * a * a + b * b) *
           (c * c - 100 * a * b) * (c * c + 5 * b * c + 10 * a * c + 25 * a * b);
}

bool check_nonsingular(const Triplet& t) { return nonsingularity_product(t) != 0; }

bool is_good_prime(const Triplet& t, const Integer& p) {
    return p != 2 && p != 5 && nonsingularity_product(t) % p != 0;
}

std::array<Integer, 3> surface_values(const Triplet& t, const std::array<Integer, 6>& x) {
    const Integer &v0 = x[0], &v1 = x[1], &v2 = x[2], &w0 = x[3], &w1 = x[4], &w2 = x[5];
    return {v0 * v1 + 5 * v2 * v2 - w0 * w0,
            (v0 + v1) * (v0 + 2 * v1) - w0 * w0 + 5 * w1 * w1,
            t.a * v0 * v0 + t.b * v1 * v1 + t.c * v2 * v2 - w2 * w2};
}

namespace {

using Row = std::array<Integer, 6>;

std::array<Row, 3> jacobian(const Triplet& t, const Row& x) {
    const Integer &v0 = x[0], &v1 = x[1], &v2 = x[2], &w0 = x[3], &w1 = x[4], &w2 = x[5];
    return {Row{v1, v0, 10 * v2, -2 * w0, 0, 0},
            Row{2 * v0 + 3 * v1, 3 * v0 + 4 * v1, 0, -2 * w0, 10 * w1, 0},
            Row{2 * t.a * v0, 2 * t.b * v1, 2 * t.c * v2, 0, 0, -2 * w2}};
}

std::vector<Integer> maximal_minors(const std::array<Row, 3>& j) {
    std::vector<Integer> out;
    for (int p = 0; p < 6; ++p)
        for (int q = p + 1; q < 6; ++q)
            for (int r = q + 1; r < 6; ++r)
                out.push_back(j[0][p] * (j[1][q] * j[2][r] - j[1][r] * j[2][q]) -
                              j[0][q] * (j[1][p] * j[2][r] - j[1][r] * j[2][p]) +
                              j[0][r] * (j[1][p] * j[2][q] - j[1][q] * j[2][p]));
    return out;
}

bool smooth_mod_p(const Triplet& t, const Row& x, const Integer& p) {
    for (const auto& m : maximal_minors(jacobian(t, x)))
        if (m % p != 0) return true;
    return false;
}

std::optional<std::int64_t> sqrt_mod_small(std::int64_t a, std::int64_t p,
                                           const std::vector<std::int64_t>& root_of) {
    a %= p;
    if (a < 0) a += p;
    if (root_of[a] < 0) return std::nullopt;
    return root_of[a];
}

// Smooth point with coordinates in [0, p), by solving for w given v.
std::optional<Row> smooth_point_mod_p(const Triplet& t, std::int64_t p) {
    std::vector<std::int64_t> root_of(p, -1);
    for (std::int64_t r = 0; r < p; ++r) root_of[r * r % p] = r;
    const std::int64_t a = mpz_fdiv_ui(t.a.get_mpz_t(), p), b = mpz_fdiv_ui(t.b.get_mpz_t(), p),
                       c = mpz_fdiv_ui(t.c.get_mpz_t(), p);
    std::int64_t inv5 = 0;
    if (p != 5)
        for (std::int64_t k = 1; k < p; ++k)
            if (5 * k % p == 1) inv5 = k;
    const Integer P(static_cast<unsigned long>(p));
    auto try_v = [&](std::int64_t v0, std::int64_t v1, std::int64_t v2) -> std::optional<Row> {
        std::int64_t A = (v0 * v1 + 5 * v2 * v2) % p;
        std::int64_t B = (v0 + v1) * (v0 + 2 * v1) % p;
        std::int64_t C = (a * v0 * v0 + b * v1 * v1 + c * v2 * v2) % p;
        auto w0 = sqrt_mod_small(A, p, root_of), w2 = sqrt_mod_small(C, p, root_of);
        if (!w0 || !w2) return std::nullopt;
        std::vector<std::int64_t> w1s;
        if (p == 5) {
            if ((A - B) % p != 0) return std::nullopt;
            for (std::int64_t k = 0; k < p; ++k) w1s.push_back(k);
        } else {
            auto w1 = sqrt_mod_small(((A - B) % p + p) % p * inv5, p, root_of);
            if (!w1) return std::nullopt;
            w1s.push_back(*w1);
        }
        for (auto w1 : w1s) {
            Row x{Integer(v0), Integer(v1), Integer(v2), Integer(*w0), Integer(w1), Integer(*w2)};
            bool zero = true;
            for (const auto& e : x) zero = zero && e == 0;
            if (!zero && smooth_mod_p(t, x, P)) return x;
        }
        return std::nullopt;
    };
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y)
            if (auto r = try_v(1, x, y)) return r;
    for (std::int64_t y = 0; y < p; ++y)
        if (auto r = try_v(0, 1, y)) return r;
    if (auto r = try_v(0, 0, 1)) return r;
    return try_v(0, 0, 0);
}

int val(const Integer& n, const Integer& p) {
    if (n == 0) return 1 << 20;
    return valuation(n, p);
}

struct HenselSearch {
    const Triplet& t;
    Integer p;
    unsigned kmax;
    std::size_t budget;
    std::size_t nodes = 0;
    int chart = 0;
    std::optional<LocalPoint> found;

    bool zero_mod(const Row& x, const Integer& mod) const {
        for (const auto& v : surface_values(t, x))
            if (v % mod != 0) return false;
        return true;
    }

    void dfs(const Row& x, unsigned j, const Integer& pj) {
        if (found || nodes >= budget) return;
        ++nodes;
        for (const auto& m : maximal_minors(jacobian(t, x))) {
            int e = val(m, p);
            if (static_cast<unsigned>(2 * e) < j) {
                found = LocalPoint{LocalPoint::Status::HenselLift, j, x};
                return;
            }
        }
        if (j >= kmax) return;
        const Integer next = pj * p;
        const unsigned long pu = p.get_ui();
        unsigned long total = 1;
        for (int k = 0; k < 5; ++k) total *= pu;
        for (unsigned long code = 0; code < total && !found && nodes < budget; ++code) {
            Row y = x;
            unsigned long rest = code;
            for (int k = 0; k < 6; ++k) {
                if (k == chart) continue;
                y[k] += pj * Integer(rest % pu);
                rest /= pu;
            }
            if (zero_mod(y, next)) dfs(y, j + 1, next);
        }
    }

    void run() {
        const unsigned long pu = p.get_ui();
        for (chart = 0; chart < 6 && !found; ++chart) {
            // x_chart = 1, earlier coordinates divisible by p
            unsigned long free = 5 - chart;
            unsigned long total = 1;
            for (unsigned long k = 0; k < free; ++k) total *= pu;
            for (unsigned long code = 0; code < total && !found && nodes < budget; ++code) {
                Row x{};
                x[chart] = 1;
                unsigned long rest = code;
                for (int k = chart + 1; k < 6; ++k) {
                    x[k] = Integer(rest % pu);
                    rest /= pu;
                }
                if (zero_mod(x, p)) dfs(x, 1, p);
            }
        }
    }
};

// Exact smooth real point (0:0:1:sqrt5:1:sqrtc); needs c > 0.
ConditionResult real_place(const Triplet& t) {
    ConditionResult r;
    if (t.c <= 0) {
        r.verdict = Verdict::Unknown;
        r.evidence = "no real point constructed (c <= 0)";
        return r;
    }
    Tower k = Tower().adjoin("sqrt5", Tower().constant(5));
    k = k.adjoin("sqrtc", k.constant(Rational(t.c)));
    TowerElem w0 = k.root("sqrt5"), w1 = k.one(), w2 = k.root("sqrtc"), v2 = k.one();
    TowerElem q1 = (v2 * v2).scaled(5) - w0 * w0;
    TowerElem q2 = (w1 * w1).scaled(5) - w0 * w0;
    TowerElem q3 = (v2 * v2).scaled(Rational(t.c)) - w2 * w2;
    // minor on the columns v2, w1, w2
    TowerElem minor = (v2 * w1 * w2).scaled(-200);
    bool on = q1.is_zero() && q2.is_zero() && q3.is_zero();
    r.verdict = on && !minor.is_zero() ? Verdict::Pass : Verdict::Fail;
    r.evidence = "(0:0:1:sqrt5:1:sqrtc), Jacobian minor " + minor.str();
    return r;
}

ConditionResult divisor_condition(int index, const Integer& n, int square_of) {
    ConditionResult r;
    r.index = index;
    Factorization f = factorize(n);
    r.verdict = Verdict::Pass;
    nlohmann::json primes = nlohmann::json::array();
    for (const auto& [p, e] : f.primes) {
        (void)e;
        nlohmann::json pj = {{"p", p.get_str()}};
        if (p == 2) {
            pj["status"] = "skipped";
            r.notes.push_back("p = 2 divides the form; every integer is a square mod 2, so the condition is read over odd primes");
        } else if (Integer(square_of) % p == 0) {
            pj["status"] = "zero";
            r.verdict = Verdict::Fail;
            r.notes.push_back(std::to_string(square_of) + " = 0 mod " + p.get_str() + " is a square");
        } else {
            int l = legendre(Integer(square_of), p);
            pj["legendre"] = l;
            if (l == 1) r.verdict = Verdict::Fail;
        }
        primes.push_back(pj);
    }
    if (f.incomplete) {
        if (r.verdict == Verdict::Pass) r.verdict = Verdict::Unknown;
        r.notes.push_back("cofactor " + f.unfactored.get_str() + " not factored");
    }
    r.data = {{"n", n.get_str()}, {"primes", primes}};
    r.evidence = std::to_string(square_of) + " tested at the prime divisors of " + n.get_str();
    return r;
}

Integer mod_pos(const Integer& x, long m) {
    Integer r = x % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

std::string LocalPoint::str() const {
    std::string s = "(";
    for (int k = 0; k < 6; ++k) s += (k ? ":" : "") + point[k].get_str();
    s += ")";
    switch (status) {
        case Status::SmoothModP: return "smooth point mod p " + s;
        case Status::HenselLift: return "Hensel point mod p^" + std::to_string(precision) + " " + s;
        case Status::NoPointsGoodPrime: return "no points mod p at a good prime";
        default: return "inconclusive";
    }
}

LocalPoint local_point(const Triplet& t, std::uint64_t p, std::size_t hensel_budget) {
    const Integer P(static_cast<unsigned long>(p));
    if (p != 2) {
        if (auto x = smooth_point_mod_p(t, static_cast<std::int64_t>(p)))
            return LocalPoint{LocalPoint::Status::SmoothModP, 1, *x};
        if (is_good_prime(t, P)) return LocalPoint{LocalPoint::Status::NoPointsGoodPrime, 1, {}};
    }
    if (p > 13) return LocalPoint{};
    HenselSearch h{t, P, p == 2 ? 9U : 4U, hensel_budget};
    h.run();
    return h.found ? *h.found : LocalPoint{};
}

ConditionResult check_condition(const Triplet& t, int k, const CheckOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    ConditionResult r;
    switch (k) {
        case 1: r = divisor_condition(1, 5 * t.a + 5 * t.b + t.c, 5); break;
        case 2: r = divisor_condition(2, 20 * t.a + 5 * t.b + 2 * t.c, 10); break;
        case 3: {
            bool an = is_anisotropic_diag4({Rational(t.a), Rational(t.b), Rational(t.c), Rational(1)}, 3);
            r.verdict = an ? Verdict::Pass : Verdict::Fail;
            r.evidence = std::string("<a,b,c,1> is ") + (an ? "anisotropic" : "isotropic") + " over Q_3";
            break;
        }
        case 4: {
            Integer m = mod_pos(-t.b * t.c, 5);
            bool sq = m == 0 || m == 1 || m == 4;
            r.verdict = sq ? Verdict::Fail : Verdict::Pass;
            r.evidence = "-bc = " + m.get_str() + " mod 5";
            if (m == 0) r.notes.push_back("0 mod 5 counts as a square");
            break;
        }
        case 5:
        case 6: {
            const long m = k == 5 ? 7 : 11;
            const Triplet want = k == 5 ? Triplet{5, 6, 6} : Triplet{1, 1, 2};
            Triplet got{mod_pos(t.a, m), mod_pos(t.b, m), mod_pos(t.c, m)};
            r.verdict = got == want ? Verdict::Pass : Verdict::Fail;
            r.evidence = got.str() + " mod " + std::to_string(m);
            break;
        }
        case 7: {
            ConditionResult real = real_place(t);
            nlohmann::json places = nlohmann::json::array();
            places.push_back({{"place", "real"}, {"verdict", to_string(real.verdict)}, {"evidence", real.evidence}});
            bool fail = real.verdict == Verdict::Fail, unknown = real.verdict == Verdict::Unknown;
            for (std::uint64_t p = 2; p <= opt.prime_bound; ++p) {
                if (!is_prime(Integer(static_cast<unsigned long>(p)))) continue;
                LocalPoint lp = local_point(t, p, opt.hensel_budget);
                fail = fail || lp.status == LocalPoint::Status::NoPointsGoodPrime;
                unknown = unknown || lp.status == LocalPoint::Status::Inconclusive;
                places.push_back({{"place", std::to_string(p)}, {"evidence", lp.str()}});
            }
            r.verdict = fail ? Verdict::Fail : unknown ? Verdict::Unknown : Verdict::Probable;
            r.evidence = "local points at the real place and all primes up to " + std::to_string(opt.prime_bound);
            r.data = {{"places", places}};
            r.notes.push_back("primes above the bound are not examined");
            break;
        }
        case 8: {
            r.notes.push_back("proxy: every step of the K tower is a genuine quadratic extension");
            try {
                PresetField f = tower_build(t, Preset::K, default_tables(), opt.depth_cap);
                std::vector<std::string> yes, unk;
                for (std::size_t j = 0; j < f.tower().size(); ++j) {
                    if (f.tower().degenerate(j) == Tri::Yes) yes.push_back(f.tower().name(j));
                    if (f.tower().degenerate(j) == Tri::Unknown) unk.push_back(f.tower().name(j));
                }
                r.verdict = !yes.empty() ? Verdict::Fail : !unk.empty() ? Verdict::Unknown : Verdict::Pass;
                r.data = {{"steps", f.tower().size()}, {"degenerate", yes}, {"undecided", unk}};
                r.evidence = std::to_string(f.tower().size() - yes.size() - unk.size()) + " of " +
                             std::to_string(f.tower().size()) + " steps certified non-degenerate";
            } catch (const std::exception& e) {
                r.verdict = Verdict::Fail;
                r.evidence = std::string("tower could not be built: ") + e.what();
            }
            break;
        }
        default: throw std::invalid_argument("condition index must be 1..8");
    }
    r.index = k;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

ConditionReport check_all(const Triplet& t, const CheckOptions& opt) {
    ConditionReport rep;
    rep.triplet = t;
    rep.nonsingular = check_nonsingular(t);
    for (int k = 1; k <= 8; ++k) rep.conditions.push_back(check_condition(t, k, opt));
    return rep;
}

SearchBox SearchBox::parse(const std::string& text) {
    static const std::regex re(R"(^\s*(-?\d+)\.\.(-?\d+)\s*,\s*(-?\d+)\.\.(-?\d+)\s*,\s*(-?\d+)\.\.(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("box must look like a0..a1,b0..b1,c0..c1");
    SearchBox b{Integer(m[1].str()), Integer(m[2].str()), Integer(m[3].str()),
                Integer(m[4].str()), Integer(m[5].str()), Integer(m[6].str())};
    return b;
}

Integer SearchBox::size() const {
    auto len = [](const Integer& lo, const Integer& hi) { return hi < lo ? Integer(0) : Integer(hi - lo + 1); };
    return len(a0, a1) * len(b0, b1) * len(c0, c1);
}

SearchResult search(const SearchBox& box, const std::vector<int>& filters, const CheckOptions& opt,
                    unsigned threads, const std::atomic<bool>* stop, bool full_reports) {
    for (int k : filters)
        if (k < 1 || k > 8) throw std::invalid_argument("filter must be a condition 1..8");
    std::vector<Triplet> all;
    for (Integer a = box.a0; a <= box.a1; ++a)
        for (Integer b = box.b0; b <= box.b1; ++b)
            for (Integer c = box.c0; c <= box.c1; ++c) all.push_back({a, b, c});
    threads = std::max(1U, threads);
    std::mutex mu;
    SearchResult out;
    std::atomic<std::uint64_t> examined{0};
    std::atomic<bool> interrupted{false};
    auto work = [&](unsigned id) {
        std::vector<ConditionReport> local;
        for (std::size_t i = id; i < all.size(); i += threads) {
            if (stop && stop->load()) {
                interrupted = true;
                break;
            }
            const Triplet& t = all[i];
            ConditionReport rep;
            rep.triplet = t;
            rep.nonsingular = check_nonsingular(t);
            bool pass = true;
            for (int k : filters) {
                rep.conditions.push_back(check_condition(t, k, opt));
                if (rep.conditions.back().verdict == Verdict::Fail) {
                    pass = false;
                    break;
                }
            }
            ++examined;
            if (!pass) continue;
            if (full_reports) rep = check_all(t, opt);
            local.push_back(std::move(rep));
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& r : local) out.hits.push_back(std::move(r));
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < threads; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& th : pool) th.join();
    std::sort(out.hits.begin(), out.hits.end(),
              [](const ConditionReport& x, const ConditionReport& y) { return x.triplet < y.triplet; });
    out.examined = examined;
    out.complete = !interrupted;
    return out;
}

}  // namespace ebr
