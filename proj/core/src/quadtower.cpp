#include "ebr/quadtower.hpp"

#include <stdexcept>

#include <cstdint>
#include <mutex>

namespace ebr {

namespace detail {

struct TowerStep {
    std::string name;
    TowerElem radicand;
    Tri degenerate = Tri::No;
    std::optional<TowerElem> witness;  // the root itself when degenerate
};

struct TowerData {
    std::vector<std::shared_ptr<const TowerStep>> steps;
    unsigned depth_cap = Tower::kDefaultDepthCap;
};

}  // namespace detail

using detail::TowerData;
using detail::TowerStep;
using Mask = TowerElem::Mask;

std::string to_string(Tri t) {
    switch (t) {
        case Tri::No: return "no";
        case Tri::Yes: return "yes";
        default: return "unknown";
    }
}

namespace {

std::shared_ptr<const TowerData> rationals() {
    static const auto q = std::make_shared<const TowerData>();
    return q;
}

void add_into(std::map<Mask, Rational>& acc, Mask m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = acc.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) acc.erase(it);
    }
}

bool prefix_of(const TowerData& a, const TowerData& b) {
    if (a.steps.size() > b.steps.size()) return false;
    for (std::size_t i = 0; i < a.steps.size(); ++i)
        if (a.steps[i] != b.steps[i]) return false;
    return true;
}

const std::shared_ptr<const TowerData>& longer(const std::shared_ptr<const TowerData>& a,
                                               const std::shared_ptr<const TowerData>& b) {
    if (a == b) return a;
    if (prefix_of(*a, *b)) return b;
    if (prefix_of(*b, *a)) return a;
    throw std::invalid_argument("elements belong to unrelated towers");
}

}  // namespace

TowerElem::TowerElem() : tower_(rationals()) {}

TowerElem::TowerElem(const Tower& t, const Rational& q) : tower_(t.d_) {
    add_into(terms_, 0, q);
}

TowerElem::TowerElem(std::shared_ptr<const TowerData> t, std::map<Mask, Rational> terms)
    : tower_(std::move(t)), terms_(std::move(terms)) {}

const Tower TowerElem::tower() const { return Tower(tower_); }

bool TowerElem::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational TowerElem::rational_value() const {
    if (!is_rational()) throw std::domain_error("element is not rational: " + str());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int TowerElem::top_bit() const {
    Mask all = 0;
    for (const auto& [m, c] : terms_) all |= m;
    int top = -1;
    for (int j = 0; j < 32; ++j)
        if (all & (Mask(1) << j)) top = j;
    return top;
}

std::pair<TowerElem, TowerElem> TowerElem::split(int j) const {
    std::map<Mask, Rational> lo, hi;
    const Mask bit = Mask(1) << j;
    for (const auto& [m, c] : terms_) {
        if (m & bit)
            hi.emplace(m & ~bit, c);
        else
            lo.emplace(m, c);
    }
    return {TowerElem(tower_, std::move(lo)), TowerElem(tower_, std::move(hi))};
}

void TowerElem::adopt(const TowerElem& o) { tower_ = longer(tower_, o.tower_); }

TowerElem TowerElem::restrict_to(const Tower& t) const {
    if (prefix_of(*tower_, *t.d_)) return TowerElem(t.d_, terms_);
    if (!prefix_of(*t.d_, *tower_)) throw std::invalid_argument("restrict_to: unrelated towers");
    const std::size_t n = t.d_->steps.size();
    for (const auto& [m, c] : terms_)
        if (n < 32 && (m >> n) != 0) throw std::invalid_argument("restrict_to: element uses a later root");
    return TowerElem(t.d_, terms_);
}

TowerElem TowerElem::operator-() const {
    TowerElem r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

TowerElem& TowerElem::operator+=(const TowerElem& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_into(terms_, m, c);
    return *this;
}

TowerElem& TowerElem::operator-=(const TowerElem& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_into(terms_, m, -c);
    return *this;
}

TowerElem TowerElem::scaled(const Rational& q) const {
    if (q == 0) return TowerElem(tower_, {});
    TowerElem r = *this;
    for (auto& [m, c] : r.terms_) c *= q;
    return r;
}

TowerElem TowerElem::times_root(int j) const {
    const Mask bit = Mask(1) << j;
    const TowerElem& rad = tower_->steps.at(j)->radicand;
    std::map<Mask, Rational> out;
    for (const auto& [m, c] : terms_) {
        if (!(m & bit)) {
            add_into(out, m | bit, c);
            continue;
        }
        // root_j^2 = radicand; multiply the radicand by the remaining monomial
        TowerElem prod(tower_, rad.terms_);
        const Mask rest = m & ~bit;
        for (int k = 31; k >= 0; --k)
            if (rest & (Mask(1) << k)) prod = prod.times_root(k);
        for (const auto& [pm, pc] : prod.terms_) add_into(out, pm, pc * c);
    }
    return TowerElem(tower_, std::move(out));
}

TowerElem& TowerElem::operator*=(const TowerElem& o) {
    adopt(o);
    std::map<Mask, Rational> acc;
    for (const auto& [m2, c2] : o.terms_) {
        TowerElem part(tower_, terms_);
        for (int k = 31; k >= 0; --k)
            if (m2 & (Mask(1) << k)) part = part.times_root(k);
        for (const auto& [m, c] : part.terms_) add_into(acc, m, c * c2);
    }
    terms_ = std::move(acc);
    return *this;
}

TowerElem TowerElem::inv() const {
    if (is_zero()) throw std::domain_error("division by zero");
    int j = top_bit();
    if (j < 0) return TowerElem(tower_, {{0, 1 / terms_.begin()->second}});
    auto [a, b] = split(j);
    TowerElem root(tower_, {{Mask(1) << j, 1}});
    TowerElem conj = a - b * root;
    TowerElem norm = (*this) * conj;
    if (norm.is_zero())
        throw std::domain_error("zero divisor: a step assumed non-degenerate is degenerate");
    return conj * norm.inv();
}

TowerElem& TowerElem::operator/=(const TowerElem& o) {
    TowerElem q = o.inv();
    return *this *= q;
}

TowerElem TowerElem::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    TowerElem result(tower_, {{0, 1}});
    TowerElem base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool operator==(const TowerElem& a, const TowerElem& b) {
    longer(a.tower_, b.tower_);
    return a.terms_ == b.terms_;
}

std::string TowerElem::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (int k = 0; k < 32; ++k) {
            if (!(m & (Mask(1) << k))) continue;
            if (!mono.empty()) mono += "*";
            mono += tower_->steps[k]->name;
        }
        if (mono.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + "*" + mono;
    }
    return out;
}

nlohmann::json TowerElem::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
        nlohmann::json mono = nlohmann::json::array();
        for (int k = 0; k < 32; ++k)
            if (m & (Mask(1) << k)) mono.push_back(tower_->steps[k]->name);
        terms.push_back({{"monomial", mono}, {"coeff", c.get_str()}});
    }
    return terms;
}

// ---------------------------------------------------------------------------

Tower::Tower() : d_(rationals()) {}

std::size_t Tower::size() const { return d_->steps.size(); }
const std::string& Tower::name(std::size_t j) const { return d_->steps.at(j)->name; }
const TowerElem& Tower::radicand(std::size_t j) const { return d_->steps.at(j)->radicand; }
Tri Tower::degenerate(std::size_t j) const { return d_->steps.at(j)->degenerate; }
unsigned Tower::depth_cap() const { return d_->depth_cap; }

std::optional<std::size_t> Tower::find(const std::string& name) const {
    for (std::size_t j = 0; j < d_->steps.size(); ++j)
        if (d_->steps[j]->name == name) return j;
    return std::nullopt;
}

TowerElem Tower::root(std::size_t j) const {
    const auto& step = d_->steps.at(j);
    if (step->witness) {
        TowerElem w = *step->witness;
        w.tower_ = d_;
        return w;
    }
    return TowerElem(d_, {{Mask(1) << j, 1}});
}

TowerElem Tower::root(const std::string& name) const {
    auto j = find(name);
    if (!j) throw std::invalid_argument("no such tower step: " + name);
    return root(*j);
}

TowerElem Tower::one() const { return TowerElem(d_, {{0, 1}}); }
TowerElem Tower::zero() const { return TowerElem(d_, {}); }
TowerElem Tower::constant(const Rational& q) const { return TowerElem(*this, q); }

std::size_t Tower::degree_log2() const {
    std::size_t n = 0;
    for (const auto& s : d_->steps)
        if (s->degenerate != Tri::Yes) ++n;
    return n;
}

bool Tower::any_degenerate() const {
    for (const auto& s : d_->steps)
        if (s->degenerate == Tri::Yes) return true;
    return false;
}

bool Tower::any_unknown() const {
    for (const auto& s : d_->steps)
        if (s->degenerate == Tri::Unknown) return true;
    return false;
}

bool Tower::is_prefix_of(const Tower& other) const { return prefix_of(*d_, *other.d_); }

const void* Tower::chain_id() const { return d_->steps.empty() ? nullptr : d_->steps.back().get(); }

Tower Tower::with_depth_cap(unsigned cap) const {
    auto d = std::make_shared<TowerData>(*d_);
    d->depth_cap = cap;
    return Tower(std::move(d));
}

Tower Tower::adjoin(const std::string& name, const TowerElem& radicand) const {
    if (size() >= 32) throw std::length_error("tower limited to 32 steps");
    if (find(name)) throw std::invalid_argument("duplicate tower step: " + name);
    if (!prefix_of(*radicand.tower_, *d_))
        throw std::invalid_argument("radicand of " + name + " lies outside the tower");
    if (radicand.is_zero()) throw std::invalid_argument("zero radicand for " + name);
    auto step = std::make_shared<TowerStep>();
    step->name = name;
    step->radicand = radicand;
    step->radicand.tower_ = d_;
    SqrtResult s = sqrt(step->radicand);
    step->degenerate = s.verdict;
    if (s.verdict == Tri::Yes) step->witness = s.witness;
    auto d = std::make_shared<TowerData>(*d_);
    d->steps.push_back(std::move(step));
    return Tower(std::move(d));
}

namespace {

SqrtResult rational_sqrt(const Rational& q) {
    SqrtResult r;
    if (q < 0) {
        r.verdict = Tri::No;
        return r;
    }
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
        r.verdict = Tri::No;
        return r;
    }
    Integer sn = sqrt(n), sd = sqrt(d);
    r.verdict = Tri::Yes;
    r.witness = TowerElem(Tower(), make_rational(sn, sd));
    return r;
}

}  // namespace

// Square root of x inside the field generated by the steps below `level`.
// Each descent through a genuine step consumes one unit of budget.
static SqrtResult sqrt_level(const std::shared_ptr<const TowerData>& t, const TowerElem& x,
                             int level, unsigned budget, const Tower& whole);

SqrtResult Tower::sqrt(const TowerElem& x_in) const {
    if (!prefix_of(*x_in.tower_, *d_)) throw std::invalid_argument("sqrt: element outside the tower");
    TowerElem x = x_in;
    x.tower_ = d_;
    if (x.is_zero()) return {Tri::Yes, zero()};
    // a descent reaches Q on every branch, so deep towers only get the
    // modular certificate for non-squares
    if (degree_log2() > d_->depth_cap)
        return {nonsquare_prime(x) ? Tri::No : Tri::Unknown, std::nullopt};
    SqrtResult r = sqrt_level(d_, x, static_cast<int>(size()), d_->depth_cap, *this);
    if (r.witness) r.witness->tower_ = longer(r.witness->tower_, d_);
    return r;
}

static SqrtResult sqrt_level(const std::shared_ptr<const TowerData>& t, const TowerElem& x,
                             int level, unsigned budget, const Tower& whole) {
    int j = level - 1;
    while (j >= 0 && t->steps[j]->degenerate == Tri::Yes) --j;
    if (j < 0) {
        SqrtResult r = rational_sqrt(x.rational_value());
        if (r.witness) r.witness = whole.constant(r.witness->rational_value());
        return r;
    }
    if (budget == 0) return {Tri::Unknown, std::nullopt};
    const TowerElem root = whole.root(static_cast<std::size_t>(j));
    const TowerElem& rad = t->steps[j]->radicand;
    auto [a, b] = x.split(j);
    bool unknown = false;
    if (b.is_zero()) {
        SqrtResult r1 = sqrt_level(t, a, j, budget - 1, whole);
        if (r1.verdict == Tri::Yes) return r1;
        SqrtResult r2 = sqrt_level(t, a * rad, j, budget - 1, whole);
        if (r2.verdict == Tri::Yes) return {Tri::Yes, *r2.witness * rad.inv() * root};
        unknown = r1.verdict == Tri::Unknown || r2.verdict == Tri::Unknown;
        return {unknown ? Tri::Unknown : Tri::No, std::nullopt};
    }
    // (c + d*root)^2 = x forces c^2 - d^2*rad = +-sqrt(norm)
    TowerElem norm = a * a - b * b * rad;
    SqrtResult n = sqrt_level(t, norm, j, budget - 1, whole);
    if (n.verdict != Tri::Yes) return {n.verdict, std::nullopt};
    for (int sign : {1, -1}) {
        TowerElem half = (a + n.witness->scaled(sign)).scaled(Rational(1, 2));
        if (half.is_zero()) continue;
        SqrtResult c = sqrt_level(t, half, j, budget - 1, whole);
        if (c.verdict == Tri::Unknown) unknown = true;
        if (c.verdict != Tri::Yes) continue;
        TowerElem d = b * (c.witness->scaled(2)).inv();
        TowerElem cand = *c.witness + d * root;
        if (cand * cand == x) return {Tri::Yes, cand};
    }
    return {unknown ? Tri::Unknown : Tri::No, std::nullopt};
}

nlohmann::json Tower::to_json() const {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : d_->steps) {
        nlohmann::json js = {{"name", s->name},
                             {"radicand", s->radicand.to_json()},
                             {"degenerate", to_string(s->degenerate)}};
        steps.push_back(js);
    }
    return {{"steps", steps}, {"depth_cap", d_->depth_cap}};
}

namespace {

std::vector<std::uint32_t> sieve_odd_primes(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    std::vector<bool> composite(limit, false);
    for (std::uint64_t i = 3; i < limit; i += 2) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j < limit; j += 2 * i) composite[j] = true;
    }
    return primes;
}

// A small table for shallow towers, a large one only when a deep tower needs it.
const std::vector<std::uint32_t>& odd_primes(std::size_t wanted) {
    static const std::vector<std::uint32_t> small = sieve_odd_primes(1U << 20);
    if (wanted <= small.size()) return small;
    static std::vector<std::uint32_t> large;
    static std::once_flag once;
    std::call_once(once, [] { large = sieve_odd_primes(1U << 26); });
    return large;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Tonelli-Shanks; a must be a nonzero residue.
std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p) {
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p), x = powmod(a, (q + 1) / 2, p), t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        std::uint64_t b = c;
        for (int k = 0; k < m - i - 1; ++k) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

struct ModTerm {
    Mask mask;
    const Rational* coef;
};

// Image under root j -> s[j]; returns false if a coefficient is not p-integral.
bool image_mod(const std::vector<ModTerm>& terms, const std::vector<std::uint64_t>& s,
               std::uint64_t p, std::uint64_t& out) {
    std::uint64_t acc = 0;
    for (const auto& t : terms) {
        std::uint64_t den = mpz_fdiv_ui(t.coef->get_den_mpz_t(), p);
        if (den == 0) return false;
        std::uint64_t v = mpz_fdiv_ui(t.coef->get_num_mpz_t(), p) * powmod(den, p - 2, p) % p;
        for (Mask m = t.mask; m; m &= m - 1) v = v * s[__builtin_ctz(m)] % p;
        acc = (acc + v) % p;
    }
    out = acc;
    return true;
}

}  // namespace

std::optional<std::uint64_t> Tower::nonsquare_prime(const TowerElem& x_in, std::size_t max_primes) const {
    if (!prefix_of(*x_in.tower_, *d_)) throw std::invalid_argument("nonsquare_prime: element outside the tower");
    if (x_in.is_zero()) return std::nullopt;
    auto collect = [](const TowerElem& e) {
        std::vector<ModTerm> out;
        for (const auto& [m, c] : e.terms_) out.push_back({m, &c});
        return out;
    };
    std::vector<std::vector<ModTerm>> rads;
    std::vector<bool> used;
    std::size_t genuine = 0;
    for (const auto& st : d_->steps) {
        rads.push_back(collect(st->radicand));
        used.push_back(st->degenerate != Tri::Yes);
        if (used.back()) ++genuine;
    }
    const auto xt = collect(x_in);
    std::size_t budget = max_primes;
    if (budget == 0) budget = genuine >= 32 ? SIZE_MAX : std::size_t(64) << genuine;
    const auto& primes = odd_primes(budget);
    budget = std::min(budget, primes.size());
    std::vector<std::uint64_t> s(rads.size(), 0);
    for (std::size_t k = 0; k < budget; ++k) {
        const std::uint64_t p = primes[k];
        bool ok = true;
        for (std::size_t j = 0; j < rads.size() && ok; ++j) {
            if (!used[j]) continue;
            std::uint64_t r = 0;
            ok = image_mod(rads[j], s, p, r) && r != 0 && powmod(r, (p - 1) / 2, p) == 1;
            if (ok) s[j] = sqrtmod(r, p);
        }
        if (!ok) continue;
        std::uint64_t v = 0;
        if (image_mod(xt, s, p, v) && v != 0 && powmod(v, (p - 1) / 2, p) == p - 1) return p;
    }
    return std::nullopt;
}

SqrtResult is_square_in_tower(const TowerElem& x) { return x.tower().sqrt(x); }

bool verify_identity(const TowerElem& lhs, const TowerElem& rhs) { return lhs == rhs; }

// ---------------------------------------------------------------------------

TowerAut TowerAut::identity(const Tower& t) { return from_images(t, {}); }

TowerAut TowerAut::from_images(const Tower& t, const std::map<std::string, TowerElem>& images) {
    for (const auto& [name, img] : images)
        if (!t.find(name)) throw std::invalid_argument("automorphism: unknown root " + name);
    TowerAut s;
    s.tower_ = t;
    for (std::size_t j = 0; j < t.size(); ++j) {
        auto it = images.find(t.name(j));
        TowerElem img = it != images.end() ? it->second : t.root(j);
        img.adopt(t.one());
        if (t.degenerate(j) == Tri::Yes) {
            TowerElem forced = s.apply(t.root(j));
            if (it != images.end() && img != forced)
                throw std::invalid_argument("automorphism: image of degenerate root " + t.name(j) +
                                            " is forced");
            s.images_.push_back(forced);
            continue;
        }
        TowerElem want = s.apply(t.radicand(j));
        if (img * img != want)
            throw std::invalid_argument("automorphism: image of " + t.name(j) +
                                        " does not square to the image of its radicand");
        s.images_.push_back(img);
    }
    return s;
}

TowerElem TowerAut::apply(const TowerElem& x_in) const {
    TowerElem x = x_in;
    x.adopt(tower_.one());
    TowerElem out = tower_.zero();
    for (const auto& [m, c] : x.terms()) {
        TowerElem term = tower_.constant(c);
        for (int k = 0; k < 32; ++k)
            if (m & (Mask(1) << k)) term *= images_.at(k);
        out += term;
    }
    return out;
}

TowerAut TowerAut::compose(const TowerAut& inner) const {
    TowerAut s;
    s.tower_ = tower_;
    for (const auto& img : inner.images_) s.images_.push_back(apply(img));
    return s;
}

}  // namespace ebr
