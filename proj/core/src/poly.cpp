#include "ebr/poly.hpp"

#include <mutex>
#include <set>

#include "ebr/expr.hpp"

namespace ebr {

namespace {

TowerElem on(const Tower& t, const TowerElem& x) { return x + t.zero(); }

std::string wrap(const std::string& s) {
    for (char ch : s.substr(1))
        if (ch == ' ' || ch == '*') return "(" + s + ")";
    return s;
}

}  // namespace

// UPoly ------------------------------------------------------------------

UPoly::UPoly(std::vector<TowerElem> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const TowerElem& c) { return UPoly({c}); }

UPoly UPoly::monomial(const TowerElem& c, int degree) {
    std::vector<TowerElem> v(degree + 1, c.tower().zero());
    v[degree] = c;
    return UPoly(std::move(v));
}

UPoly UPoly::linear(const TowerElem& root) { return UPoly({-root, root.tower().one()}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TowerElem UPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return c_.empty() ? TowerElem() : c_[0].tower().zero();
    return c_[i];
}

bool UPoly::is_rational() const {
    for (const auto& c : c_)
        if (!c.is_rational()) return false;
    return true;
}

TowerElem UPoly::eval(const TowerElem& x) const {
    TowerElem acc = x.tower().zero();
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

UPoly UPoly::monic() const {
    if (is_zero()) throw std::domain_error("monic of the zero polynomial");
    return scaled(lead().inv());
}

UPoly UPoly::negate_variable() const {
    UPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
}

UPoly UPoly::power_variable(int m) const {
    if (is_zero()) return {};
    std::vector<TowerElem> v(degree() * m + 1, c_[0].tower().zero());
    for (int i = 0; i <= degree(); ++i) v[i * m] = c_[i];
    return UPoly(std::move(v));
}

UPoly UPoly::compose(const UPoly& q) const {
    UPoly acc;
    for (int i = degree(); i >= 0; --i) acc = acc * q + UPoly::constant(c_[i]);
    return acc;
}

UPoly UPoly::derivative() const {
    std::vector<TowerElem> v;
    for (int i = 1; i <= degree(); ++i) v.push_back(c_[i].scaled(i));
    return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<TowerElem> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < a.c_.size()) v[i] += a.c_[i];
        if (i < b.c_.size()) v[i] += b.c_[i];
    }
    return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<TowerElem> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
}

UPoly UPoly::scaled(const TowerElem& c) const {
    UPoly r = *this;
    for (auto& x : r.c_) x *= c;
    r.trim();
    return r;
}

UPoly UPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    UPoly r = UPoly::constant(is_zero() ? TowerElem(Tower(), 1) : c_[0].tower().one());
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    UPoly q, r = *this;
    TowerElem li = d.lead().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        UPoly t = UPoly::monomial(r.lead() * li, r.degree() - d.degree());
        q = q + t;
        r = r - t * d;
    }
    return {q, r};
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const TowerElem& c = c_[i];
        if (c.is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string cs = c.str(), ns = (-c).str();
        bool neg = cs[0] == '-' && ns.find(' ') == std::string::npos;
        std::string mag = neg ? ns : cs;
        if (mag.find(' ') != std::string::npos) mag = "(" + mag + ")";
        std::string term;
        if (mono.empty())
            term = mag;
        else if (mag == "1")
            term = mono;
        else
            term = mag + "*" + mono;
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

UPoly poly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// FFPlace ----------------------------------------------------------------

namespace {

struct PlaceData {
    Tower base, kappa;
    TowerElem theta;
};

std::mutex g_place_mu;
std::map<std::pair<const void*, std::string>, PlaceData> g_places;

}  // namespace

FFPlace::FFPlace() : theta_(TowerElem()), key_("inf") {}

FFPlace FFPlace::infinity(const Tower& base) {
    FFPlace p;
    p.base_ = base;
    p.kappa_ = base;
    p.theta_ = base.zero();
    return p;
}

FFPlace FFPlace::finite(const UPoly& poly, const Tower& base) {
    if (poly.degree() < 1 || poly.degree() > 2)
        throw std::invalid_argument("places must have degree 1 or 2: " + poly.str());
    if (poly.lead() != base.one()) throw std::invalid_argument("place polynomial not monic: " + poly.str());
    FFPlace p;
    p.poly_ = UPoly({on(base, poly.coeff(0)), on(base, poly.coeff(1))});
    if (poly.degree() == 2) p.poly_ = p.poly_ + UPoly::monomial(base.one(), 2);
    p.base_ = base;
    p.key_ = p.poly_.str("t");

    std::lock_guard<std::mutex> lock(g_place_mu);
    auto key = std::make_pair(base.chain_id(), p.key_);
    auto it = g_places.find(key);
    if (it == g_places.end()) {
        PlaceData d{base, base, base.zero()};
        if (poly.degree() == 1) {
            d.theta = -p.poly_.coeff(0);
        } else {
            TowerElem b = p.poly_.coeff(1), c = p.poly_.coeff(0);
            TowerElem disc = b * b - c.scaled(4);
            Tri sq = base.sqrt(disc).verdict;
            if (sq == Tri::Yes) throw std::invalid_argument("reducible place polynomial: " + p.key_);
            if (sq == Tri::Unknown) throw Unsupported("irreducibility undecided for " + p.key_);
            TowerElem scale = base.one();
            TowerElem rad = disc;
            std::string name;
            if (disc.is_rational()) {
                Rational dq = disc.rational_value();
                Integer sf = squarefree_class(dq);
                Rational ratio = dq / Rational(sf);
                mpz_class n = ratio.get_num(), m = ratio.get_den();
                mpz_class rn = sqrt(n), rm = sqrt(m);
                scale = base.constant(Rational(rn, rm));
                rad = base.constant(Rational(sf));
                name = "sqrt(" + sf.get_str() + ")";
            } else {
                name = "sqrt(" + disc.str() + ")";
            }
            d.kappa = base.adjoin(name, rad);
            d.theta = ((-b) + scale * d.kappa.root(d.kappa.size() - 1)).scaled(Rational(1, 2));
        }
        it = g_places.emplace(key, d).first;
    }
    p.kappa_ = it->second.kappa;
    p.theta_ = it->second.theta;
    return p;
}

TowerElem FFPlace::norm(const TowerElem& x) const {
    if (degree() == 1) return x;
    return x * conjugate(x);
}

TowerElem FFPlace::conjugate(const TowerElem& x) const {
    if (degree() == 1) return x;
    TowerElem y = on(kappa_, x);
    auto [a, b] = y.split(static_cast<int>(kappa_.size()) - 1);
    return a - b * kappa_.root(kappa_.size() - 1);
}

std::string FFPlace::str(const std::string& var) const { return is_infinite() ? "inf" : poly_.str(var); }

bool operator<(const FFPlace& a, const FFPlace& b) {
    if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.key_ < b.key_;
}

// RatFunc ----------------------------------------------------------------

RatFunc::RatFunc() : c_(TowerElem(Tower(), 1)) {}

RatFunc RatFunc::constant(const TowerElem& c) {
    if (c.is_zero()) throw std::domain_error("zero is not a unit");
    RatFunc r;
    r.c_ = c;
    return r;
}

RatFunc RatFunc::of_place(const FFPlace& p, int e) {
    if (p.is_infinite()) throw std::invalid_argument("the infinite place has no polynomial");
    RatFunc r = constant(p.base().one());
    if (e != 0) r.f_[p] = e;
    return r;
}

namespace {

std::vector<Integer> divisors(const Integer& n) {
    Factorization f = factorize(abs(n));
    if (f.incomplete) throw Unsupported("cannot factor " + n.get_str() + " for the root search");
    std::vector<Integer> out{1};
    for (const auto& [p, e] : f.primes) {
        std::size_t k = out.size();
        Integer pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < k; ++j) out.push_back(out[j] * pk);
        }
    }
    return out;
}

std::optional<TowerElem> rational_root(const UPoly& q, const Tower& base) {
    Integer l = 1;
    for (const auto& c : q.coeffs()) {
        Integer d = c.rational_value().get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Integer> a;
    for (const auto& c : q.coeffs()) {
        Rational v = c.rational_value() * l;
        a.push_back(v.get_num());
    }
    std::vector<Integer> ds = divisors(a.front()), es = divisors(a.back());
    if (ds.size() * es.size() > 20000) throw Unsupported("root search too large for " + q.str());
    for (const auto& d : ds)
        for (const auto& e : es)
            for (int s : {1, -1}) {
                Rational r(s * d, e);
                r.canonicalize();
                Rational acc = 0;
                for (int i = q.degree(); i >= 0; --i) acc = acc * r + Rational(a[i]);
                if (acc == 0) return base.constant(r);
            }
    return std::nullopt;
}

void factor_monic(const UPoly& q, const Tower& base, std::map<FFPlace, int>& out, int mult) {
    if (q.degree() < 1) return;
    if (q.degree() == 1) {
        out[FFPlace::finite(q, base)] += mult;
        return;
    }
    UPoly g = poly_gcd(q, q.derivative());
    if (g.degree() >= 1) {
        factor_monic(g, base, out, mult);
        factor_monic(q.divmod(g).first.monic(), base, out, mult);
        return;
    }
    if (q.degree() == 2) {
        TowerElem b = on(base, q.coeff(1)), c = on(base, q.coeff(0));
        SqrtResult s = base.sqrt(b * b - c.scaled(4));
        if (s.verdict == Tri::Unknown) throw Unsupported("cannot decide whether " + q.str() + " splits");
        if (s.verdict == Tri::No) {
            out[FFPlace::finite(q, base)] += mult;
            return;
        }
        TowerElem w = *s.witness;
        out[FFPlace::finite(UPoly::linear((w - b).scaled(Rational(1, 2))), base)] += mult;
        out[FFPlace::finite(UPoly::linear((-w - b).scaled(Rational(1, 2))), base)] += mult;
        return;
    }
    std::optional<TowerElem> root;
    if (q.coeff(0).is_zero())
        root = base.zero();
    else if (q.is_rational())
        root = rational_root(q, base);
    if (!root)
        throw Unsupported("no root found for " + q.str() + "; places of degree above 2 are not supported");
    UPoly lin = UPoly::linear(*root);
    out[FFPlace::finite(lin, base)] += mult;
    factor_monic(q.divmod(lin).first, base, out, mult);
}

}  // namespace

RatFunc RatFunc::from_poly(const UPoly& p, const Tower& base) {
    if (p.is_zero()) throw std::domain_error("zero is not a unit");
    RatFunc r = constant(on(base, p.lead()));
    factor_monic(p.monic(), base, r.f_, 1);
    for (auto it = r.f_.begin(); it != r.f_.end();)
        it = it->second == 0 ? r.f_.erase(it) : std::next(it);
    return r;
}

int RatFunc::degree() const {
    int d = 0;
    for (const auto& [p, e] : f_) d += e * p.degree();
    return d;
}

int RatFunc::valuation(const FFPlace& v) const {
    if (v.is_infinite()) return -degree();
    auto it = f_.find(v);
    return it == f_.end() ? 0 : it->second;
}

TowerElem RatFunc::unit_value(const FFPlace& v) const {
    if (valuation(v) != 0) throw std::invalid_argument("unit_value at a zero or pole");
    TowerElem acc = on(v.residue_field(), c_);
    if (v.is_infinite()) return acc;
    for (const auto& [p, e] : f_) {
        if (p == v) continue;
        acc *= p.poly().eval(v.root()).pow(e);
    }
    return acc;
}

std::vector<FFPlace> RatFunc::support() const {
    std::vector<FFPlace> out;
    for (const auto& [p, e] : f_) out.push_back(p);
    return out;
}

UPoly RatFunc::numerator() const {
    UPoly r = UPoly::constant(c_);
    for (const auto& [p, e] : f_)
        if (e > 0) r = r * p.poly().pow(e);
    return r;
}

UPoly RatFunc::denominator() const {
    UPoly r = UPoly::constant(c_.tower().one());
    for (const auto& [p, e] : f_)
        if (e < 0) r = r * p.poly().pow(-e);
    return r;
}

TowerElem RatFunc::eval(const TowerElem& x) const { return numerator().eval(x) / denominator().eval(x); }

RatFunc RatFunc::inv() const {
    RatFunc r;
    r.c_ = c_.inv();
    for (const auto& [p, e] : f_) r.f_[p] = -e;
    return r;
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return constant(c_.tower().one());
    RatFunc r;
    r.c_ = c_.pow(e);
    for (const auto& [p, k] : f_) r.f_[p] = k * e;
    return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    RatFunc r = a;
    r.c_ = a.c_ * b.c_;
    for (const auto& [p, e] : b.f_) {
        int& x = r.f_[p];
        x += e;
        if (x == 0) r.f_.erase(p);
    }
    return r;
}

RatFunc RatFunc::sum(const RatFunc& a, const RatFunc& b, const Tower& base) {
    RatFunc den = constant(base.one());
    std::set<FFPlace> places;
    for (const auto& [p, e] : a.f_) places.insert(p);
    for (const auto& [p, e] : b.f_) places.insert(p);
    for (const auto& p : places) {
        int m = std::min({0, a.valuation(p), b.valuation(p)});
        if (m < 0) den = den * of_place(p, -m);
    }
    UPoly s = (a * den).numerator() + (b * den).numerator();
    return from_poly(s, base) / den;
}

RatFunc RatFunc::negate_variable(const Tower& base) const {
    RatFunc r = constant(on(base, c_));
    for (const auto& [p, e] : f_) {
        UPoly q = p.poly().negate_variable();
        if (p.degree() % 2 == 1 && e % 2 != 0) r.c_ = -r.c_;
        r = r * of_place(FFPlace::finite(q.monic(), base), e);
    }
    return r;
}

RatFunc RatFunc::power_variable(int m, const Tower& base) const {
    RatFunc r = constant(on(base, c_));
    for (const auto& [p, e] : f_) r = r * from_poly(p.poly().power_variable(m), base).pow(e);
    return r;
}

RatFunc RatFunc::extend(const Tower& bigger) const {
    RatFunc r = constant(on(bigger, c_));
    for (const auto& [p, e] : f_) r = r * from_poly(p.poly(), bigger).pow(e);
    return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.c_ != b.c_ || a.f_.size() != b.f_.size()) return false;
    auto i = a.f_.begin();
    for (auto j = b.f_.begin(); j != b.f_.end(); ++i, ++j)
        if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
}

std::string RatFunc::str(const std::string& var) const {
    std::string out;
    bool unit = c_ == c_.tower().one();
    if (!unit || f_.empty()) out = wrap(c_.str());
    for (const auto& [p, e] : f_) {
        if (!out.empty()) out += "*";
        out += "(" + p.str(var) + ")";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

// Square classes ---------------------------------------------------------

bool is_square_elem(const TowerElem& a) {
    if (a.is_zero()) throw std::domain_error("square class of zero");
    if (a.tower().size() == 0) {
        Rational q = a.rational_value();
        mpz_class n = q.get_num(), d = q.get_den();
        return q > 0 && mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
    }
    Tri t = a.tower().sqrt(a).verdict;
    if (t == Tri::Unknown) throw Unsupported("squareness undecided for " + a.str());
    return t == Tri::Yes;
}

bool same_square_class(const TowerElem& a, const TowerElem& b) { return is_square_elem(a * b); }

SquareClass::SquareClass(const RatFunc& f, std::string var) : var_(std::move(var)) {
    TowerElem c = f.constant_factor();
    if (c.is_rational()) c = TowerElem(c.tower(), Rational(squarefree_class(c.rational_value())));
    RatFunc r = RatFunc::constant(c);
    for (const auto& [p, e] : f.factors())
        if (e % 2 != 0) r = r * RatFunc::of_place(p);
    rep_ = r;
}

bool SquareClass::trivial() const { return rep_.is_constant() && is_square_elem(rep_.constant_factor()); }

SquareClass SquareClass::operator*(const SquareClass& o) const {
    return SquareClass(rep_ * o.rep_, var_.empty() ? o.var_ : var_);
}

bool operator==(const SquareClass& a, const SquareClass& b) {
    const auto &fa = a.rep_.factors(), &fb = b.rep_.factors();
    if (fa.size() != fb.size()) return false;
    auto i = fa.begin();
    for (auto j = fb.begin(); j != fb.end(); ++i, ++j)
        if (!(i->first == j->first)) return false;
    return same_square_class(a.rep_.constant_factor(), b.rep_.constant_factor());
}

std::string SquareClass::str() const { return rep_.str(var_.empty() ? "t" : var_); }

// Parsing ----------------------------------------------------------------

namespace {

// A rational function or zero, for expression evaluation.
struct PF {
    std::optional<RatFunc> f;
    Tower base;
};

PF operator+(const PF& a, const PF& b) {
    if (!a.f) return b;
    if (!b.f) return a;
    try {
        return {RatFunc::sum(*a.f, *b.f, a.base), a.base};
    } catch (const std::domain_error&) {
        return {std::nullopt, a.base};
    }
}
PF operator-(const PF& a) {
    if (!a.f) return a;
    return {*a.f * RatFunc::constant(-a.base.one()), a.base};
}
PF operator-(const PF& a, const PF& b) { return a + (-b); }
PF operator*(const PF& a, const PF& b) {
    if (!a.f || !b.f) return {std::nullopt, a.base};
    return {*a.f * *b.f, a.base};
}
PF operator/(const PF& a, const PF& b) {
    if (!b.f) throw std::domain_error("division by zero");
    if (!a.f) return a;
    return {*a.f / *b.f, a.base};
}

PF eval_pf(const std::string& text, const Tower& base, const std::string& var,
           const std::map<std::string, TowerElem>& names) {
    std::function<PF(const std::string&)> v = [&](const std::string& n) -> PF {
        if (n == var) return {RatFunc::of_place(FFPlace::finite(UPoly::linear(base.zero()), base)), base};
        auto it = names.find(n);
        TowerElem c;
        if (it != names.end())
            c = on(base, it->second);
        else if (auto j = base.find(n))
            c = base.root(*j);
        else
            throw ParseError("unknown name '" + n + "'");
        if (c.is_zero()) return {std::nullopt, base};
        return {RatFunc::constant(c), base};
    };
    std::function<PF(const Integer&)> num = [&](const Integer& n) -> PF {
        if (n == 0) return {std::nullopt, base};
        return {RatFunc::constant(base.constant(Rational(n))), base};
    };
    return eval_expr<PF>(*parse_expr(text), v, num);
}

}  // namespace

RatFunc parse_ratfunc(const std::string& text, const Tower& base, const std::string& var,
                      const std::map<std::string, TowerElem>& names) {
    std::vector<std::string> parts = split_top_level(text, ':');
    if (parts.empty() || parts.size() > 2) throw ParseError("expected \"p\" or \"p : q\": " + text);
    PF num = eval_pf(parts[0], base, var, names);
    PF den = parts.size() == 2 ? eval_pf(parts[1], base, var, names)
                               : PF{RatFunc::constant(base.one()), base};
    if (!num.f) throw ParseError("zero function in \"" + text + "\"");
    if (!den.f) throw ParseError("zero denominator in \"" + text + "\"");
    return *num.f / *den.f;
}

namespace {

// Polynomial with division by nonzero constants, for expression evaluation.
struct UP {
    UPoly p;
};
UP operator+(const UP& a, const UP& b) { return {a.p + b.p}; }
UP operator-(const UP& a, const UP& b) { return {a.p - b.p}; }
UP operator-(const UP& a) { return {-a.p}; }
UP operator*(const UP& a, const UP& b) { return {a.p * b.p}; }
UP operator/(const UP& a, const UP& b) {
    if (b.p.degree() != 0) throw ParseError("polynomial division by a non-constant");
    return {a.p.scaled(b.p.lead().inv())};
}

}  // namespace

UPoly parse_upoly(const std::string& text, const Tower& base, const std::string& var,
                  const std::map<std::string, TowerElem>& names) {
    std::function<UP(const std::string&)> v = [&](const std::string& n) -> UP {
        if (n == var) return {UPoly({base.zero(), base.one()})};
        auto it = names.find(n);
        if (it != names.end()) return {UPoly::constant(on(base, it->second))};
        if (auto j = base.find(n)) return {UPoly::constant(base.root(*j))};
        throw ParseError("unknown name '" + n + "'");
    };
    std::function<UP(const Integer&)> num = [&](const Integer& n) {
        return UP{UPoly::constant(base.constant(Rational(n)))};
    };
    return eval_expr<UP>(*parse_expr(text), v, num).p;
}

}  // namespace ebr
