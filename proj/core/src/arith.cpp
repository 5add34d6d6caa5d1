#include "ebr/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ebr {

namespace {

constexpr unsigned long kTrialLimit = 1'000'000;

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool miller_rabin_base(const Integer& n, unsigned long base) {
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    Integer x;
    Integer b = base;
    mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's variant of Pollard rho. Returns 0 on failure.
Integer pollard_rho(const Integer& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    Integer y = seed, c = seed + 1, m = 64, g = 1, r = 1, q = 1, x, ys;
    const unsigned long max_rounds = 1UL << 22;
    unsigned long rounds = 0;
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            Integer lim = r - k < m ? Integer(r - k) : m;
            for (Integer i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                Integer diff = abs(x - y);
                q = (q * diff) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            rounds += m.get_ui();
            if (rounds > max_rounds) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            Integer diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

void split_large(const Integer& m, Factorization& f) {
    if (m == 1) return;
    if (m < Integer(static_cast<unsigned long>(kTrialLimit)) * kTrialLimit) {
        // every prime factor exceeds the trial limit, so m is prime
        f.primes[m] += 1;
        return;
    }
    bool certified_prime = false;
    bool certifiable = m < Integer(std::to_string(kPrimalityBound));
    if (certifiable) certified_prime = is_prime(m);
    if (certified_prime) {
        f.primes[m] += 1;
        return;
    }
    for (unsigned long seed = 2; seed < 12; ++seed) {
        Integer d = pollard_rho(m, seed);
        if (d != 0 && d != 1 && d != m) {
            split_large(d, f);
            split_large(m / d, f);
            return;
        }
    }
    f.incomplete = true;
    f.unfactored *= m;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0) throw std::domain_error("zero denominator");
    q.canonicalize();
    return q;
}

std::string to_string(const Integer& n) { return n.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

bool is_prime(const Integer& n_in) {
    Integer n = abs(n_in);
    if (n >= Integer(std::to_string(kPrimalityBound)))
        throw std::domain_error("primality not certified above 3.3e14: " + n.get_str());
    if (n < 2) return false;
    static constexpr unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17};
    for (unsigned long b : bases) {
        if (n == b) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    for (unsigned long b : bases)
        if (!miller_rabin_base(n, b)) return false;
    return true;
}

Integer Factorization::value() const {
    Integer v = sign;
    for (const auto& [p, e] : primes) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v * unfactored;
}

Factorization factorize(const Integer& n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);
    for (unsigned long p : small_primes()) {
        if (Integer(p) * p > m) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        f.primes[Integer(p)] = e;
    }
    // any remaining cofactor has no prime factor below the trial limit
    if (m > 1) split_large(m, f);
    return f;
}

int valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Integer m = abs(n);
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation(const Rational& q, const Integer& p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

int legendre(const Integer& a, const Integer& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_prime(p))
        throw std::invalid_argument("legendre: modulus is not an odd prime: " + p.get_str());
    Integer r = a % p;
    if (r < 0) r += p;
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

Place Place::prime(const Integer& p) {
    if (p < 2) throw std::invalid_argument("place: not a prime: " + p.get_str());
    Place v;
    v.real_ = false;
    v.p_ = p;
    return v;
}

std::string Place::name() const { return real_ ? std::string("inf") : p_.get_str(); }

namespace {

// Writes x (nonzero, integral) as p^alpha * u.
int split_p(const Integer& x, const Integer& p, Integer& unit) {
    unit = x;
    int a = 0;
    while (mpz_divisible_p(unit.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), p.get_mpz_t());
        ++a;
    }
    return a;
}

int mod_int(const Integer& x, unsigned long m) {
    return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), m));
}

// A rational in the same square class with integral representative.
Integer integral_class(const Rational& q) { return q.get_num() * q.get_den(); }

}  // namespace

int hilbert_symbol(const Rational& x, const Rational& y, const Place& v) {
    if (x == 0 || y == 0) throw std::invalid_argument("hilbert_symbol of zero");
    if (v.is_real()) return (x < 0 && y < 0) ? -1 : 1;
    const Integer& p = v.p();
    Integer u, w;
    int alpha = split_p(integral_class(x), p, u);
    int beta = split_p(integral_class(y), p, w);
    if (p == 2) {
        int eu = ((mod_int(u, 4) - 1) / 2) & 1;
        int ew = ((mod_int(w, 4) - 1) / 2) & 1;
        int u8 = mod_int(u, 8), w8 = mod_int(w, 8);
        int ou = ((u8 * u8 - 1) / 8) & 1;
        int ow = ((w8 * w8 - 1) / 8) & 1;
        int e = eu * ew + alpha * ow + beta * ou;
        return (e & 1) ? -1 : 1;
    }
    int eps = mod_int(p, 4) == 3 ? 1 : 0;
    int s = ((alpha * beta * eps) & 1) ? -1 : 1;
    if (beta & 1) s *= legendre(u, p);
    if (alpha & 1) s *= legendre(w, p);
    return s;
}

bool is_square_in_Qp(const Rational& x, const Place& v) {
    if (x == 0) return true;
    if (v.is_real()) return x > 0;
    Integer u;
    int a = split_p(integral_class(x), v.p(), u);
    if (a & 1) return false;
    if (v.p() == 2) return mod_int(u, 8) == 1;
    return legendre(u, v.p()) == 1;
}

bool is_anisotropic_diag4(const std::array<Rational, 4>& d, const Integer& p) {
    for (const auto& di : d)
        if (di == 0) throw std::invalid_argument("is_anisotropic_diag4: zero coefficient");
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
    Place v = Place::prime(p);
    Rational disc = d[0] * d[1] * d[2] * d[3];
    if (!is_square_in_Qp(disc, v)) return false;
    int eps = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) eps *= hilbert_symbol(d[i], d[j], v);
    return eps != hilbert_symbol(-1, -1, v);
}

Integer squarefree_class(const Rational& q) {
    if (q == 0) throw std::invalid_argument("square class of zero");
    Factorization f = factorize(integral_class(q));
    if (f.incomplete) throw std::runtime_error("square class: factorization incomplete");
    Integer r = f.sign;
    for (const auto& [p, e] : f.primes)
        if (e & 1) r *= p;
    return r;
}

}  // namespace ebr
