#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ebr {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

// Deterministic Miller-Rabin is only certified below this bound.
inline constexpr std::uint64_t kPrimalityBound = 330'000'000'000'000ULL;

// Throws std::domain_error when |n| >= kPrimalityBound.
bool is_prime(const Integer& n);

struct Factorization {
    int sign = 1;
    std::map<Integer, unsigned> primes;
    // Set when some cofactor could not be split or certified; the cofactor is
    // kept in `unfactored` so that value() still reproduces the input.
    bool incomplete = false;
    Integer unfactored = 1;

    Integer value() const;
};

// Trial division to 10^6, then Pollard rho. Throws std::invalid_argument on 0.
Factorization factorize(const Integer& n);

// p-adic valuation of a nonzero integer or rational.
int valuation(const Integer& n, const Integer& p);
int valuation(const Rational& q, const Integer& p);

// Legendre symbol; throws std::invalid_argument unless p is an odd prime.
int legendre(const Integer& a, const Integer& p);

// A place of Q: a prime or the real place.
class Place {
public:
    static Place real() { return Place(); }
    static Place prime(const Integer& p);

    bool is_real() const { return real_; }
    const Integer& p() const { return p_; }
    std::string name() const;

    friend bool operator==(const Place& a, const Place& b) {
        return a.real_ == b.real_ && a.p_ == b.p_;
    }

private:
    Place() = default;
    bool real_ = true;
    Integer p_ = 0;
};

int hilbert_symbol(const Rational& x, const Rational& y, const Place& v);
bool is_square_in_Qp(const Rational& x, const Place& v);

// True iff d1 x1^2 + ... + d4 x4^2 has only the trivial zero over Q_p.
// Throws std::invalid_argument if p is not prime or some d_i is zero.
bool is_anisotropic_diag4(const std::array<Rational, 4>& d, const Integer& p);

// Square-free integer in the square class of q (sign kept). Requires the
// factorization of numerator*denominator to complete.
Integer squarefree_class(const Rational& q);

}  // namespace ebr
