#include <gtest/gtest.h>

#include <array>
#include <random>

#include "ebr/arith.hpp"

using namespace ebr;

namespace {

// Brute-force Hilbert symbol for integers with v_p <= 1: a primitive zero of
// x a^2 + y b^2 - c^2 modulo p^k whose gradient has valuation m with
// k >= 2m + 1 lifts to Z_p, and for such x, y every p-adic zero gives one
// with m <= 1 (odd p) or m <= 2 (p = 2).
int hilbert_oracle(long x, long y, long p) {
    const int k = p == 2 ? 5 : 3;
    long mod = 1;
    for (int i = 0; i < k; ++i) mod *= p;
    auto v = [&](long n) {
        n %= mod;
        if (n < 0) n += mod;
        if (n == 0) return k;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        return e;
    };
    for (long a = 0; a < mod; ++a)
        for (long b = 0; b < mod; ++b)
            for (long c = 0; c < mod; ++c) {
                if (a % p == 0 && b % p == 0 && c % p == 0) continue;
                long val = (x * a % mod * a + y * b % mod * b - c * c) % mod;
                if (val != 0) continue;
                int m = std::min({v(2 * x * a), v(2 * y * b), v(2 * c)});
                if (k >= 2 * m + 1) return 1;
            }
    return -1;
}

}  // namespace

TEST(Factorize, Examples) {
    auto f = factorize(628);
    EXPECT_EQ(f.sign, 1);
    EXPECT_EQ(f.primes, (std::map<Integer, unsigned>{{2, 2}, {157, 1}}));
    EXPECT_TRUE(factorize(1).primes.empty());
    EXPECT_EQ(factorize(1).sign, 1);
    auto g = factorize(-45);
    EXPECT_EQ(g.sign, -1);
    EXPECT_EQ(g.primes, (std::map<Integer, unsigned>{{3, 2}, {5, 1}}));
    EXPECT_THROW(factorize(0), std::invalid_argument);
}

TEST(Factorize, ReproducesInput) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Integer n = Integer(std::to_string(rng() % 1000000007)) * Integer(std::to_string(rng() % 1000003 + 1));
        auto f = factorize(n);
        EXPECT_EQ(f.value(), n);
        for (const auto& [p, e] : f.primes) EXPECT_TRUE(is_prime(p));
    }
}

TEST(Legendre, AgainstSquaringTable) {
    for (long p : {3L, 5L, 7L, 11L, 157L}) {
        std::vector<int> sq(p, -1);
        for (long x = 0; x < p; ++x) sq[x * x % p] = 1;
        sq[0] = 0;
        for (long a = -2 * p; a < 2 * p; ++a) EXPECT_EQ(legendre(a, p), sq[((a % p) + p) % p]) << a << " mod " << p;
    }
    EXPECT_EQ(legendre(1, 101), 1);
    EXPECT_EQ(legendre(-1443, 5), legendre(2, 5));
    EXPECT_EQ(legendre(2, 5), -1);
    EXPECT_THROW(legendre(3, 2), std::invalid_argument);
    EXPECT_THROW(legendre(3, 9), std::invalid_argument);
}

TEST(Hilbert, Examples) {
    for (long y : {-7L, -1L, 2L, 3L, 10L})
        for (const auto& v : {Place::real(), Place::prime(2), Place::prime(3), Place::prime(5)})
            EXPECT_EQ(hilbert_symbol(1, y, v), 1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::real()), -1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::prime(2)), hilbert_oracle(-1, -1, 2));
    EXPECT_EQ(hilbert_oracle(-1, -1, 2), -1);
}

TEST(Hilbert, AgainstBruteForce) {
    const std::array<long, 10> vals = {-6, -3, -2, -1, 1, 2, 3, 5, 6, 10};
    for (long p : {2L, 3L, 5L})
        for (long x : vals)
            for (long y : vals) {
                if (p == 5 && (std::abs(x) > 3 || std::abs(y) > 3)) continue;  // keeps 5^9 searches rare
                EXPECT_EQ(hilbert_symbol(x, y, Place::prime(p)), hilbert_oracle(x, y, p))
                    << "(" << x << "," << y << ")_" << p;
            }
}

TEST(Anisotropy, Examples) {
    EXPECT_FALSE(is_anisotropic_diag4({1, 1, 1, 1}, 3));
    // (1, 1, 1, 0) is a zero mod 3 and x1 has a unit partial derivative.
    EXPECT_EQ((1 + 1 + 1) % 3, 0);
    EXPECT_TRUE(is_anisotropic_diag4({12, 111, 13, 1}, 3));
    for (long p : {2L, 3L, 5L, 7L}) EXPECT_FALSE(is_anisotropic_diag4({1, -1, 7, 3}, p));
    EXPECT_THROW(is_anisotropic_diag4({1, 0, 1, 1}, 3), std::invalid_argument);
}

TEST(SquarefreeClass, Basics) {
    EXPECT_EQ(squarefree_class(Rational(12, 5)), 15);
    EXPECT_EQ(squarefree_class(Rational(-8)), -2);
    EXPECT_EQ(squarefree_class(Rational(9, 4)), 1);
}
