#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ebr/arith.hpp"
#include "json.hpp"

namespace ebr {

// Three-valued verdict for tests that may hit a resource cap.
enum class Tri { No, Yes, Unknown };
std::string to_string(Tri t);

namespace detail {
struct TowerData;
struct TowerStep;
}  // namespace detail

class Tower;

// Element of an iterated quadratic extension, stored as rational
// coefficients on square-free monomials in the adjoined roots. Bit j of a
// monomial mask stands for the root adjoined at step j.
class TowerElem {
public:
    using Mask = std::uint32_t;

    TowerElem();  // zero of Q
    TowerElem(const Tower& t, const Rational& q);

    const Tower tower() const;
    const std::map<Mask, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()
    int top_bit() const;              // -1 for rationals

    // The same element in a prefix or extension of its tower; throws if it
    // uses roots outside `t`.
    TowerElem restrict_to(const Tower& t) const;

    // a + b*root(j) with a, b free of bit j; requires j >= top_bit().
    std::pair<TowerElem, TowerElem> split(int j) const;

    TowerElem operator-() const;
    TowerElem& operator+=(const TowerElem& o);
    TowerElem& operator-=(const TowerElem& o);
    TowerElem& operator*=(const TowerElem& o);
    TowerElem& operator/=(const TowerElem& o);
    friend TowerElem operator+(TowerElem a, const TowerElem& b) { return a += b; }
    friend TowerElem operator-(TowerElem a, const TowerElem& b) { return a -= b; }
    friend TowerElem operator*(TowerElem a, const TowerElem& b) { return a *= b; }
    friend TowerElem operator/(TowerElem a, const TowerElem& b) { return a /= b; }
    TowerElem scaled(const Rational& q) const;
    TowerElem inv() const;  // throws std::domain_error on zero or zero divisor
    TowerElem pow(long e) const;

    friend bool operator==(const TowerElem& a, const TowerElem& b);
    friend bool operator!=(const TowerElem& a, const TowerElem& b) { return !(a == b); }

    std::string str() const;
    nlohmann::json to_json() const;

private:
    friend class Tower;
    friend class TowerAut;
    friend struct detail::TowerData;
    TowerElem(std::shared_ptr<const detail::TowerData> t, std::map<Mask, Rational> terms);
    void adopt(const TowerElem& o);  // moves this onto the longer of the two towers
    TowerElem times_root(int j) const;

    std::shared_ptr<const detail::TowerData> tower_;
    std::map<Mask, Rational> terms_;
};

struct SqrtResult {
    Tri verdict = Tri::Unknown;
    std::optional<TowerElem> witness;
};

// Immutable chain of quadratic adjunctions. Cheap to copy.
class Tower {
public:
    Tower();  // Q itself

    static constexpr unsigned kDefaultDepthCap = 8;

    // Adjoin a square root of `radicand` (an element of this tower or a
    // prefix of it). If the radicand is already a square the step is kept
    // but flagged degenerate and its root is the witness.
    Tower adjoin(const std::string& name, const TowerElem& radicand) const;
    Tower with_depth_cap(unsigned cap) const;

    std::size_t size() const;
    const std::string& name(std::size_t j) const;
    const TowerElem& radicand(std::size_t j) const;
    Tri degenerate(std::size_t j) const;
    std::optional<std::size_t> find(const std::string& name) const;
    TowerElem root(std::size_t j) const;
    TowerElem root(const std::string& name) const;
    TowerElem one() const;
    TowerElem zero() const;
    TowerElem constant(const Rational& q) const;
    unsigned depth_cap() const;

    // log2 of the field degree, counting steps of unknown degeneracy as
    // genuine extensions.
    std::size_t degree_log2() const;
    bool any_degenerate() const;
    bool any_unknown() const;

    // Square root search. A reduction modulo a prime that splits the tower
    // can certify a non-square at any depth; otherwise the search descends
    // through the levels, within the depth cap.
    SqrtResult sqrt(const TowerElem& x) const;

    // An odd prime p such that the tower maps onto F_p (every radicand a
    // nonzero square mod p, all coefficients p-integral) and x maps to a
    // non-residue. Such a p proves x is not a square. Tries at most
    // `max_primes` primes (0 means a budget growing with the tower size).
    std::optional<std::uint64_t> nonsquare_prime(const TowerElem& x, std::size_t max_primes = 0) const;

    bool is_prefix_of(const Tower& other) const;
    // Identifies the chain of steps: towers with the same id have
    // interchangeable elements. Null for Q.
    const void* chain_id() const;
    nlohmann::json to_json() const;

private:
    friend class TowerElem;
    friend class TowerAut;
    explicit Tower(std::shared_ptr<const detail::TowerData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::TowerData> d_;
};

SqrtResult is_square_in_tower(const TowerElem& x);
bool verify_identity(const TowerElem& lhs, const TowerElem& rhs);

// Field automorphism given by the images of the adjoined roots.
class TowerAut {
public:
    // Unlisted roots are sent to themselves. Throws std::invalid_argument when
    // some image does not square to the image of its radicand.
    static TowerAut from_images(const Tower& t, const std::map<std::string, TowerElem>& images);
    static TowerAut identity(const Tower& t);

    TowerElem apply(const TowerElem& x) const;
    const TowerElem& image(std::size_t j) const { return images_.at(j); }
    TowerAut compose(const TowerAut& inner) const;  // this after inner
    const Tower& tower() const { return tower_; }

private:
    Tower tower_;
    std::vector<TowerElem> images_;
};

}  // namespace ebr
