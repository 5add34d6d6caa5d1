#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/arith.hpp"
#include "ebr/f2.hpp"
#include "ebr/galois.hpp"

namespace ebr {

// Rational coefficients over the Q-basis G1, F1, ..., F14 (index 0 is G1).
using DivisorClass = std::vector<Rational>;

struct LatticeIssue {
    std::string what;
};

// The rank 15 lattice spanned by G1, F1..F14 and Z1..Z4.
class PicLattice {
public:
    static constexpr int kRank = 15;

    PicLattice();

    // F1..F14, G1..G14, Z1..Z4 and D = F_i + G_i.
    DivisorClass named(const std::string& label) const;
    DivisorClass parse(std::string_view expr) const;
    std::string str(const DivisorClass& v) const;

    Rational gram(const DivisorClass& u, const DivisorClass& v) const;
    const std::vector<std::vector<Rational>>& gram_matrix() const { return gram_; }

    // Z-basis of the lattice in Hermite normal form and coordinates in it.
    const std::vector<DivisorClass>& basis() const { return basis_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    std::optional<std::vector<Integer>> coordinates(const DivisorClass& v) const;
    bool contains(const DivisorClass& v) const { return coordinates(v).has_value(); }
    std::vector<std::vector<Integer>> lattice_gram() const;
    Integer discriminant() const;

    // Image in L/2L, bit k for basis vector k. Throws if v is not in L.
    f2::Vec mod2(const DivisorClass& v) const;

private:
    std::vector<std::vector<Rational>> gram_;
    std::vector<DivisorClass> basis_;
    std::vector<std::vector<Rational>> inverse_;  // maps Q-coordinates to basis coordinates
};

// Sublattice generated by the six pullback generators.
struct PullbackSublattice {
    std::vector<std::string> generator_exprs;
    std::vector<DivisorClass> generators;
    int rank = 0;  // over Q
    bool contains(const PicLattice& lat, const DivisorClass& v) const;  // integral span
};
PullbackSublattice pullback_sublattice(const PicLattice& lat);

// L / (P + 2L) together with the induced Galois action.
class QuotientF2 {
public:
    QuotientF2(const PicLattice& lat, const PullbackSublattice& p);

    int dim() const { return dim_; }
    // Checks that the named classes form a basis; on success they become the
    // coordinate basis used by image() and action().
    bool set_basis(const std::vector<std::string>& labels);
    const std::vector<std::string>& basis_labels() const { return labels_; }

    f2::Vec image(const DivisorClass& v) const;  // coordinates in the current basis
    std::string str(f2::Vec v) const;
    f2::Mat action(const GaloisRow& row) const;

private:
    const PicLattice* lat_;
    f2::Span relations_;
    int dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<f2::Vec> basis_;
};

// Matrix of a Galois row on the Q-basis (columns are images).
std::vector<DivisorClass> row_matrix(const PicLattice& lat, const GaloisRow& row);
bool row_is_isometry(const PicLattice& lat, const GaloisRow& row);
bool row_preserves_lattice(const PicLattice& lat, const GaloisRow& row);
DivisorClass apply_row(const PicLattice& lat, const GaloisRow& row, const DivisorClass& v);

std::vector<f2::Vec> invariants_under(const QuotientF2& q, const std::vector<GaloisRow>& gens);

// The claimed module Z/2 x Ind x Ind on F11, F5, F6, F8, F9, and its
// comparison with the action on the invariant subspace.
struct DecompositionReport {
    bool invariant_basis_matches = false;
    bool submodule_stable = false;
    bool isomorphic = false;
    std::vector<std::string> notes;
    bool ok() const { return invariant_basis_matches && submodule_stable && isomorphic; }
};

// `k0_gens` act on the G_K1-invariants; flips_sqrtab / flips_theta0 give
// the claimed permutation action generator by generator.
DecompositionReport verify_decomposition(const QuotientF2& q, const std::vector<GaloisRow>& gk1,
                                         const std::vector<GaloisRow>& k0_gens,
                                         const std::vector<bool>& flips_sqrtab,
                                         const std::vector<bool>& flips_theta0);

struct PullbackCheck {
    std::string label;
    std::string expr;
    Rational self_intersection;
    bool in_lattice = false;
};
std::vector<PullbackCheck> exceptional_pullbacks(const PicLattice& lat,
                                                 const nlohmann::json& tables = default_tables());

}  // namespace ebr
