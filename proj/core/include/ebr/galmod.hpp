#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebr/f2.hpp"
#include "ebr/galois.hpp"

namespace ebr {

// Even subset of {P1..P4, Q1..Q4} modulo complement; bits 0-3 are P1..P4,
// bits 4-7 are Q1..Q4. The stored mask is min(m, ~m).
class WClass {
public:
    WClass() = default;
    explicit WClass(std::uint8_t mask);  // throws on odd cardinality
    static WClass of(const std::vector<std::string>& labels);

    std::uint8_t mask() const { return mask_; }
    bool is_zero() const { return mask_ == 0; }
    int p_part() const { return __builtin_popcount(mask_ & 0x0F); }
    std::string str() const;

    WClass apply(const PointPerm& p) const;
    friend WClass operator+(WClass a, WClass b) { return WClass(a.mask_ ^ b.mask_); }
    friend bool operator==(WClass a, WClass b) { return a.mask_ == b.mask_; }
    friend bool operator<(WClass a, WClass b) { return a.mask_ < b.mask_; }

private:
    std::uint8_t mask_ = 0;
};

std::vector<WClass> jac2_group();  // all 64 classes in mask order
WClass fstar_kernel();             // {P1,P2,P3,P4}

// F2 module with one action matrix per named generator.
struct F2GModule {
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<std::string> gen_names;
    std::vector<f2::Mat> gens;

    bool is_invariant(const std::vector<f2::Vec>& subspace) const;
    std::vector<f2::Vec> fixed_space() const { return f2::fixed_space(dim, gens); }
};

// Jac[2] / kernel on the basis {P1,P3}, {P1,P4}, {Q1,Q3}, {Q1,Q4}, {P1,Q1}
// with the Weierstrass action of the given rows.
class FstarImage {
public:
    explicit FstarImage(const std::vector<GaloisRow>& rows);

    const F2GModule& module() const { return mod_; }
    const std::vector<WClass>& basis() const { return basis_; }
    f2::Vec coords(WClass c) const;  // modulo the kernel
    // The span of the first four basis vectors (even P-part).
    std::vector<f2::Vec> ind_part() const { return {1, 2, 4, 8}; }
    // Classes {P_i, Q_j} whose image is fixed by every generator.
    std::vector<WClass> fixed_mixed_pairs() const;

private:
    F2GModule mod_;
    std::vector<WClass> basis_;
};

// Whether the 2-dim subspace spanned by basis vectors (u, v) is stable and
// isomorphic to the permutation module swapped exactly by flagged generators.
bool is_induced_pair(const F2GModule& m, f2::Vec u, f2::Vec v, const std::vector<bool>& swaps);

// All G-invariant subspaces of index `index` (a power of two).
std::vector<std::vector<f2::Vec>> enumerate_invariant_submodules(const F2GModule& m,
                                                                 unsigned index);

// Every subspace of F2^n of dimension d, as reduced echelon bases.
std::vector<std::vector<f2::Vec>> all_subspaces(int n, int d);

// Rows used by the invariance scan, with the reason for each decision.
struct ScanSelection {
    struct Entry {
        std::string name;
        bool included = false;
        std::string reason;
    };
    std::vector<Entry> entries;
    std::vector<GaloisRow> rows;
};
ScanSelection select_scan_rows(const PresetField& k, const std::vector<GaloisRow>& rows);

// Classes with odd P-part fixed, modulo kernel and complement, by every row.
std::vector<WClass> invariance_scan(const std::vector<PointPerm>& perms);
std::vector<WClass> odd_p_classes();

bool transitivity_check(const std::vector<PointPerm>& perms);
// Orbits of the generated group, each sorted, ordered by smallest element.
std::vector<std::vector<int>> point_orbits(const std::vector<PointPerm>& perms);

std::vector<PointPerm> point_perms(const std::vector<GaloisRow>& rows);

}  // namespace ebr
