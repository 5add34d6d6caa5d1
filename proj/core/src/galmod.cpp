#include "ebr/galmod.hpp"

#include <numeric>
#include <stdexcept>

namespace ebr {

namespace {

constexpr std::uint8_t kAll = 0xFF;
constexpr std::uint8_t kKernel = 0x0F;

std::uint8_t canonical(std::uint8_t m) {
    std::uint8_t c = m ^ kAll;
    return c < m ? c : m;
}

std::uint8_t permute(std::uint8_t m, const PointPerm& p) {
    std::uint8_t out = 0;
    for (int k = 0; k < 8; ++k)
        if (m >> k & 1) out |= static_cast<std::uint8_t>(1U << p[k]);
    return out;
}

// g(S) = S modulo the kernel and complementation
bool fixed_mod_kernel(std::uint8_t s, const PointPerm& p) {
    std::uint8_t d = permute(s, p) ^ s;
    return d == 0 || d == kKernel || d == kAll || d == (kAll ^ kKernel);
}

}  // namespace

WClass::WClass(std::uint8_t mask) {
    if (__builtin_popcount(mask) % 2 != 0) throw std::invalid_argument("odd Weierstrass subset");
    mask_ = canonical(mask);
}

WClass WClass::of(const std::vector<std::string>& labels) {
    std::uint8_t m = 0;
    for (const auto& l : labels) m ^= static_cast<std::uint8_t>(1U << point_index(l));
    return WClass(m);
}

std::string WClass::str() const {
    std::string out = "{";
    for (int k = 0; k < 8; ++k) {
        if (!(mask_ >> k & 1)) continue;
        if (out.size() > 1) out += ",";
        out += point_label(k);
    }
    return out + "}";
}

WClass WClass::apply(const PointPerm& p) const { return WClass(permute(mask_, p)); }

std::vector<WClass> jac2_group() {
    std::vector<WClass> out;
    for (unsigned m = 0; m < 256; ++m) {
        auto b = static_cast<std::uint8_t>(m);
        if (__builtin_popcount(b) % 2 == 0 && canonical(b) == b) out.emplace_back(b);
    }
    return out;
}

WClass fstar_kernel() { return WClass(kKernel); }

bool F2GModule::is_invariant(const std::vector<f2::Vec>& subspace) const {
    f2::Span s;
    for (auto v : subspace) s.add(v);
    for (const auto& g : gens)
        for (auto v : subspace)
            if (!s.contains(g.apply(v))) return false;
    return true;
}

FstarImage::FstarImage(const std::vector<GaloisRow>& rows) {
    basis_ = {WClass::of({"P1", "P3"}), WClass::of({"P1", "P4"}), WClass::of({"Q1", "Q3"}),
              WClass::of({"Q1", "Q4"}), WClass::of({"P1", "Q1"})};
    mod_.dim = 5;
    for (const auto& b : basis_) mod_.basis_labels.push_back(b.str());
    for (const auto& r : rows) {
        f2::Mat m;
        m.n = 5;
        for (const auto& b : basis_) m.cols.push_back(coords(b.apply(r.weierstrass)));
        mod_.gen_names.push_back(r.name);
        mod_.gens.push_back(m);
    }
}

f2::Vec FstarImage::coords(WClass c) const {
    std::vector<f2::Vec> span;
    for (const auto& b : basis_) span.push_back(b.mask());
    span.push_back(kKernel);
    span.push_back(kAll);
    auto x = f2::coordinates(span, c.mask());
    if (!x) throw std::logic_error("Weierstrass basis does not span");
    return *x & 0x1F;
}

std::vector<WClass> FstarImage::fixed_mixed_pairs() const {
    std::vector<WClass> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 4; j < 8; ++j) {
            WClass c(static_cast<std::uint8_t>((1U << i) | (1U << j)));
            f2::Vec v = coords(c);
            bool fixed = true;
            for (const auto& g : mod_.gens) fixed = fixed && g.apply(v) == v;
            if (fixed) out.push_back(c);
        }
    return out;
}

bool is_induced_pair(const F2GModule& m, f2::Vec u, f2::Vec v, const std::vector<bool>& swaps) {
    if (swaps.size() != m.gens.size()) throw std::invalid_argument("one flag per generator");
    std::vector<f2::Vec> sub = {u, v};
    if (!m.is_invariant(sub)) return false;
    std::vector<f2::Mat> actual, claimed;
    for (std::size_t g = 0; g < m.gens.size(); ++g) {
        f2::Mat a;
        a.n = 2;
        for (auto x : sub) a.cols.push_back(*f2::coordinates(sub, m.gens[g].apply(x)));
        actual.push_back(a);
        f2::Mat b = f2::Mat::identity(2);
        if (swaps[g]) std::swap(b.cols[0], b.cols[1]);
        claimed.push_back(b);
    }
    return f2::intertwiner(2, actual, claimed).has_value();
}

std::vector<std::vector<f2::Vec>> all_subspaces(int n, int d) {
    std::vector<std::vector<f2::Vec>> out;
    if (d < 0 || d > n) return out;
    // pivot of each row is its lowest set bit; other rows vanish there
    for (unsigned piv = 0; piv < (1U << n); ++piv) {
        if (__builtin_popcount(piv) != d) continue;
        std::vector<int> pivots;
        for (int k = 0; k < n; ++k)
            if (piv >> k & 1) pivots.push_back(k);
        std::vector<std::vector<int>> free(d);
        int total = 0;
        for (int r = 0; r < d; ++r)
            for (int k = pivots[r] + 1; k < n; ++k)
                if (!(piv >> k & 1)) {
                    free[r].push_back(k);
                    ++total;
                }
        for (unsigned long long a = 0; a < (1ULL << total); ++a) {
            std::vector<f2::Vec> basis;
            int used = 0;
            for (int r = 0; r < d; ++r) {
                f2::Vec v = f2::Vec(1) << pivots[r];
                for (int k : free[r])
                    if (a >> used++ & 1) v |= f2::Vec(1) << k;
                basis.push_back(v);
            }
            out.push_back(basis);
        }
    }
    return out;
}

std::vector<std::vector<f2::Vec>> enumerate_invariant_submodules(const F2GModule& m,
                                                                 unsigned index) {
    if (index == 0 || (index & (index - 1)) != 0)
        throw std::invalid_argument("index must be a power of two");
    int codim = __builtin_ctz(index);
    std::vector<std::vector<f2::Vec>> out;
    if (codim > m.dim) return out;
    for (auto& s : all_subspaces(m.dim, m.dim - codim))
        if (m.is_invariant(s)) out.push_back(std::move(s));
    return out;
}

ScanSelection select_scan_rows(const PresetField& k, const std::vector<GaloisRow>& rows) {
    ScanSelection sel;
    for (const auto& r : rows) {
        RowFieldAction a = field_action(k, r);
        ScanSelection::Entry e{r.name, false, ""};
        if (!a.fixes_k0)
            e.reason = "moves K0";
        else if (a.flips_theta0)
            e.reason = "flips theta0";
        else if (a.flips_sqrtab)
            e.reason = "flips sqrt(ab)";
        else if (!a.fixes_theta0 || !a.fixes_sqrtab)
            e.reason = "does not fix theta0 and sqrt(ab)";
        else {
            e.included = true;
            e.reason = "fixes K0, theta0 and sqrt(ab)";
            sel.rows.push_back(r);
        }
        sel.entries.push_back(e);
    }
    return sel;
}

std::vector<WClass> odd_p_classes() {
    std::vector<WClass> out;
    for (auto c : jac2_group())
        if (c.p_part() % 2 == 1) out.push_back(c);
    return out;
}

std::vector<WClass> invariance_scan(const std::vector<PointPerm>& perms) {
    std::vector<WClass> out;
    for (auto c : odd_p_classes()) {
        bool fixed = true;
        for (const auto& p : perms) fixed = fixed && fixed_mod_kernel(c.mask(), p);
        if (fixed) out.push_back(c);
    }
    return out;
}

std::vector<std::vector<int>> point_orbits(const std::vector<PointPerm>& perms) {
    std::vector<int> parent(8);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : perms)
        for (int k = 0; k < 8; ++k) parent[find(k)] = find(p[k]);
    std::vector<std::vector<int>> out;
    std::vector<int> slot(8, -1);
    for (int k = 0; k < 8; ++k) {
        int r = find(k);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(k);
    }
    return out;
}

bool transitivity_check(const std::vector<PointPerm>& perms) { return point_orbits(perms).size() == 1; }

std::vector<PointPerm> point_perms(const std::vector<GaloisRow>& rows) {
    std::vector<PointPerm> out;
    for (const auto& r : rows) out.push_back(r.weierstrass);
    return out;
}

}  // namespace ebr
