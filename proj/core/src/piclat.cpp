#include "ebr/piclat.hpp"

#include <stdexcept>

#include "ebr/expr.hpp"

namespace ebr {

namespace {

constexpr int N = PicLattice::kRank;

DivisorClass zero_class() { return DivisorClass(N, Rational(0)); }

DivisorClass unit(int k) {
    DivisorClass v = zero_class();
    v[k] = 1;
    return v;
}

DivisorClass add(DivisorClass a, const DivisorClass& b, const Rational& s = 1) {
    for (int k = 0; k < N; ++k) a[k] += s * b[k];
    return a;
}

// Value in the expression evaluator: a class or a bare scalar.
struct ClassVal {
    bool scalar = true;
    Rational s = 0;
    DivisorClass v = zero_class();

    friend ClassVal operator+(const ClassVal& x, const ClassVal& y) {
        if (x.scalar != y.scalar) throw std::invalid_argument("class expression mixes scalars and classes");
        ClassVal r = x;
        r.s += y.s;
        r.v = add(r.v, y.v);
        return r;
    }
    friend ClassVal operator-(const ClassVal& x) {
        ClassVal r = x;
        r.s = -r.s;
        for (auto& c : r.v) c = -c;
        return r;
    }
    friend ClassVal operator-(const ClassVal& x, const ClassVal& y) { return x + (-y); }
    friend ClassVal operator*(const ClassVal& x, const ClassVal& y) {
        if (!x.scalar && !y.scalar) throw std::invalid_argument("product of two classes");
        const ClassVal& sc = x.scalar ? x : y;
        const ClassVal& other = x.scalar ? y : x;
        ClassVal r = other;
        r.s *= sc.s;
        for (auto& c : r.v) c *= sc.s;
        return r;
    }
    friend ClassVal operator/(const ClassVal& x, const ClassVal& y) {
        if (!y.scalar || y.s == 0) throw std::invalid_argument("bad divisor in class expression");
        ClassVal inv;
        inv.s = 1 / y.s;
        return x * inv;
    }
};

// Echelon form over Z of the given integer rows; returns the nonzero rows.
std::vector<std::vector<Integer>> integer_echelon(std::vector<std::vector<Integer>> rows) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < rows.size(); ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = prow; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])))
                    best = r;
            if (best == rows.size()) break;
            std::swap(rows[prow], rows[best]);
            bool done = true;
            for (std::size_t r = prow + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[prow][c].get_mpz_t());
                for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= q * rows[prow][k];
                if (rows[r][c] != 0) done = false;
            }
            if (done) {
                if (rows[prow][c] < 0)
                    for (auto& x : rows[prow]) x = -x;
                ++prow;
                break;
            }
        }
    }
    rows.resize(prow);
    return rows;
}

// Inverse of a square rational matrix; throws if singular.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational d = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= d;
            inv[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

Integer det_integer(std::vector<std::vector<Integer>> m) {
    // Bareiss fraction-free elimination
    const std::size_t n = m.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

PicLattice::PicLattice() : gram_(N, std::vector<Rational>(N, Rational(0))) {
    // index 0 is G1, index i is F_i
    for (int i = 1; i < N; ++i)
        for (int j = 1; j < N; ++j) gram_[i][j] = i == j ? 0 : 2;
    for (int i = 1; i < N; ++i) gram_[0][i] = gram_[i][0] = i == 1 ? 4 : 2;
    gram_[0][0] = 0;

    std::vector<std::vector<Integer>> rows;
    auto push = [&](const DivisorClass& v) {
        std::vector<Integer> r;
        for (const auto& x : v) {
            Rational y = 2 * x;
            if (y.get_den() != 1) throw std::logic_error("generator outside (1/2)Z");
            r.push_back(y.get_num());
        }
        rows.push_back(r);
    };
    for (int k = 0; k < N; ++k) push(unit(k));
    for (int z = 1; z <= 4; ++z) push(named("Z" + std::to_string(z)));
    for (const auto& r : integer_echelon(rows)) {
        DivisorClass v;
        for (const auto& x : r) v.push_back(Rational(x, 2));
        for (auto& x : v) x.canonicalize();
        basis_.push_back(v);
    }
    std::vector<std::vector<Rational>> bt(N, std::vector<Rational>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) bt[i][j] = basis_.at(j)[i];
    inverse_ = invert(bt);
}

DivisorClass PicLattice::named(const std::string& label) const {
    if (label == "D") return add(unit(0), unit(1));
    if (label.size() >= 2) {
        int idx = 0;
        try {
            idx = std::stoi(label.substr(1));
        } catch (...) {
            idx = 0;
        }
        if (label[0] == 'F' && idx >= 1 && idx <= 14) return unit(idx);
        if (label[0] == 'G' && idx >= 1 && idx <= 14) return add(named("D"), unit(idx), -1);
        if (label[0] == 'Z' && idx >= 1 && idx <= 4) {
            static const std::vector<std::vector<std::string>> parts = {
                {"F1", "F2", "F3", "F10", "F12"},
                {"F1", "G1", "F4", "F5", "F6", "F10", "F11"},
                {"F1", "F4", "F7", "F13", "F14"},
                {"F1", "G1", "F7", "F8", "F9", "F11", "F12"}};
            DivisorClass v = zero_class();
            for (const auto& p : parts[idx - 1]) v = add(v, named(p), Rational(1, 2));
            return v;
        }
    }
    throw std::invalid_argument("unknown divisor class: " + label);
}

DivisorClass PicLattice::parse(std::string_view expr) const {
    std::function<ClassVal(const std::string&)> var = [this](const std::string& n) {
        ClassVal c;
        c.scalar = false;
        c.v = named(n);
        return c;
    };
    std::function<ClassVal(const Integer&)> num = [](const Integer& n) {
        ClassVal c;
        c.s = Rational(n);
        return c;
    };
    ClassVal r = eval_expr<ClassVal>(*parse_expr(expr), var, num);
    if (r.scalar) throw std::invalid_argument("expression is not a divisor class");
    return r.v;
}

std::string PicLattice::str(const DivisorClass& v) const {
    std::string out;
    for (int k = 0; k < N; ++k) {
        if (v[k] == 0) continue;
        std::string name = k == 0 ? "G1" : "F" + std::to_string(k);
        Rational c = v[k];
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Rational m = abs(c);
        out += m == 1 ? name : m.get_str() + "*" + name;
    }
    return out.empty() ? "0" : out;
}

Rational PicLattice::gram(const DivisorClass& u, const DivisorClass& v) const {
    Rational s = 0;
    for (int i = 0; i < N; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < N; ++j)
            if (v[j] != 0) s += u[i] * gram_[i][j] * v[j];
    }
    return s;
}

std::optional<std::vector<Integer>> PicLattice::coordinates(const DivisorClass& v) const {
    std::vector<Integer> c;
    for (int i = 0; i < N; ++i) {
        Rational s = 0;
        for (int j = 0; j < N; ++j) s += inverse_[i][j] * v[j];
        if (s.get_den() != 1) return std::nullopt;
        c.push_back(s.get_num());
    }
    return c;
}

std::vector<std::vector<Integer>> PicLattice::lattice_gram() const {
    std::vector<std::vector<Integer>> g(N, std::vector<Integer>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Rational x = gram(basis_[i], basis_[j]);
            if (x.get_den() != 1) throw std::logic_error("non-integral pairing in the lattice");
            g[i][j] = x.get_num();
        }
    return g;
}

Integer PicLattice::discriminant() const { return det_integer(lattice_gram()); }

f2::Vec PicLattice::mod2(const DivisorClass& v) const {
    auto c = coordinates(v);
    if (!c) throw std::invalid_argument("class is not in the lattice: " + str(v));
    f2::Vec out = 0;
    for (int k = 0; k < N; ++k)
        if (mpz_odd_p((*c)[k].get_mpz_t())) out |= f2::Vec(1) << k;
    return out;
}

bool PullbackSublattice::contains(const PicLattice& lat, const DivisorClass& v) const {
    // membership in the integral span via echelon form over Z
    auto to_int = [&](const DivisorClass& x) {
        auto c = lat.coordinates(x);
        if (!c) throw std::invalid_argument("class outside the lattice");
        return *c;
    };
    std::vector<std::vector<Integer>> rows;
    for (const auto& g : generators) rows.push_back(to_int(g));
    auto base = integer_echelon(rows);
    std::vector<Integer> target;
    try {
        target = to_int(v);
    } catch (const std::invalid_argument&) {
        return false;
    }
    // reduce target by the echelon rows
    for (const auto& r : base) {
        std::size_t c = 0;
        while (r[c] == 0) ++c;
        if (target[c] == 0) continue;
        Integer q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), target[c].get_mpz_t(), r[c].get_mpz_t());
        if (rem != 0) return false;
        for (std::size_t k = 0; k < target.size(); ++k) target[k] -= q * r[k];
    }
    for (const auto& x : target)
        if (x != 0) return false;
    return true;
}

PullbackSublattice pullback_sublattice(const PicLattice& lat) {
    PullbackSublattice p;
    p.generator_exprs = {"G1",           "F1 - F2",      "Z1 - F2 - F10 - F12",
                         "Z1 - F1 - F2", "-Z1 + F1 + F12", "-Z1 + F1 + F10"};
    std::vector<std::vector<Integer>> rows;
    for (const auto& e : p.generator_exprs) {
        p.generators.push_back(lat.parse(e));
        rows.push_back(*lat.coordinates(p.generators.back()));
    }
    p.rank = static_cast<int>(integer_echelon(rows).size());
    return p;
}

QuotientF2::QuotientF2(const PicLattice& lat, const PullbackSublattice& p) : lat_(&lat) {
    for (const auto& g : p.generators) relations_.add(lat.mod2(g));
    dim_ = PicLattice::kRank - relations_.dim();
}

bool QuotientF2::set_basis(const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) != dim_) return false;
    f2::Span all = relations_;
    std::vector<f2::Vec> vecs;
    for (const auto& l : labels) {
        f2::Vec v = lat_->mod2(lat_->parse(l));
        if (!all.add(v)) return false;
        vecs.push_back(v);
    }
    labels_ = labels;
    basis_ = vecs;
    return true;
}

f2::Vec QuotientF2::image(const DivisorClass& v) const {
    if (basis_.empty()) throw std::logic_error("quotient basis not set");
    std::vector<f2::Vec> combined = relations_.rows();
    const std::size_t off = combined.size();
    combined.insert(combined.end(), basis_.begin(), basis_.end());
    auto c = f2::coordinates(combined, lat_->mod2(v));
    if (!c) throw std::logic_error("quotient basis does not span");
    return *c >> off;
}

std::string QuotientF2::str(f2::Vec v) const {
    std::string out;
    for (std::size_t k = 0; k < labels_.size(); ++k) {
        if (!f2::bit(v, static_cast<int>(k))) continue;
        if (!out.empty()) out += " + ";
        out += labels_[k];
    }
    return out.empty() ? "0" : out;
}

f2::Mat QuotientF2::action(const GaloisRow& row) const {
    f2::Mat m;
    m.n = dim_;
    for (const auto& l : labels_) m.cols.push_back(image(apply_row(*lat_, row, lat_->parse(l))));
    return m;
}

std::vector<DivisorClass> row_matrix(const PicLattice& lat, const GaloisRow& row) {
    std::vector<DivisorClass> cols;
    cols.push_back(lat.named(row.pic.at("G1")));
    for (int i = 1; i <= 14; ++i) cols.push_back(lat.named(row.pic.at("F" + std::to_string(i))));
    return cols;
}

DivisorClass apply_row(const PicLattice& lat, const GaloisRow& row, const DivisorClass& v) {
    auto cols = row_matrix(lat, row);
    DivisorClass out = zero_class();
    for (int k = 0; k < N; ++k)
        if (v[k] != 0) out = add(out, cols[k], v[k]);
    return out;
}

bool row_is_isometry(const PicLattice& lat, const GaloisRow& row) {
    auto cols = row_matrix(lat, row);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (lat.gram(cols[i], cols[j]) != lat.gram_matrix()[i][j]) return false;
    // the induced map must agree with the class map on every F_i and G_i
    for (const auto& [label, img] : row.pic)
        if (apply_row(lat, row, lat.named(label)) != lat.named(img)) return false;
    return true;
}

bool row_preserves_lattice(const PicLattice& lat, const GaloisRow& row) {
    for (const auto& b : lat.basis())
        if (!lat.contains(apply_row(lat, row, b))) return false;
    return true;
}

std::vector<f2::Vec> invariants_under(const QuotientF2& q, const std::vector<GaloisRow>& gens) {
    std::vector<f2::Mat> mats;
    for (const auto& g : gens) mats.push_back(q.action(g));
    return f2::fixed_space(q.dim(), mats);
}

DecompositionReport verify_decomposition(const QuotientF2& q, const std::vector<GaloisRow>& gk1,
                                         const std::vector<GaloisRow>& k0_gens,
                                         const std::vector<bool>& flips_sqrtab,
                                         const std::vector<bool>& flips_theta0) {
    DecompositionReport rep;
    const std::vector<std::string> labels = {"F11", "F5", "F6", "F8", "F9"};
    std::vector<f2::Vec> mvecs;
    // the quotient images of the claimed basis, as labels of q's basis
    PicLattice lat;
    for (const auto& l : labels) mvecs.push_back(q.image(lat.parse(l)));

    auto fixed = invariants_under(q, gk1);
    f2::Span fs, ms;
    for (auto v : fixed) fs.add(v);
    for (auto v : mvecs) ms.add(v);
    rep.invariant_basis_matches = fs.dim() == 5 && ms.dim() == 5;
    for (auto v : mvecs) rep.invariant_basis_matches = rep.invariant_basis_matches && fs.contains(v);
    rep.notes.push_back("G_K1 invariants have dimension " + std::to_string(fs.dim()));

    std::vector<f2::Mat> actual, claimed;
    rep.submodule_stable = true;
    bool literal = true;
    for (std::size_t g = 0; g < k0_gens.size(); ++g) {
        f2::Mat a = q.action(k0_gens[g]);
        f2::Mat restricted;
        restricted.n = 5;
        for (auto v : mvecs) {
            auto c = f2::coordinates(mvecs, a.apply(v));
            if (!c) {
                rep.submodule_stable = false;
                rep.notes.push_back(k0_gens[g].name + " does not preserve the invariant subspace");
                c = 0;
            }
            restricted.cols.push_back(*c);
        }
        f2::Mat b = f2::Mat::identity(5);
        if (flips_sqrtab.at(g)) std::swap(b.cols[1], b.cols[2]);
        if (flips_theta0.at(g)) std::swap(b.cols[3], b.cols[4]);
        if (!(restricted == b)) literal = false;
        actual.push_back(restricted);
        claimed.push_back(b);
    }
    rep.isomorphic = rep.submodule_stable && f2::intertwiner(5, actual, claimed).has_value();
    rep.notes.push_back(literal ? "action agrees with the claimed permutation action on F11, F5, F6, F8, F9"
                                : "action differs from the claimed one on F11, F5, F6, F8, F9 literally");
    return rep;
}

std::vector<PullbackCheck> exceptional_pullbacks(const PicLattice& lat, const nlohmann::json& tables) {
    std::vector<PullbackCheck> out;
    for (const auto& row : tables.at("exceptional_pullbacks")) {
        PullbackCheck c;
        c.label = row.at("label");
        c.expr = row.at("class");
        DivisorClass v = lat.parse(c.expr);
        c.self_intersection = lat.gram(v, v);
        c.in_lattice = lat.contains(v);
        out.push_back(c);
    }
    return out;
}

}  // namespace ebr
