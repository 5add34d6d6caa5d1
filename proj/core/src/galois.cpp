#include "ebr/galois.hpp"

#include <set>
#include <stdexcept>

namespace ebr {

PointPerm identity_point_perm() { return {0, 1, 2, 3, 4, 5, 6, 7}; }

PointPerm compose(const PointPerm& outer, const PointPerm& inner) {
    PointPerm r{};
    for (int k = 0; k < 8; ++k) r[k] = outer[inner[k]];
    return r;
}

int point_index(const std::string& label) {
    if (label.size() == 2 && (label[0] == 'P' || label[0] == 'Q') && label[1] >= '1' &&
        label[1] <= '4')
        return (label[0] == 'P' ? 0 : 4) + (label[1] - '1');
    throw std::invalid_argument("bad Weierstrass point label: " + label);
}

std::string point_label(int k) {
    return std::string(1, k < 4 ? 'P' : 'Q') + std::to_string(k % 4 + 1);
}

namespace {

std::vector<std::string> fg_labels() {
    std::vector<std::string> out;
    for (int i = 1; i <= 14; ++i) {
        out.push_back("F" + std::to_string(i));
        out.push_back("G" + std::to_string(i));
    }
    return out;
}

std::string partner(const std::string& label) {
    if (label.empty() || (label[0] != 'F' && label[0] != 'G'))
        throw std::invalid_argument("bad class label: " + label);
    return (label[0] == 'F' ? "G" : "F") + label.substr(1);
}

void assign(std::map<std::string, std::string>& m, const std::string& from, const std::string& to,
            const std::string& row) {
    auto [it, inserted] = m.emplace(from, to);
    if (!inserted && it->second != to)
        throw std::invalid_argument("galois row " + row + ": conflicting images for " + from);
}

std::pair<std::string, std::string> split_arrow(const std::string& entry, bool& swap) {
    auto pos = entry.find("<->");
    swap = pos != std::string::npos;
    if (!swap) pos = entry.find("->");
    if (pos == std::string::npos) throw std::invalid_argument("bad map entry: " + entry);
    return {entry.substr(0, pos), entry.substr(pos + (swap ? 3 : 2))};
}

}  // namespace

std::vector<GaloisRow> load_galois_rows(const nlohmann::json& tables) {
    const auto labels = fg_labels();
    std::vector<GaloisRow> rows;
    for (const auto& j : tables.at("galois")) {
        GaloisRow r;
        r.name = j.at("name");
        r.factors = {r.name};
        for (const auto& [root, img] : j.at("field").items()) r.field[root] = img.get<std::string>();
        r.factor_fields = {r.field};
        for (const auto& e : j.at("pic_x")) r.pic_x.push_back(e.get<std::string>());
        std::map<std::string, std::string> m;
        for (const auto& e : j.at("pic_y")) {
            bool swap = false;
            auto [a, b] = split_arrow(e.get<std::string>(), swap);
            assign(m, a, b, r.name);
            assign(m, partner(a), partner(b), r.name);
            if (swap) {
                assign(m, b, a, r.name);
                assign(m, partner(b), partner(a), r.name);
            }
        }
        std::set<std::string> targets;
        for (const auto& l : labels) {
            auto it = m.find(l);
            r.pic[l] = it == m.end() ? l : it->second;
            targets.insert(r.pic[l]);
        }
        if (targets.size() != labels.size() || m.size() > labels.size())
            throw std::invalid_argument("galois row " + r.name + ": class map is not a bijection");
        std::map<int, int> pm;
        for (const auto& e : j.at("weierstrass")) {
            bool swap = false;
            auto [a, b] = split_arrow(e.get<std::string>(), swap);
            int x = point_index(a), y = point_index(b);
            pm[x] = y;
            if (swap) pm[y] = x;
        }
        for (auto [x, y] : pm) r.weierstrass[x] = y;
        std::set<int> seen(r.weierstrass.begin(), r.weierstrass.end());
        if (seen.size() != 8)
            throw std::invalid_argument("galois row " + r.name + ": point map is not a bijection");
        rows.push_back(std::move(r));
    }
    return rows;
}

const GaloisRow& find_row(const std::vector<GaloisRow>& rows, const std::string& name) {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw std::invalid_argument("unknown Galois generator: " + name);
}

GaloisRow compose(const GaloisRow& outer, const GaloisRow& inner) {
    GaloisRow r;
    r.name = outer.name + "*" + inner.name;
    r.factors = outer.factors;
    r.factors.insert(r.factors.end(), inner.factors.begin(), inner.factors.end());
    r.factor_fields = outer.factor_fields;
    r.factor_fields.insert(r.factor_fields.end(), inner.factor_fields.begin(),
                           inner.factor_fields.end());
    for (const auto& [l, img] : inner.pic) r.pic[l] = outer.pic.at(img);
    r.weierstrass = compose(outer.weierstrass, inner.weierstrass);
    return r;
}

TowerAut row_automorphism(const PresetField& k, const GaloisRow& row) {
    TowerAut acc = TowerAut::identity(k.tower());
    for (const auto& field : row.factor_fields) {
        std::map<std::string, TowerElem> images;
        for (const auto& [root, expr] : field) images[root] = k.eval(expr);
        acc = acc.compose(TowerAut::from_images(k.tower(), images));
    }
    return acc;
}

RowFieldAction field_action(const PresetField& k, const GaloisRow& row) {
    TowerAut s = row_automorphism(k, row);
    auto fixes = [&](const std::string& n) { return s.apply(k.value(n)) == k.value(n); };
    auto flips = [&](const std::string& n) { return s.apply(k.value(n)) == -k.value(n); };
    RowFieldAction a;
    a.name = row.name;
    a.fixes_k0 = fixes("i") && fixes("sqrt2") && fixes("sqrt5") && fixes("kappa");
    a.fixes_theta0 = fixes("theta0");
    a.fixes_sqrtab = fixes("sqrtab");
    a.flips_theta0 = flips("theta0");
    a.flips_sqrtab = flips("sqrtab");
    a.fixes_k1 = a.fixes_k0 && a.fixes_theta0 && a.fixes_sqrtab && fixes("eta1p") && fixes("gamma1p");
    return a;
}

namespace {

std::vector<TowerElem> cross(const std::vector<TowerElem>& u, const std::vector<TowerElem>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool same_point(const std::vector<TowerElem>& p, const std::vector<TowerElem>& q) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] * q[j] != p[j] * q[i]) return false;
    return true;
}

}  // namespace

std::optional<PointPerm> induced_point_perm(const PresetField& k, const GaloisRow& row,
                                            const nlohmann::json& tables) {
    const std::vector<std::string> vars = {"v0", "v1", "v2"};
    std::vector<std::vector<TowerElem>> pts;
    for (const auto& wp : tables.at("weierstrass_points")) {
        auto l1 = k.linear_coefficients(wp.at("equations").at(0).get<std::string>(), vars);
        auto l2 = k.linear_coefficients(wp.at("equations").at(1).get<std::string>(), vars);
        pts.push_back(cross(l1, l2));
    }
    TowerAut s = row_automorphism(k, row);
    PointPerm perm{};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<TowerElem> img;
        for (const auto& x : pts[i]) img.push_back(s.apply(x));
        int hit = -1;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (same_point(img, pts[j])) hit = static_cast<int>(j);
        if (hit < 0) return std::nullopt;
        perm[i] = hit;
    }
    return perm;
}

GeneratorChoice gk1_generators(const PresetField& k, const std::vector<GaloisRow>& rows) {
    GeneratorChoice out;
    std::vector<RowFieldAction> acts;
    for (const auto& r : rows) acts.push_back(field_action(k, r));
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (acts[i].fixes_k1) out.rows.push_back(rows[i]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (acts[i].fixes_k1) continue;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (acts[j].fixes_k1) continue;
            GaloisRow prod = compose(rows[i], rows[j]);
            if (!field_action(k, prod).fixes_k1) continue;
            out.rows.push_back(prod);
            out.notes.push_back("product " + prod.name + " fixes K1 although neither factor does");
        }
    }
    return out;
}

std::vector<GaloisRow> k0_rows(const PresetField& k, const std::vector<GaloisRow>& rows) {
    std::vector<GaloisRow> out;
    for (const auto& r : rows)
        if (field_action(k, r).fixes_k0) out.push_back(r);
    return out;
}

}  // namespace ebr
