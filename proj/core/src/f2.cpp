#include "ebr/f2.hpp"

#include <stdexcept>

namespace ebr::f2 {

namespace {
int lead(Vec v) { return 63 - __builtin_clzll(v); }
}  // namespace

Vec Span::reduce(Vec v) const {
    for (Vec r : rows_)
        if (bit(v, lead(r))) v ^= r;
    return v;
}

bool Span::add(Vec v) {
    v = reduce(v);
    if (v == 0) return false;
    // keep rows sorted by decreasing leading bit so one pass of reduce works
    auto it = rows_.begin();
    while (it != rows_.end() && lead(*it) > lead(v)) ++it;
    rows_.insert(it, v);
    return true;
}

int rank(const std::vector<Vec>& vs) {
    Span s;
    for (Vec v : vs) s.add(v);
    return s.dim();
}

Mat Mat::identity(int n) {
    Mat m;
    m.n = n;
    for (int k = 0; k < n; ++k) m.cols.push_back(Vec(1) << k);
    return m;
}

Vec Mat::apply(Vec v) const {
    Vec out = 0;
    for (int k = 0; k < n; ++k)
        if (bit(v, k)) out ^= cols[k];
    return out;
}

Mat Mat::compose(const Mat& inner) const {
    Mat m;
    m.n = inner.n;
    for (Vec c : inner.cols) m.cols.push_back(apply(c));
    return m;
}

bool Mat::invertible() const { return static_cast<int>(cols.size()) == n && rank(cols) == n; }

std::vector<Vec> kernel_on(const std::vector<Vec>& domain, const std::function<Vec(Vec)>& f) {
    // eliminate on the image while tracking the source combination
    std::vector<std::pair<Vec, Vec>> rows;
    for (Vec d : domain) rows.emplace_back(f(d), d);
    std::vector<Vec> kernel;
    std::vector<std::pair<Vec, Vec>> pivots;
    for (auto [img, src] : rows) {
        for (const auto& [pimg, psrc] : pivots)
            if (bit(img, lead(pimg))) {
                img ^= pimg;
                src ^= psrc;
            }
        if (img == 0) {
            if (src != 0) kernel.push_back(src);
            continue;
        }
        // keep pivot images in echelon order
        auto it = pivots.begin();
        while (it != pivots.end() && lead(it->first) > lead(img)) ++it;
        pivots.insert(it, {img, src});
    }
    return kernel;
}

std::vector<Vec> fixed_space(int n, const std::vector<Mat>& gens) {
    std::vector<Vec> space;
    for (int k = 0; k < n; ++k) space.push_back(Vec(1) << k);
    for (const Mat& g : gens) space = kernel_on(space, [&](Vec v) { return g.apply(v) ^ v; });
    return space;
}

std::optional<Vec> coordinates(const std::vector<Vec>& basis, Vec v) {
    // solve sum c_k basis_k = v by elimination on (vector, coefficient) pairs
    std::vector<std::pair<Vec, Vec>> pivots;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Vec img = basis[k], src = Vec(1) << k;
        for (const auto& [pimg, psrc] : pivots)
            if (bit(img, lead(pimg))) {
                img ^= pimg;
                src ^= psrc;
            }
        if (img == 0) throw std::invalid_argument("coordinates: basis is dependent");
        auto it = pivots.begin();
        while (it != pivots.end() && lead(it->first) > lead(img)) ++it;
        pivots.insert(it, {img, src});
    }
    Vec c = 0;
    for (const auto& [pimg, psrc] : pivots)
        if (bit(v, lead(pimg))) {
            v ^= pimg;
            c ^= psrc;
        }
    if (v != 0) return std::nullopt;
    return c;
}

std::optional<Mat> intertwiner(int n, const std::vector<Mat>& a, const std::vector<Mat>& b) {
    if (n * n > 64) throw std::invalid_argument("intertwiner: dimension too large");
    if (a.size() != b.size()) throw std::invalid_argument("intertwiner: generator count mismatch");
    // unknown X has entry (r, c) at bit r*n + c; X is stored by columns
    auto to_mat = [n](Vec x) {
        Mat m;
        m.n = n;
        for (int c = 0; c < n; ++c) {
            Vec col = 0;
            for (int r = 0; r < n; ++r)
                if (bit(x, r * n + c)) col |= Vec(1) << r;
            m.cols.push_back(col);
        }
        return m;
    };
    std::vector<Vec> space;
    for (int k = 0; k < n * n; ++k) space.push_back(Vec(1) << k);
    for (std::size_t g = 0; g < a.size(); ++g) {
        space = kernel_on(space, [&](Vec x) {
            Mat xm = to_mat(x);
            Mat lhs = xm.compose(a[g]);
            Mat rhs = b[g].compose(xm);
            Vec diff = 0;
            for (int c = 0; c < n; ++c) {
                Vec d = lhs.cols[c] ^ rhs.cols[c];
                for (int r = 0; r < n; ++r)
                    if (bit(d, r)) diff |= Vec(1) << (r * n + c);
            }
            return diff;
        });
    }
    if (space.size() > 24) throw std::runtime_error("intertwiner: solution space too large");
    for (Vec mask = 1; mask < (Vec(1) << space.size()); ++mask) {
        Vec x = 0;
        for (std::size_t k = 0; k < space.size(); ++k)
            if (bit(mask, static_cast<int>(k))) x ^= space[k];
        Mat m = to_mat(x);
        if (m.invertible()) return m;
    }
    return std::nullopt;
}

}  // namespace ebr::f2
