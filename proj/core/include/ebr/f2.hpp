#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace ebr::f2 {

// Vectors of length <= 64 over F2, bit k holding coordinate k.
using Vec = std::uint64_t;

inline int weight(Vec v) { return __builtin_popcountll(v); }
inline bool bit(Vec v, int k) { return (v >> k) & 1U; }

// Row-echelon span with pivot bookkeeping.
class Span {
public:
    bool add(Vec v);  // false if v was already in the span
    bool contains(Vec v) const { return reduce(v) == 0; }
    Vec reduce(Vec v) const;
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<Vec>& rows() const { return rows_; }

private:
    std::vector<Vec> rows_;  // each with a distinct leading bit
};

int rank(const std::vector<Vec>& vs);

// Linear map F2^n -> F2^m stored by its column images.
struct Mat {
    int n = 0;
    std::vector<Vec> cols;

    static Mat identity(int n);
    Vec apply(Vec v) const;
    Mat compose(const Mat& inner) const;  // this after inner
    bool invertible() const;
    friend bool operator==(const Mat& a, const Mat& b) { return a.n == b.n && a.cols == b.cols; }
};

// Basis of { v in span(domain) : f(v) = 0 } for a linear f.
std::vector<Vec> kernel_on(const std::vector<Vec>& domain, const std::function<Vec(Vec)>& f);

// Subspace of F2^n fixed by every matrix.
std::vector<Vec> fixed_space(int n, const std::vector<Mat>& gens);

// Coordinates of v in the given basis (which must be independent).
std::optional<Vec> coordinates(const std::vector<Vec>& basis, Vec v);

// Some invertible X with X*A_g = B_g*X for every g, if one exists.
std::optional<Mat> intertwiner(int n, const std::vector<Mat>& a, const std::vector<Mat>& b);

}  // namespace ebr::f2
