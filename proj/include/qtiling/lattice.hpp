#ifndef QTILING_LATTICE_HPP
#define QTILING_LATTICE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Exact integer geometry of Z^d: cubes, translations, and inter-cube
// separation. All distance comparisons are done on squared integers;
// there is no floating point anywhere in this layer.

namespace qtiling {

using Coord = std::int64_t;

/// A point of Z^d. Comparison is lexicographic on coordinates, so sorted
/// containers of points have one canonical order.
struct LatticeVector {
    std::vector<Coord> coords;

    LatticeVector() = default;
    explicit LatticeVector(std::vector<Coord> c) : coords(std::move(c)) {}
    LatticeVector(std::initializer_list<Coord> c) : coords(c) {}

    int dim() const { return static_cast<int>(coords.size()); }
    Coord operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
    Coord& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

    auto operator<=>(const LatticeVector&) const = default;

    static LatticeVector zero(int d) {
        return LatticeVector(std::vector<Coord>(static_cast<std::size_t>(d), 0));
    }
    static LatticeVector unit(int d, int axis) {
        LatticeVector v = zero(d);
        v[axis] = 1;
        return v;
    }

    /// ||.||_inf
    Coord chebyshev() const {
        Coord m = 0;
        for (Coord x : coords) m = std::max(m, x < 0 ? -x : x);
        return m;
    }

    /// Sum of squared coordinates.
    Coord norm_sq() const {
        Coord s = 0;
        for (Coord x : coords) s += x * x;
        return s;
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < dim(); ++i) {
            if (i) os << ',';
            os << coords[static_cast<std::size_t>(i)];
        }
        os << ')';
        return os.str();
    }
};

inline void require_same_dim(const LatticeVector& a, const LatticeVector& b, const char* what) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    require_same_dim(a, b, "vector addition");
    LatticeVector out = a;
    for (int i = 0; i < a.dim(); ++i) out[i] += b[i];
    return out;
}

inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    require_same_dim(a, b, "vector subtraction");
    LatticeVector out = a;
    for (int i = 0; i < a.dim(); ++i) out[i] -= b[i];
    return out;
}

inline LatticeVector operator-(const LatticeVector& a) {
    LatticeVector out = a;
    for (int i = 0; i < a.dim(); ++i) out[i] = -out[i];
    return out;
}

/// Point sets are kept sorted lexicographically and duplicate-free, so set
/// outputs are deterministic and diffable.
using PointSet = std::vector<LatticeVector>;

inline void canonicalize(PointSet& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

inline bool set_contains(const PointSet& sorted, const LatticeVector& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

inline std::string set_str(const PointSet& pts) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ", ";
        os << pts[i].str();
    }
    os << '}';
    return os.str();
}

/// The axis-aligned cube center + {-l..l}^d.
struct CubeWindow {
    LatticeVector center;
    Coord radius = 0;

    CubeWindow() = default;
    CubeWindow(LatticeVector c, Coord l) : center(std::move(c)), radius(l) {
        if (l < 0) throw std::invalid_argument("CubeWindow: radius must be non-negative");
    }

    int dim() const { return center.dim(); }

    bool contains(const LatticeVector& p) const {
        require_same_dim(center, p, "CubeWindow::contains");
        return (p - center).chebyshev() <= radius;
    }

    /// (2l+1)^d
    Coord cardinality() const {
        Coord n = 1;
        for (int i = 0; i < dim(); ++i) n *= 2 * radius + 1;
        return n;
    }
};

/// All points of {-l..l}^d in lexicographic order.
inline PointSet cube_points(Coord l, int d) {
    if (d <= 0) throw std::invalid_argument("cube_points: dimension must be positive");
    if (l < 0) throw std::invalid_argument("cube_points: radius must be non-negative");
    PointSet out;
    const Coord side = 2 * l + 1;
    Coord total = 1;
    for (int i = 0; i < d; ++i) total *= side;
    out.reserve(static_cast<std::size_t>(total));
    LatticeVector p(std::vector<Coord>(static_cast<std::size_t>(d), -l));
    for (;;) {
        out.push_back(p);
        int axis = d - 1;
        while (axis >= 0 && p[axis] == l) {
            p[axis] = -l;
            --axis;
        }
        if (axis < 0) break;
        ++p[axis];
    }
    return out;
}

/// Points of the cube center + box_l, sorted.
inline PointSet cube_points_at(const LatticeVector& center, Coord l) {
    PointSet out = cube_points(l, center.dim());
    for (auto& p : out) p = p + center;
    return out;
}

/// Pointwise translation by v. Preserves canonical order (adding a constant
/// vector is monotone for the lexicographic order).
inline PointSet translate(const PointSet& points, const LatticeVector& v) {
    PointSet out;
    out.reserve(points.size());
    for (const auto& p : points) {
        require_same_dim(p, v, "translate");
        out.push_back(p + v);
    }
    return out;
}

/// Squared Euclidean distance between the point sets c1 + box_D and
/// c2 + box_D: per axis the gap is max(0, |c1_i - c2_i| - 2D), and the
/// result is the sum of squared gaps. Zero iff the cubes intersect.
inline Coord cube_gap_sq(const LatticeVector& c1, const LatticeVector& c2, Coord D) {
    require_same_dim(c1, c2, "cube_gap_sq");
    if (D < 0) throw std::invalid_argument("cube_gap_sq: D must be non-negative");
    Coord s = 0;
    for (int i = 0; i < c1.dim(); ++i) {
        Coord delta = c1[i] - c2[i];
        if (delta < 0) delta = -delta;
        Coord gap = delta - 2 * D;
        if (gap > 0) s += gap * gap;
    }
    return s;
}

/// True iff n lies in the Euclidean ball of radius R around 0.
inline bool in_euclidean_ball(const LatticeVector& n, Coord R) {
    if (R < 0) throw std::invalid_argument("in_euclidean_ball: radius must be non-negative");
    return n.norm_sq() <= R * R;
}

}  // namespace qtiling

#endif  // QTILING_LATTICE_HPP
