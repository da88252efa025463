#ifndef QTILING_TILING_HPP
#define QTILING_TILING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtiling/lattice.hpp"

// (r,D,E)-quasi-tilings of Z^d by cubes of side 2D+1: tiles are pairwise
// disjoint and Euclidean r-separated, and their union meets box_E. A
// QuasiTilingWindow is a finite window's view of such a tiling: it asserts
// knowledge of ALL centers inside box_W and nothing outside.

namespace qtiling {

struct TilingParams {
    Coord r = 1;  // separation
    Coord D = 1;  // tile radius
    Coord E = 1;  // near-origin radius

    void validate() const {
        if (r < 1 || D < 1 || E < 1)
            throw std::invalid_argument("TilingParams: r, D, E must be positive");
    }
    /// Hypothesis of the shift lemma.
    bool shiftable() const { return D <= E && E <= 2 * D; }
};

struct QuasiTilingWindow {
    TilingParams params;
    Coord window_radius = 1;
    PointSet centers;  // sorted, unique, ||c||_inf <= window_radius
};

/// Builds a window, canonicalizing the center set and validating bounds.
inline QuasiTilingWindow make_window(TilingParams params, Coord window_radius, PointSet centers, int d) {
    params.validate();
    if (d <= 0) throw std::invalid_argument("make_window: dimension must be positive");
    if (window_radius < 0) throw std::invalid_argument("make_window: window radius must be non-negative");
    canonicalize(centers);
    for (const auto& c : centers) {
        if (c.dim() != d)
            throw std::invalid_argument("make_window: center dimension mismatch");
        if (c.chebyshev() > window_radius)
            throw std::invalid_argument("make_window: center " + c.str() + " outside window radius " +
                                        std::to_string(window_radius));
    }
    return QuasiTilingWindow{params, window_radius, std::move(centers)};
}

struct CubeOverlapError : std::runtime_error {
    LatticeVector a, b;
    CubeOverlapError(LatticeVector a_, LatticeVector b_)
        : std::runtime_error("overlapping cubes at centers " + a_.str() + " and " + b_.str()),
          a(std::move(a_)),
          b(std::move(b_)) {}
};

/// Dom(T) = union of c + box_D over the centers. Throws CubeOverlapError
/// (with the witness pair) if two cubes intersect.
inline PointSet dom(const PointSet& centers, Coord D) {
    if (D < 1) throw std::invalid_argument("dom: D must be positive");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (cube_gap_sq(centers[i], centers[j], D) == 0)
                throw CubeOverlapError(centers[i], centers[j]);
    PointSet out;
    for (const auto& c : centers) {
        PointSet cube = cube_points_at(c, D);
        out.insert(out.end(), cube.begin(), cube.end());
    }
    canonicalize(out);
    return out;
}

enum class TilingCondition {
    cubes_disjoint = 1,    // (1)
    cubes_separated = 2,   // (2)
    meets_origin_cube = 3, // (3)
    l_cubes_disjoint = 4   // greedy output only
};

struct TilingViolation {
    TilingCondition condition;
    std::optional<std::pair<LatticeVector, LatticeVector>> witness_pair;  // for (1), (2)
    std::string detail;
};

struct TilingVerdict {
    std::vector<TilingViolation> violations;
    bool valid() const { return violations.empty(); }
};

/// Checks conditions (1)-(3) against the window's center set. Violations are
/// data, not errors; the first witness pair (in canonical order) is reported
/// per violated condition.
inline TilingVerdict check_tiling(const QuasiTilingWindow& t) {
    const Coord D = t.params.D;
    const Coord r = t.params.r;
    const Coord E = t.params.E;
    TilingVerdict verdict;

    std::optional<std::pair<LatticeVector, LatticeVector>> overlap, close;
    for (std::size_t i = 0; i < t.centers.size() && (!overlap || !close); ++i) {
        for (std::size_t j = i + 1; j < t.centers.size() && (!overlap || !close); ++j) {
            Coord gap = cube_gap_sq(t.centers[i], t.centers[j], D);
            if (gap == 0 && !overlap) overlap = {t.centers[i], t.centers[j]};
            if (gap < r * r && !close) close = {t.centers[i], t.centers[j]};
        }
    }
    if (overlap)
        verdict.violations.push_back({TilingCondition::cubes_disjoint, overlap,
                                      "tiles " + overlap->first.str() + " and " + overlap->second.str() +
                                          " intersect"});
    if (close)
        verdict.violations.push_back({TilingCondition::cubes_separated, close,
                                      "tiles " + close->first.str() + " and " + close->second.str() +
                                          " closer than r"});

    bool meets = false;
    for (const auto& c : t.centers) {
        bool near = true;
        for (int i = 0; i < c.dim() && near; ++i) {
            Coord a = c[i] < 0 ? -c[i] : c[i];
            near = a <= D + E;
        }
        if (near) {
            meets = true;
            break;
        }
    }
    if (!meets)
        verdict.violations.push_back(
            {TilingCondition::meets_origin_cube, std::nullopt, "Dom(T) misses box_E"});
    return verdict;
}

/// 3^d
inline int shift_count(int d) {
    if (d <= 0) throw std::invalid_argument("shift_count: dimension must be positive");
    int n = 1;
    for (int i = 0; i < d; ++i) n *= 3;
    return n;
}

/// The 3^d shift vectors with entries in {0, -E, +E}: the zero vector first,
/// the rest in lexicographic order. Only e_0 = 0 is fixed by the mathematics;
/// the remaining order is pinned for determinism.
inline std::vector<LatticeVector> shift_vectors(Coord E, int d) {
    if (E < 1) throw std::invalid_argument("shift_vectors: E must be positive");
    if (d <= 0) throw std::invalid_argument("shift_vectors: dimension must be positive");
    std::vector<LatticeVector> all;
    all.reserve(static_cast<std::size_t>(shift_count(d)));
    const Coord values[3] = {-E, 0, E};
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        LatticeVector v = LatticeVector::zero(d);
        for (int i = 0; i < d; ++i) v[i] = values[idx[static_cast<std::size_t>(i)]];
        all.push_back(std::move(v));
        int axis = d - 1;
        while (axis >= 0 && idx[static_cast<std::size_t>(axis)] == 2) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++idx[static_cast<std::size_t>(axis)];
    }
    std::sort(all.begin(), all.end());
    const LatticeVector zero = LatticeVector::zero(d);
    std::vector<LatticeVector> out;
    out.reserve(all.size());
    out.push_back(zero);
    for (auto& v : all)
        if (v != zero) out.push_back(std::move(v));
    return out;
}

struct WindowTooSmallError : std::invalid_argument {
    explicit WindowTooSmallError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Smallest i such that 0 lies in Dom(T) + e_i, i.e. some center c has
/// ||c + e_i||_inf <= D; absent when no shift covers. The window must be
/// large enough to decide coverage (window_radius >= D + 2E).
inline std::optional<int> first_covering_shift(const QuasiTilingWindow& t) {
    const Coord D = t.params.D;
    const Coord E = t.params.E;
    if (t.window_radius < D + 2 * E)
        throw WindowTooSmallError("first_covering_shift: window radius " + std::to_string(t.window_radius) +
                                  " < D + 2E = " + std::to_string(D + 2 * E));
    if (t.centers.empty()) return std::nullopt;
    const int d = t.centers.front().dim();
    const auto shifts = shift_vectors(E, d);
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (const auto& c : t.centers)
            if ((c + shifts[i]).chebyshev() <= D) return static_cast<int>(i);
    return std::nullopt;
}

struct EnumerationBudget {
    std::uint64_t max_candidates = std::uint64_t{1} << 24;
};

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(std::uint64_t budget)
        : std::runtime_error("enumeration budget exceeded (" + std::to_string(budget) +
                             " candidates evaluated)") {}
};

namespace detail {

/// Enumerates every center set within box_{cell_radius} satisfying (1)-(3),
/// yielding windows stamped with declared_radius. Candidate subsets are
/// generated depth-first with cells in lexicographic order; each partial set
/// already satisfies (1)-(2) (early pruning), so the emission order is the
/// lexicographic order of the sorted center lists.
inline void for_each_tiling_in(const TilingParams& params, Coord cell_radius, Coord declared_radius, int d,
                               const std::function<void(const QuasiTilingWindow&)>& visit,
                               EnumerationBudget budget) {
    params.validate();
    if (d <= 0) throw std::invalid_argument("enumerate_tilings: dimension must be positive");
    if (cell_radius < 0 || declared_radius < cell_radius)
        throw std::invalid_argument("enumerate_tilings: bad window radii");

    const PointSet cells = cube_points(cell_radius, d);
    const int n = static_cast<int>(cells.size());
    const Coord rsq = params.r * params.r;

    // conflict(i,j): choosing both violates (1) or (2)
    std::vector<std::vector<int>> conflicts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cube_gap_sq(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)],
                            params.D) < rsq) {
                conflicts[static_cast<std::size_t>(i)].push_back(j);
                conflicts[static_cast<std::size_t>(j)].push_back(i);
            }
    std::vector<bool> near_origin(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        bool near = true;
        const auto& c = cells[static_cast<std::size_t>(i)];
        for (int k = 0; k < d && near; ++k) {
            Coord a = c[k] < 0 ? -c[k] : c[k];
            near = a <= params.D + params.E;
        }
        near_origin[static_cast<std::size_t>(i)] = near;
    }

    std::vector<int> blocked(static_cast<std::size_t>(n), 0);
    PointSet chosen;
    int near_count = 0;
    std::uint64_t evaluated = 0;

    QuasiTilingWindow scratch{params, declared_radius, {}};

    auto rec = [&](auto&& self, int start) -> void {
        if (++evaluated > budget.max_candidates) throw BudgetExceededError(budget.max_candidates);
        if (near_count > 0) {
            scratch.centers = chosen;  // already sorted: cells visited in lex order
            visit(scratch);
        }
        for (int k = start; k < n; ++k) {
            if (blocked[static_cast<std::size_t>(k)]) continue;
            chosen.push_back(cells[static_cast<std::size_t>(k)]);
            near_count += near_origin[static_cast<std::size_t>(k)] ? 1 : 0;
            for (int j : conflicts[static_cast<std::size_t>(k)]) ++blocked[static_cast<std::size_t>(j)];
            self(self, k + 1);
            for (int j : conflicts[static_cast<std::size_t>(k)]) --blocked[static_cast<std::size_t>(j)];
            near_count -= near_origin[static_cast<std::size_t>(k)] ? 1 : 0;
            chosen.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace detail

/// Visits every subset of box_W that satisfies conditions (1)-(3), as a
/// window-restricted tiling, in deterministic order. Guarded by the
/// evaluated-candidate budget.
inline void for_each_tiling(const TilingParams& params, Coord W, int d,
                            const std::function<void(const QuasiTilingWindow&)>& visit,
                            EnumerationBudget budget = {}) {
    detail::for_each_tiling_in(params, W, W, d, visit, budget);
}

/// Materializing convenience for small windows.
inline std::vector<QuasiTilingWindow> enumerate_tilings(const TilingParams& params, Coord W, int d,
                                                        EnumerationBudget budget = {}) {
    std::vector<QuasiTilingWindow> out;
    for_each_tiling(params, W, d, [&](const QuasiTilingWindow& t) { out.push_back(t); }, budget);
    return out;
}

struct ShiftLemmaReport {
    TilingParams params;
    int d = 1;
    Coord window_radius = 0;
    Coord decisive_radius = 0;
    std::uint64_t tilings_checked = 0;
    bool all_covered = true;
    std::optional<QuasiTilingWindow> counterexample;

    std::string to_text() const {
        std::ostringstream os;
        os << "report: verify-shift-lemma\n"
           << "d: " << d << '\n'
           << "r: " << params.r << '\n'
           << "D: " << params.D << '\n'
           << "E: " << params.E << '\n'
           << "window: " << window_radius << '\n'
           << "decisive_radius: " << decisive_radius << '\n'
           << "tilings_checked: " << tilings_checked << '\n'
           << "all_covered: " << (all_covered ? "true" : "false") << '\n'
           << "counterexample: " << (counterexample ? set_str(counterexample->centers) : "none") << '\n';
        return os.str();
    }
};

/// Exhaustively verifies that every (r,D,E)-tiling known within box_W has a
/// covering shift among the 3^d vectors. Both condition (3) and coverage of
/// 0 under any shift depend only on centers with per-axis |c_i| <= D+E, and
/// a center set within that core is itself a valid tiling of the window, so
/// enumerating the core region is exhaustive for the whole window. The
/// reduction is cross-checked against full-window enumeration in the test
/// suite.
inline ShiftLemmaReport verify_shift_lemma(const TilingParams& params, Coord W, int d,
                                           EnumerationBudget budget = {}) {
    params.validate();
    if (!params.shiftable())
        throw std::invalid_argument("verify_shift_lemma: requires D <= E <= 2D (got D=" +
                                    std::to_string(params.D) + ", E=" + std::to_string(params.E) + ")");
    if (W < params.D + 2 * params.E)
        throw std::invalid_argument("verify_shift_lemma: window radius " + std::to_string(W) +
                                    " < D + 2E = " + std::to_string(params.D + 2 * params.E));
    ShiftLemmaReport report;
    report.params = params;
    report.d = d;
    report.window_radius = W;
    report.decisive_radius = params.D + params.E;

    struct Stop {};
    try {
        detail::for_each_tiling_in(params, report.decisive_radius, W, d,
                                   [&](const QuasiTilingWindow& t) {
                                       ++report.tilings_checked;
                                       if (!first_covering_shift(t)) {
                                           report.all_covered = false;
                                           report.counterexample = t;
                                           throw Stop{};
                                       }
                                   },
                                   budget);
    } catch (const Stop&) {
    }
    return report;
}

}  // namespace qtiling

#endif  // QTILING_TILING_HPP
