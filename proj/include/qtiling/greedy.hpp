#ifndef QTILING_GREEDY_HPP
#define QTILING_GREEDY_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtiling/lattice.hpp"
#include "qtiling/system.hpp"
#include "qtiling/tiling.hpp"

// The staged greedy construction C_1(x) <= ... <= C_s(x): stage i adds,
// simultaneously, every n with x n in U_i whose L-cube avoids the L-cubes
// of everything already placed. On an odometer the partition classes are
// residue classes mod m, so each candidate set is a full coset of m Z^d and
// the whole construction lives on the residue torus: a stage either claims
// its entire class or nothing. The final center set is an
// (r, L-r, L+r)-tiling, equivariant and m Z^d-periodic.

namespace qtiling {

struct GreedyParams {
    Coord N = 0;  // generator radius; 0 means tiling-only parameters
    Coord r = 1;
    Coord L = 3;

    Coord D() const { return L - r; }
    Coord E() const { return L + r; }
    TilingParams tiling() const { return TilingParams{r, D(), E()}; }
};

/// r >= 1 and L >= 3r always (L >= 3r is what makes E <= 2D hold); when the
/// parameters are meant to drive chain components, additionally r^2 > N^2 d.
inline void validate_greedy_params(const GreedyParams& p, int d) {
    if (d <= 0) throw std::invalid_argument("GreedyParams: dimension must be positive");
    if (p.N < 0) throw std::invalid_argument("GreedyParams: N must be non-negative");
    if (p.r < 1) throw std::invalid_argument("GreedyParams: r must be positive");
    if (p.L < 3 * p.r)
        throw std::invalid_argument("GreedyParams: L >= 3r required (got L=" + std::to_string(p.L) +
                                    ", r=" + std::to_string(p.r) + ")");
    if (p.N >= 1 && p.r * p.r <= p.N * p.N * d)
        throw std::invalid_argument("GreedyParams: r^2 > N^2 d required (got r=" + std::to_string(p.r) +
                                    ", N=" + std::to_string(p.N) + ", d=" + std::to_string(d) + ")");
}

/// Smallest r with r^2 > N^2 d, and L = 3r.
inline GreedyParams default_params(Coord N, int d) {
    if (N < 1) throw std::invalid_argument("default_params: N must be positive");
    if (d <= 0) throw std::invalid_argument("default_params: dimension must be positive");
    const Coord target = N * N * static_cast<Coord>(d);
    Coord lo = 0, hi = N * static_cast<Coord>(d) + 1;  // hi^2 > N^2 d always
    while (lo + 1 < hi) {  // invariant: lo^2 <= target < hi^2... seek smallest r with r^2 > target
        Coord mid = lo + (hi - lo) / 2;
        if (mid * mid > target)
            hi = mid;
        else
            lo = mid;
    }
    GreedyParams p{N, hi, 3 * hi};
    validate_greedy_params(p, d);
    return p;
}

/// Radius rho(R) such that C_s(x) within B_R is determined by the
/// memberships {x n in U_c : ||n||_inf <= rho(R)}: each stage's exclusion
/// looks 2L further out, once per stage past the first.
inline Coord dependency_radius(Coord R, Coord L, Coord stage_count) {
    if (R < 0 || L < 1 || stage_count < 1)
        throw std::invalid_argument("dependency_radius: bad arguments");
    return R + 2 * L * (stage_count - 1);
}

/// For an odometer residue partition, C_s(x) is m Z^d-periodic, so one
/// period of memberships suffices regardless of stage count.
inline Coord odometer_dependency_radius(Coord R, Coord modulus) {
    if (R < 0 || modulus < 1) throw std::invalid_argument("odometer_dependency_radius: bad arguments");
    return R > modulus ? R : modulus;
}

namespace detail {

/// Per-axis distance between residue classes a and b mod m, minimized over
/// representatives.
inline Coord torus_axis_dist(Coord a, Coord b, Coord m) {
    Coord delta = mod_nonneg(a - b, m);
    return delta < m - delta ? delta : m - delta;
}

/// min over representatives of ||u - v||_inf for u = a, v = b mod m Z^d;
/// the minimum factors per axis.
inline Coord torus_chebyshev(const LatticeVector& a, const LatticeVector& b, Coord m) {
    Coord dist = 0;
    for (int i = 0; i < a.dim(); ++i) dist = std::max(dist, torus_axis_dist(a[i], b[i], m));
    return dist;
}

}  // namespace detail

/// One greedy run on the residue torus: the claimed classes in claim order,
/// each with the (0-based lexicographic) index of the stage that added it.
struct GreedyRun {
    SeparatedPartition partition;
    std::vector<std::pair<LatticeVector, Coord>> claims;

    std::vector<LatticeVector> classes() const {
        std::vector<LatticeVector> out;
        out.reserve(claims.size());
        for (const auto& [cls, stage] : claims) out.push_back(cls);
        return out;
    }
};

/// Runs the stages. Stage for partition class c (classes in lexicographic
/// order) claims the residue class c - x mod m iff no already-claimed class
/// comes within Chebyshev distance 2L on the torus; by periodicity that is
/// exactly the set-builder's per-point condition, constant on the class.
inline GreedyRun greedy_run(const OdometerSpec& spec, const SystemPoint& x, const GreedyParams& params) {
    spec.validate();
    validate_greedy_params(params, spec.d);
    GreedyRun run;
    run.partition = separated_partition(spec, params.L);
    const Coord m = run.partition.modulus;
    if (x.depth() < run.partition.level)
        throw std::invalid_argument("greedy_run: point depth " + std::to_string(x.depth()) +
                                    " below partition level " + std::to_string(run.partition.level));
    // Same-stage candidates are one residue class apart: distinct
    // representatives differ by at least m, and their L-cubes stay disjoint.
    if (m <= 2 * params.L)
        throw std::logic_error("greedy_run: partition modulus not past 2L, stage simultaneity unsound");

    const auto& res = x.residues[static_cast<std::size_t>(run.partition.level - 1)];
    const int d = spec.d;

    LatticeVector stage_class = LatticeVector::zero(d);
    Coord stage_index = 0;
    for (;;) {
        LatticeVector candidate = LatticeVector::zero(d);
        for (int i = 0; i < d; ++i) candidate[i] = mod_nonneg(stage_class[i] - res[i], m);
        bool blocked = false;
        for (const auto& [cls, st] : run.claims) {
            if (detail::torus_chebyshev(candidate, cls, m) <= 2 * params.L) {
                blocked = true;
                break;
            }
        }
        if (!blocked) run.claims.emplace_back(std::move(candidate), stage_index);

        int axis = d - 1;
        while (axis >= 0 && stage_class[axis] == m - 1) {
            stage_class[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++stage_class[axis];
        ++stage_index;
    }
    return run;
}

/// Representatives of the claimed classes inside box_W, sorted.
inline PointSet materialize_classes(const std::vector<LatticeVector>& classes, Coord m, Coord W) {
    PointSet out;
    for (const auto& cls : classes) {
        const int d = cls.dim();
        // per-axis representatives of cls within [-W, W]
        std::vector<std::vector<Coord>> axis_reps(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            Coord first = -W + mod_nonneg(cls[i] + W, m);
            for (Coord v = first; v <= W; v += m) axis_reps[static_cast<std::size_t>(i)].push_back(v);
        }
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        bool any = true;
        for (int i = 0; i < d; ++i) any = any && !axis_reps[static_cast<std::size_t>(i)].empty();
        while (any) {
            LatticeVector p = LatticeVector::zero(d);
            for (int i = 0; i < d; ++i)
                p[i] = axis_reps[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
            out.push_back(std::move(p));
            int axis = d - 1;
            while (axis >= 0 &&
                   idx[static_cast<std::size_t>(axis)] + 1 == axis_reps[static_cast<std::size_t>(axis)].size()) {
                idx[static_cast<std::size_t>(axis)] = 0;
                --axis;
            }
            if (axis < 0) break;
            ++idx[static_cast<std::size_t>(axis)];
        }
    }
    canonicalize(out);
    return out;
}

/// C_s(x) within box_W as an (r, L-r, L+r) window tiling. W must span at
/// least one period so the window view is faithful.
inline QuasiTilingWindow greedy_centers(const OdometerSpec& spec, const SystemPoint& x,
                                        const GreedyParams& params, Coord W) {
    GreedyRun run = greedy_run(spec, x, params);
    const Coord m = run.partition.modulus;
    if (W < m)
        throw std::invalid_argument("greedy_centers: window radius " + std::to_string(W) +
                                    " below one period m = " + std::to_string(m));
    return QuasiTilingWindow{params.tiling(), W, materialize_classes(run.classes(), m, W)};
}

/// The stronger guarantees of the construction, beyond plain (1)-(3):
/// pairwise L-cube disjointness of the centers.
inline TilingVerdict check_greedy_output(const QuasiTilingWindow& t, const GreedyParams& params) {
    const TilingParams expected = params.tiling();
    if (t.params.r != expected.r || t.params.D != expected.D || t.params.E != expected.E)
        throw std::invalid_argument("check_greedy_output: window parameters do not match (r, L-r, L+r)");
    TilingVerdict verdict = check_tiling(t);
    for (std::size_t i = 0; i < t.centers.size(); ++i)
        for (std::size_t j = i + 1; j < t.centers.size(); ++j)
            if (cube_gap_sq(t.centers[i], t.centers[j], params.L) == 0) {
                verdict.violations.push_back({TilingCondition::l_cubes_disjoint,
                                              std::make_pair(t.centers[i], t.centers[j]),
                                              "L-cubes at " + t.centers[i].str() + " and " +
                                                  t.centers[j].str() + " intersect"});
                return verdict;
            }
    return verdict;
}

}  // namespace qtiling

#endif  // QTILING_GREEDY_HPP
