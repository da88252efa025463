#ifndef QTILING_SYSTEM_HPP
#define QTILING_SYSTEM_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtiling/lattice.hpp"

// Effectively represented free Z^d Cantor systems: odometer towers
// (inverse limits of (Z/m_k Z)^d under coordinatewise translation) and
// product extensions with a symbolic fiber. Points carry only finite data:
// a tower prefix, plus a finite fiber window for extension points. Every
// operation states how much of that data it consumes; insufficient depth is
// an explicit error, never a silent guess.

namespace qtiling {

inline Coord mod_nonneg(Coord a, Coord m) {
    Coord v = a % m;
    return v < 0 ? v + m : v;
}

struct OdometerSpec {
    int d = 1;
    std::vector<Coord> moduli;  // m_1 | m_2 | ... , strictly increasing, m_1 >= 2

    void validate() const {
        if (d <= 0) throw std::invalid_argument("OdometerSpec: dimension must be positive");
        if (moduli.empty()) throw std::invalid_argument("OdometerSpec: at least one tower level required");
        if (moduli.front() < 2) throw std::invalid_argument("OdometerSpec: m_1 must be at least 2");
        for (std::size_t k = 1; k < moduli.size(); ++k) {
            if (moduli[k] <= moduli[k - 1])
                throw std::invalid_argument("OdometerSpec: moduli must be strictly increasing");
            if (moduli[k] % moduli[k - 1] != 0)
                throw std::invalid_argument("OdometerSpec: each modulus must divide the next (" +
                                            std::to_string(moduli[k - 1]) + " does not divide " +
                                            std::to_string(moduli[k]) + ")");
        }
    }
    int levels() const { return static_cast<int>(moduli.size()); }
};

/// Finite view of a fiber configuration in A^{Z^d}: symbols on box_radius.
/// radius -1 denotes the empty window (no positions known).
struct FiberWindow {
    Coord radius = -1;
    std::map<LatticeVector, int> symbols;
};

struct SystemPoint {
    std::vector<LatticeVector> residues;  // residues[k] lives at tower level k+1
    std::optional<FiberWindow> fiber;     // extension points only

    int depth() const { return static_cast<int>(residues.size()); }
};

struct ExtensionSpec {
    OdometerSpec base;
    int fiber_alphabet_size = 2;

    void validate() const {
        base.validate();
        if (fiber_alphabet_size < 2)
            throw std::invalid_argument("ExtensionSpec: fiber alphabet needs at least two symbols");
    }
};

/// Residue-class clopen partition at one tower level, separated enough that
/// the translates U_c n, n in box_{2L}, are mutually disjoint. That needs
/// distinct elements of box_{2L} to stay distinct mod m per coordinate:
/// m >= 4L + 1, exactly.
struct SeparatedPartition {
    int level = 1;       // 1-based tower index
    Coord modulus = 0;   // m at that level
    Coord sep_radius = 0;  // L

    Coord partition_size(int d) const {
        Coord s = 1;
        for (int i = 0; i < d; ++i) s *= modulus;
        return s;
    }
};

inline void validate_point(const OdometerSpec& spec, const SystemPoint& x) {
    spec.validate();
    if (x.residues.empty() || x.depth() > spec.levels())
        throw std::invalid_argument("SystemPoint: depth must be between 1 and the tower height");
    for (int k = 0; k < x.depth(); ++k) {
        const auto& res = x.residues[static_cast<std::size_t>(k)];
        const Coord m = spec.moduli[static_cast<std::size_t>(k)];
        if (res.dim() != spec.d) throw std::invalid_argument("SystemPoint: residue dimension mismatch");
        for (int i = 0; i < spec.d; ++i)
            if (res[i] < 0 || res[i] >= m)
                throw std::invalid_argument("SystemPoint: residue out of range at level " +
                                            std::to_string(k + 1));
        if (k > 0) {
            const Coord prev = spec.moduli[static_cast<std::size_t>(k - 1)];
            for (int i = 0; i < spec.d; ++i)
                if (mod_nonneg(res[i], prev) != x.residues[static_cast<std::size_t>(k - 1)][i])
                    throw std::invalid_argument(
                        "SystemPoint: level " + std::to_string(k + 1) +
                        " residue does not reduce to level " + std::to_string(k));
        }
    }
    if (x.fiber && x.fiber->radius >= 0) {
        const PointSet window = cube_points(x.fiber->radius, spec.d);
        for (const auto& p : window)
            if (!x.fiber->symbols.count(p))
                throw std::invalid_argument("SystemPoint: fiber window missing symbol at " + p.str());
    }
}

/// Point with the given residue vector at the given (1-based) tower level;
/// shallower levels are filled in by reduction.
inline SystemPoint point_at_level(const OdometerSpec& spec, int level, const LatticeVector& residue) {
    spec.validate();
    if (level < 1 || level > spec.levels())
        throw std::invalid_argument("point_at_level: no tower level " + std::to_string(level));
    if (residue.dim() != spec.d) throw std::invalid_argument("point_at_level: residue dimension mismatch");
    SystemPoint x;
    x.residues.resize(static_cast<std::size_t>(level));
    for (int k = 0; k < level; ++k) {
        const Coord m = spec.moduli[static_cast<std::size_t>(k)];
        LatticeVector r = LatticeVector::zero(spec.d);
        for (int i = 0; i < spec.d; ++i) r[i] = mod_nonneg(residue[i], m);
        x.residues[static_cast<std::size_t>(k)] = std::move(r);
    }
    validate_point(spec, x);
    return x;
}

/// Point with the given residues at the deepest tower level.
inline SystemPoint odometer_point(const OdometerSpec& spec, const LatticeVector& deepest_residue) {
    return point_at_level(spec, spec.levels(), deepest_residue);
}

/// The action: residues translate by n mod each level's modulus; the fiber
/// window shifts by -n, so the new window at position p holds the old symbol
/// at p + n. Moving by n costs ||n||_inf of fiber radius; a window shrunk
/// past the origin becomes empty.
inline SystemPoint act(const SystemPoint& x, const LatticeVector& n, const OdometerSpec& spec) {
    if (n.dim() != spec.d) throw std::invalid_argument("act: vector dimension mismatch");
    SystemPoint y;
    y.residues.reserve(x.residues.size());
    for (int k = 0; k < x.depth(); ++k) {
        const Coord m = spec.moduli[static_cast<std::size_t>(k)];
        LatticeVector r = LatticeVector::zero(spec.d);
        for (int i = 0; i < spec.d; ++i)
            r[i] = mod_nonneg(x.residues[static_cast<std::size_t>(k)][i] + n[i], m);
        y.residues.push_back(std::move(r));
    }
    if (x.fiber) {
        FiberWindow fw;
        if (x.fiber->radius >= 0) {
            fw.radius = x.fiber->radius - n.chebyshev();
            if (fw.radius >= 0)
                for (const auto& p : cube_points(fw.radius, spec.d))
                    fw.symbols.emplace(p, x.fiber->symbols.at(p + n));
            else
                fw.radius = -1;
        }
        y.fiber = std::move(fw);
    }
    return y;
}

inline SystemPoint act(const SystemPoint& x, const LatticeVector& n, const ExtensionSpec& ext) {
    return act(x, n, ext.base);
}

struct NoSeparatedLevelError : std::runtime_error {
    Coord required_modulus;
    explicit NoSeparatedLevelError(Coord required)
        : std::runtime_error("no tower level is separated enough: requires modulus >= " +
                             std::to_string(required)),
          required_modulus(required) {}
};

/// Smallest tower level whose modulus is at least 4L+1. The partition at
/// that level is by residue classes, taken in lexicographic order of the
/// class vector; that order is what fixes the greedy stage order.
inline SeparatedPartition separated_partition(const OdometerSpec& spec, Coord L) {
    spec.validate();
    if (L < 1) throw std::invalid_argument("separated_partition: L must be positive");
    const Coord required = 4 * L + 1;
    for (int k = 0; k < spec.levels(); ++k)
        if (spec.moduli[static_cast<std::size_t>(k)] >= required)
            return SeparatedPartition{k + 1, spec.moduli[static_cast<std::size_t>(k)], L};
    throw NoSeparatedLevelError(required);
}

/// True iff x n lies in the partition class U_c, i.e. (x + n) = c mod m per
/// coordinate at the partition's level.
inline bool membership(const SystemPoint& x, const LatticeVector& residue_class, const LatticeVector& n,
                       const SeparatedPartition& p) {
    if (x.depth() < p.level)
        throw std::invalid_argument("membership: point depth " + std::to_string(x.depth()) +
                                    " below partition level " + std::to_string(p.level));
    const auto& res = x.residues[static_cast<std::size_t>(p.level - 1)];
    require_same_dim(res, n, "membership");
    require_same_dim(res, residue_class, "membership");
    for (int i = 0; i < res.dim(); ++i) {
        if (residue_class[i] < 0 || residue_class[i] >= p.modulus)
            throw std::invalid_argument("membership: residue class entry out of range");
        if (mod_nonneg(res[i] + n[i], p.modulus) != residue_class[i]) return false;
    }
    return true;
}

/// The factor map of the product extension: forget the fiber.
inline SystemPoint factor(const SystemPoint& x, const ExtensionSpec& ext) {
    ext.validate();
    SystemPoint y;
    y.residues = x.residues;
    return y;
}

}  // namespace qtiling

#endif  // QTILING_SYSTEM_HPP
