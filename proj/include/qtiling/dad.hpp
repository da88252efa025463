#ifndef QTILING_DAD_HPP
#define QTILING_DAD_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtiling/greedy.hpp"
#include "qtiling/lattice.hpp"
#include "qtiling/system.hpp"
#include "qtiling/tiling.hpp"

// The witness cover Omega_0, ..., Omega_{3^d-1}: Omega_i is the set of
// points whose shifted tiling C(x) + e_i has 0 in its domain. Chain
// components of the cover elements under box_N-steps stay inside a single
// tile, so their size is bounded by (2D+1)^d; the certificate checks both
// facts for every residue class and reports that bound as the uniform M.

namespace qtiling {

struct CoverId {
    int i = 0;
};

inline void validate_cover_id(CoverId id, int d) {
    if (id.i < 0 || id.i >= shift_count(d))
        throw std::invalid_argument("CoverId: index " + std::to_string(id.i) + " outside [0, " +
                                    std::to_string(shift_count(d)) + ")");
}

/// Memoizes the greedy claimed classes per residue tuple at the partition
/// level; C(x) depends on x only through that tuple.
class GreedyClassCache {
  public:
    const std::vector<LatticeVector>& classes(const OdometerSpec& spec, const SystemPoint& x,
                                              const GreedyParams& params) {
        if (!partition_) partition_ = separated_partition(spec, params.L);
        if (x.depth() < partition_->level)
            throw std::invalid_argument("GreedyClassCache: insufficient point depth");
        const auto& key = x.residues[static_cast<std::size_t>(partition_->level - 1)].coords;
        auto it = by_residue_.find(key);
        if (it == by_residue_.end())
            it = by_residue_.emplace(key, greedy_run(spec, x, params).classes()).first;
        return it->second;
    }

    const SeparatedPartition& partition(const OdometerSpec& spec, const GreedyParams& params) {
        if (!partition_) partition_ = separated_partition(spec, params.L);
        return *partition_;
    }

  private:
    std::optional<SeparatedPartition> partition_;
    std::map<std::vector<Coord>, std::vector<LatticeVector>> by_residue_;
};

/// x in Omega_i, i.e. 0 in Dom(C(x) + e_i), i.e. C(x) meets -e_i + box_D.
/// C(x) is a union of residue classes mod m, so the box intersection test
/// is exact on the torus: per axis, some representative of the class lands
/// within D of the box center iff the torus distance is at most D.
inline bool cover_membership(const OdometerSpec& spec, const SystemPoint& x, CoverId id,
                             const GreedyParams& params, GreedyClassCache* cache = nullptr) {
    validate_cover_id(id, spec.d);
    GreedyClassCache local;
    GreedyClassCache& store = cache ? *cache : local;
    const std::vector<LatticeVector>& classes = store.classes(spec, x, params);
    const Coord m = store.partition(spec, params).modulus;
    const LatticeVector shift = shift_vectors(params.E(), spec.d)[static_cast<std::size_t>(id.i)];
    LatticeVector target = LatticeVector::zero(spec.d);
    for (int j = 0; j < spec.d; ++j) target[j] = mod_nonneg(-shift[j], m);
    for (const auto& cls : classes)
        if (detail::torus_chebyshev(cls, target, m) <= params.D()) return true;
    return false;
}

struct ChainComponent {
    SystemPoint base_point;
    CoverId cover;
    PointSet positions;
    bool saturated = true;

    std::size_t size() const { return positions.size(); }
};

/// Power (2l+1)^d as unsigned, for bounds and caps.
inline std::uint64_t cube_count(Coord l, int d) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(2 * l + 1);
    return n;
}

/// Breadth-first saturation of {0} under steps from box_N that keep the
/// translated point inside Omega_i. Starts empty when x itself is outside.
/// Stops early at cap with saturated = false; by the domain-finiteness
/// bound that cannot happen for honest parameters and cap > (2D+1)^d.
inline ChainComponent chain_component(const OdometerSpec& spec, const SystemPoint& x, CoverId id,
                                      const GreedyParams& params, std::uint64_t cap = 0,
                                      GreedyClassCache* cache = nullptr) {
    validate_greedy_params(params, spec.d);
    if (params.N < 1) throw std::invalid_argument("chain_component: N >= 1 required");
    validate_cover_id(id, spec.d);
    const std::uint64_t bound = cube_count(params.D(), spec.d);
    if (cap == 0) cap = bound + 1;
    if (cap < bound + 1)
        throw std::invalid_argument("chain_component: cap below (2D+1)^d + 1");

    ChainComponent chain{x, id, {}, true};
    GreedyClassCache local;
    GreedyClassCache& store = cache ? *cache : local;
    if (!cover_membership(spec, x, id, params, &store)) return chain;

    const PointSet steps = cube_points(params.N, spec.d);
    chain.positions.push_back(LatticeVector::zero(spec.d));
    std::deque<LatticeVector> frontier{LatticeVector::zero(spec.d)};
    while (!frontier.empty()) {
        LatticeVector p = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& s : steps) {
            LatticeVector q = p + s;
            if (set_contains(chain.positions, q)) continue;
            if (!cover_membership(spec, act(x, q, spec), id, params, &store)) continue;
            if (chain.positions.size() >= cap) {
                chain.saturated = false;
                canonicalize(chain.positions);
                return chain;
            }
            chain.positions.insert(std::lower_bound(chain.positions.begin(), chain.positions.end(), q), q);
            frontier.push_back(q);
        }
    }
    return chain;
}

/// Extension membership factors through the quotient map: the fiber window
/// plays no role in where the tiles sit.
inline bool pullback_cover(const ExtensionSpec& ext, const SystemPoint& x, CoverId id,
                           const GreedyParams& params, GreedyClassCache* cache = nullptr) {
    if (!x.fiber) throw std::invalid_argument("pullback_cover: point carries no fiber window");
    return cover_membership(ext.base, factor(x, ext), id, params, cache);
}

/// Chain component computed on the extension itself: steps act on the full
/// point (fiber windows shift and shrink) while membership is read through
/// the pullback.
inline ChainComponent chain_component(const ExtensionSpec& ext, const SystemPoint& x, CoverId id,
                                      const GreedyParams& params, std::uint64_t cap = 0,
                                      GreedyClassCache* cache = nullptr) {
    validate_greedy_params(params, ext.base.d);
    if (params.N < 1) throw std::invalid_argument("chain_component: N >= 1 required");
    validate_cover_id(id, ext.base.d);
    const std::uint64_t bound = cube_count(params.D(), ext.base.d);
    if (cap == 0) cap = bound + 1;
    if (cap < bound + 1)
        throw std::invalid_argument("chain_component: cap below (2D+1)^d + 1");

    ChainComponent chain{x, id, {}, true};
    GreedyClassCache local;
    GreedyClassCache& store = cache ? *cache : local;
    if (!pullback_cover(ext, x, id, params, &store)) return chain;

    const PointSet steps = cube_points(params.N, ext.base.d);
    chain.positions.push_back(LatticeVector::zero(ext.base.d));
    std::deque<LatticeVector> frontier{LatticeVector::zero(ext.base.d)};
    while (!frontier.empty()) {
        LatticeVector p = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& s : steps) {
            LatticeVector q = p + s;
            if (set_contains(chain.positions, q)) continue;
            if (!pullback_cover(ext, act(x, q, ext), id, params, &store)) continue;
            if (chain.positions.size() >= cap) {
                chain.saturated = false;
                canonicalize(chain.positions);
                return chain;
            }
            chain.positions.insert(std::lower_bound(chain.positions.begin(), chain.positions.end(), q), q);
            frontier.push_back(q);
        }
    }
    return chain;
}

namespace detail {

/// Uniform draw from [0, bound) by rejection, so the stream is the same on
/// every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % bound);
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}

/// Residue tuple of lexicographic rank `rank` in [0, m)^d.
inline LatticeVector residue_at_rank(std::uint64_t rank, Coord m, int d) {
    LatticeVector res = LatticeVector::zero(d);
    for (int i = d - 1; i >= 0; --i) {
        res[i] = static_cast<Coord>(rank % static_cast<std::uint64_t>(m));
        rank /= static_cast<std::uint64_t>(m);
    }
    return res;
}

}  // namespace detail

struct CertifyOptions {
    std::uint64_t seed = 0;
    std::uint64_t fiber_samples = 100;  // extension runs only: total sampled points
    std::uint64_t chain_cap = 0;        // 0 = (2D+1)^d + 1
};

struct Certificate {
    int d = 0;
    GreedyParams params;
    std::vector<Coord> moduli;
    int fiber_alphabet = 0;  // 0 when the run is a bare odometer
    int partition_level = 0;
    Coord partition_modulus = 0;
    std::uint64_t partition_size = 0;
    std::uint64_t points_checked = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::uint64_t fiber_samples = 0;
    std::vector<std::uint64_t> cover_population;
    int colors_used = 0;
    std::uint64_t max_chain = 0;
    std::uint64_t chain_bound = 0;
    std::uint64_t uniform_bound = 0;  // the M of the extension lemma
    bool pass = false;
    std::vector<std::string> failures;

    std::string to_text() const {
        std::ostringstream out;
        out << "report: certify\n";
        out << "d: " << d << "\n";
        out << "N: " << params.N << "\n";
        out << "r: " << params.r << "\n";
        out << "L: " << params.L << "\n";
        out << "D: " << params.D() << "\n";
        out << "E: " << params.E() << "\n";
        out << "moduli: ";
        for (std::size_t i = 0; i < moduli.size(); ++i) out << (i ? "," : "") << moduli[i];
        out << "\n";
        out << "fiber_alphabet: " << fiber_alphabet << "\n";
        out << "partition_level: " << partition_level << "\n";
        out << "partition_modulus: " << partition_modulus << "\n";
        out << "partition_size: " << partition_size << "\n";
        out << "shift_count: " << shift_count(d) << "\n";
        out << "points_checked: " << points_checked << "\n";
        out << "exhaustive: " << (exhaustive ? "true" : "false") << "\n";
        out << "seed: " << seed << "\n";
        out << "fiber_samples: " << fiber_samples << "\n";
        for (std::size_t i = 0; i < cover_population.size(); ++i)
            out << "cover_population_" << i << ": " << cover_population[i] << "\n";
        out << "colors_used: " << colors_used << "\n";
        out << "max_chain: " << max_chain << "\n";
        out << "chain_bound: " << chain_bound << "\n";
        out << "uniform_bound_M: " << uniform_bound << "\n";
        out << "pass: " << (pass ? "true" : "false") << "\n";
        for (const auto& f : failures) out << "failure: " << f << "\n";
        return out.str();
    }
};

/// Exhaustive certificate over one odometer: every residue class at the
/// partition level is checked for cover membership, and every nonempty
/// chain component is saturated within the (2D+1)^d bound.
inline Certificate certify(const OdometerSpec& spec, const GreedyParams& params,
                           const CertifyOptions& options = {}) {
    spec.validate();
    validate_greedy_params(params, spec.d);
    if (params.N < 1) throw std::invalid_argument("certify: N >= 1 required");

    GreedyClassCache cache;
    const SeparatedPartition& partition = cache.partition(spec, params);
    const int covers = shift_count(spec.d);

    Certificate cert;
    cert.d = spec.d;
    cert.params = params;
    cert.moduli = spec.moduli;
    cert.partition_level = partition.level;
    cert.partition_modulus = partition.modulus;
    cert.partition_size = 1;
    for (int i = 0; i < spec.d; ++i) cert.partition_size *= static_cast<std::uint64_t>(partition.modulus);
    cert.exhaustive = true;
    cert.seed = options.seed;
    cert.fiber_samples = 0;
    cert.cover_population.assign(static_cast<std::size_t>(covers), 0);
    cert.chain_bound = cube_count(params.D(), spec.d);
    cert.uniform_bound = cert.chain_bound;

    for (std::uint64_t rank = 0; rank < cert.partition_size; ++rank) {
        const LatticeVector res = detail::residue_at_rank(rank, partition.modulus, spec.d);
        const SystemPoint x = point_at_level(spec, partition.level, res);
        bool covered = false;
        for (int i = 0; i < covers; ++i) {
            if (!cover_membership(spec, x, CoverId{i}, params, &cache)) continue;
            covered = true;
            ++cert.cover_population[static_cast<std::size_t>(i)];
            ChainComponent chain = chain_component(spec, x, CoverId{i}, params, options.chain_cap, &cache);
            if (!chain.saturated)
                cert.failures.push_back("chain cap reached at residue " + res.str() + " cover " +
                                        std::to_string(i));
            if (chain.size() > cert.chain_bound)
                cert.failures.push_back("chain size " + std::to_string(chain.size()) + " above bound at residue " +
                                        res.str() + " cover " + std::to_string(i));
            if (chain.size() > cert.max_chain) cert.max_chain = chain.size();
        }
        if (!covered) cert.failures.push_back("uncovered residue " + res.str());
        ++cert.points_checked;
    }
    for (int i = 0; i < covers; ++i)
        if (cert.cover_population[static_cast<std::size_t>(i)] > 0) ++cert.colors_used;
    cert.pass = cert.failures.empty();
    return cert;
}

/// Certificate over an extension: all residue classes, each visited by
/// seeded fiber-window samples (round-robin until the sample budget is
/// spent). Verifies on every sample that membership and chain components
/// agree with the factor point, then folds in the base checks.
inline Certificate certify(const ExtensionSpec& ext, const GreedyParams& params,
                           const CertifyOptions& options = {}) {
    ext.validate();
    validate_greedy_params(params, ext.base.d);
    if (params.N < 1) throw std::invalid_argument("certify: N >= 1 required");
    if (options.fiber_samples < 1) throw std::invalid_argument("certify: fiber_samples >= 1 required");

    GreedyClassCache cache;
    const SeparatedPartition& partition = cache.partition(ext.base, params);
    const int covers = shift_count(ext.base.d);
    const int d = ext.base.d;

    Certificate cert;
    cert.d = d;
    cert.params = params;
    cert.moduli = ext.base.moduli;
    cert.fiber_alphabet = ext.fiber_alphabet_size;
    cert.partition_level = partition.level;
    cert.partition_modulus = partition.modulus;
    cert.partition_size = 1;
    for (int i = 0; i < d; ++i) cert.partition_size *= static_cast<std::uint64_t>(partition.modulus);
    cert.exhaustive = false;
    cert.seed = options.seed;
    cert.fiber_samples = options.fiber_samples;
    cert.cover_population.assign(static_cast<std::size_t>(covers), 0);
    cert.chain_bound = cube_count(params.D(), d);
    cert.uniform_bound = cert.chain_bound;

    std::mt19937_64 rng(options.seed);
    const Coord fiber_radius = params.N + 1;
    for (std::uint64_t t = 0; t < options.fiber_samples; ++t) {
        const LatticeVector res = detail::residue_at_rank(t % cert.partition_size, partition.modulus, d);
        SystemPoint x = point_at_level(ext.base, partition.level, res);
        FiberWindow fiber;
        fiber.radius = fiber_radius;
        for (const auto& p : cube_points(fiber_radius, d))
            fiber.symbols[p] = static_cast<int>(
                detail::uniform_below(rng, static_cast<std::uint64_t>(ext.fiber_alphabet_size)));
        x.fiber = std::move(fiber);
        validate_point(ext.base, x);

        const SystemPoint base_x = factor(x, ext);
        bool covered = false;
        for (int i = 0; i < covers; ++i) {
            const bool member = pullback_cover(ext, x, CoverId{i}, params, &cache);
            if (member != cover_membership(ext.base, base_x, CoverId{i}, params, &cache)) {
                cert.failures.push_back("pullback mismatch at residue " + res.str() + " cover " +
                                        std::to_string(i));
                continue;
            }
            if (!member) continue;
            covered = true;
            ++cert.cover_population[static_cast<std::size_t>(i)];
            ChainComponent chain = chain_component(ext, x, CoverId{i}, params, options.chain_cap, &cache);
            ChainComponent base_chain =
                chain_component(ext.base, base_x, CoverId{i}, params, options.chain_cap, &cache);
            if (chain.positions != base_chain.positions)
                cert.failures.push_back("chain differs from factor chain at residue " + res.str() +
                                        " cover " + std::to_string(i));
            if (!chain.saturated)
                cert.failures.push_back("chain cap reached at residue " + res.str() + " cover " +
                                        std::to_string(i));
            if (chain.size() > cert.chain_bound)
                cert.failures.push_back("chain size " + std::to_string(chain.size()) + " above bound at residue " +
                                        res.str() + " cover " + std::to_string(i));
            if (chain.size() > cert.max_chain) cert.max_chain = chain.size();
        }
        if (!covered) cert.failures.push_back("uncovered residue " + res.str());
        ++cert.points_checked;
    }
    for (int i = 0; i < covers; ++i)
        if (cert.cover_population[static_cast<std::size_t>(i)] > 0) ++cert.colors_used;
    cert.pass = cert.failures.empty();
    return cert;
}

}  // namespace qtiling

#endif  // QTILING_DAD_HPP
