#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "attnmoea/rng.hpp"
#include "attnmoea/types.hpp"

namespace attnmoea {

using Fronts = std::vector<std::vector<std::size_t>>;

/// Pareto dominance under minimization: a is no worse everywhere and strictly
/// better somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

/// d members sampled uniformly inside `bounds`; none evaluated.
/// Throws InvalidConfig when d < 2.
Population init_population(const Bounds& bounds, std::size_t d, Rng& rng);

/// Deb's fast non-dominated sort over objective vectors. Fronts partition the
/// input indices; within a front indices are ascending.
Fronts nondominated_fronts(std::span<const std::vector<double>> objectives);

/// Sorts `members` into fronts and writes each member's rank.
/// Throws StateError if any member is unevaluated.
Fronts fast_nondominated_sort(std::span<Individual> members);

/// Crowding distance of each point of one front, in input order. Boundary
/// points and every point of fronts with at most two members get +inf.
std::vector<double> crowding_distance(std::span<const std::vector<double>> front);
std::vector<double> crowding_distance(std::span<const Individual> front);

struct VariationParams {
  double eta_c = 20.0;
  double eta_m = 20.0;
  /// Per-variable mutation probability; negative selects 1/n.
  double pm = -1.0;
  /// Probability that a mating pair undergoes crossover at all.
  double crossover_prob = 1.0;

  double mutation_probability(std::size_t n) const {
    return pm < 0.0 ? 1.0 / static_cast<double>(n) : pm;
  }
};

/// Simulated binary crossover, each variable crossed with probability 0.5.
/// Children are clamped to `bounds` and unevaluated.
std::pair<Individual, Individual> sbx_crossover(const Individual& a, const Individual& b, double eta_c,
                                                const Bounds& bounds, Rng& rng);

/// Bounded polynomial mutation with per-variable probability pm.
/// Throws InvalidConfig when pm is outside [0, 1].
Individual polynomial_mutation(const Individual& x, double eta_m, double pm, const Bounds& bounds, Rng& rng);

/// Indices of the `d` survivors of `pool`: whole fronts in rank order, then the
/// overflowing front by descending crowding distance, ties to the lower index.
/// Survivors carry the rank and crowding computed on the pool.
std::vector<std::size_t> select_survivors(std::span<Individual> pool, std::size_t d);

/// Truncates `pop` to d members. fe_count is carried over unchanged.
/// Throws std::invalid_argument when pop.size() < d.
Population environmental_selection(Population pop, std::size_t d);

/// Binary tournament on (rank ascending, crowding descending). Requires rank and
/// crowding to be set, as they are after environmental_selection.
std::size_t binary_tournament(std::span<const Individual> members, Rng& rng);

/// `count` offspring by tournament mating, SBX and polynomial mutation.
std::vector<Individual> make_offspring(std::span<const Individual> members, std::size_t count,
                                       const VariationParams& params, const Bounds& bounds, Rng& rng);

}  // namespace attnmoea
