#pragma once

#include <cstddef>
#include <vector>

#include "attnmoea/attention.hpp"
#include "attnmoea/evo_core.hpp"
#include "attnmoea/trace.hpp"

namespace attnmoea {

struct Particle {
  Individual individual;
  std::vector<double> velocity;
};

struct LmocsoParams {
  std::size_t d = 100;
  std::size_t fe_budget = 50000;
  double eta_m = 20.0;
  /// Negative selects 1/n.
  double pm = -1.0;
  std::size_t trace_every = 1;
  bool archive = false;

  void validate() const;
};

/// Competition score: lower rank wins, then larger crowding distance. Returns
/// true when `a` beats `b`.
bool lmocso_beats(const Individual& a, const Individual& b);

/// One competitive swarm generation. Random disjoint pairs compete; each loser
/// learns from its winner through the two-phase velocity/position update and is
/// mutated and re-evaluated (up to `fe_remaining` evaluations). The swarm plus
/// updated losers is truncated back to d by environmental selection. With an
/// odd swarm one particle sits out.
std::vector<Particle> lmocso_generation(std::vector<Particle> swarm, const LmocsoParams& params,
                                        const Problem& problem, Rng& rng, std::size_t& fe_count,
                                        std::size_t fe_remaining, TraceRecorder* recorder = nullptr);

RunResult run_lmocso(const Problem& problem, const LmocsoParams& params, const IndicatorSetup& indicators, Rng& rng);

}  // namespace attnmoea
