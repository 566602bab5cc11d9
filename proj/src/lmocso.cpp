#include "attnmoea/lmocso.hpp"

#include <algorithm>
#include <numeric>

namespace attnmoea {

void LmocsoParams::validate() const {
  if (d < 2) throw InvalidConfig("d must be at least 2");
  if (fe_budget < d) throw InvalidConfig("fe_budget must be at least d");
  if (pm > 1.0) throw InvalidConfig("pm must lie in [0, 1]");
}

bool lmocso_beats(const Individual& a, const Individual& b) {
  if (!a.rank || !b.rank) throw StateError("lmocso: swarm is not ranked");
  if (*a.rank != *b.rank) return *a.rank < *b.rank;
  return a.crowding.value_or(0.0) > b.crowding.value_or(0.0);
}

namespace {

/// Refreshes rank and crowding of every particle without truncating.
void score_swarm(std::vector<Particle>& swarm) {
  std::vector<Individual> members;
  members.reserve(swarm.size());
  for (auto& p : swarm) members.push_back(std::move(p.individual));
  select_survivors(members, members.size());
  for (std::size_t i = 0; i < swarm.size(); ++i) swarm[i].individual = std::move(members[i]);
}

}  // namespace

std::vector<Particle> lmocso_generation(std::vector<Particle> swarm, const LmocsoParams& params,
                                        const Problem& problem, Rng& rng, std::size_t& fe_count,
                                        std::size_t fe_remaining, TraceRecorder* recorder) {
  for (const auto& p : swarm) {
    if (!p.individual.evaluated()) throw StateError("lmocso: swarm has unevaluated particles");
  }
  score_swarm(swarm);
  const Bounds& bounds = problem.bounds();
  const std::size_t n = bounds.size();
  const double pm = params.pm < 0.0 ? 1.0 / static_cast<double>(n) : params.pm;

  std::vector<std::size_t> order(swarm.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  std::vector<Particle> learners;
  for (std::size_t j = 0; j + 1 < order.size(); j += 2) {
    if (learners.size() == fe_remaining) break;
    std::size_t winner = order[j];
    std::size_t loser = order[j + 1];
    if (!lmocso_beats(swarm[winner].individual, swarm[loser].individual)) std::swap(winner, loser);
    const Particle& w = swarm[winner];
    const Particle& l = swarm[loser];

    Particle next;
    next.velocity.resize(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      const double v = r1 * l.velocity[i] + r2 * (w.individual.x[i] - l.individual.x[i]);
      x[i] = bounds.clamp(i, l.individual.x[i] + v + r1 * (v - l.velocity[i]));
      next.velocity[i] = v;
    }
    next.individual = polynomial_mutation(Individual(std::move(x)), params.eta_m, pm, bounds, rng);
    learners.push_back(std::move(next));
  }

  for (auto& p : learners) evaluate(problem, p.individual, fe_count);
  if (recorder) {
    std::vector<Individual> seen;
    for (const auto& p : learners) seen.push_back(p.individual);
    recorder->observe(seen);
  }

  std::move(learners.begin(), learners.end(), std::back_inserter(swarm));
  std::vector<Individual> pool;
  pool.reserve(swarm.size());
  for (auto& p : swarm) pool.push_back(p.individual);
  const auto keep = select_survivors(pool, params.d);
  std::vector<Particle> next_swarm;
  next_swarm.reserve(params.d);
  for (std::size_t i : keep) {
    next_swarm.push_back(std::move(swarm[i]));
    next_swarm.back().individual.rank = pool[i].rank;
    next_swarm.back().individual.crowding = pool[i].crowding;
  }
  return next_swarm;
}

RunResult run_lmocso(const Problem& problem, const LmocsoParams& params, const IndicatorSetup& indicators, Rng& rng) {
  params.validate();
  TraceRecorder recorder(indicators, params.trace_every, params.archive);

  Population pop = init_population(problem.bounds(), params.d, rng);
  evaluate_all(problem, pop.members, pop.fe_count);
  recorder.observe(pop.members);
  pop = environmental_selection(std::move(pop), params.d);
  recorder.record(0, pop, true);

  std::vector<Particle> swarm;
  swarm.reserve(pop.size());
  for (auto& m : pop.members) swarm.push_back({std::move(m), std::vector<double>(problem.num_variables(), 0.0)});
  std::size_t fe_count = pop.fe_count;

  auto snapshot = [&] {
    Population view;
    view.fe_count = fe_count;
    for (const auto& p : swarm) view.members.push_back(p.individual);
    return view;
  };

  std::size_t generation = 0;
  while (fe_count < params.fe_budget) {
    swarm = lmocso_generation(std::move(swarm), params, problem, rng, fe_count, params.fe_budget - fe_count, &recorder);
    ++generation;
    recorder.record(generation, snapshot(), fe_count >= params.fe_budget);
  }

  RunResult result;
  result.fe_count = fe_count;
  result.trace = recorder.finish(snapshot());
  result.front = result.trace.final_front;
  return result;
}

}  // namespace attnmoea
