#include "attnmoea/evo_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace attnmoea {

bool dominates(std::span<const double> a, std::span<const double> b) {
  bool strictly_better = false;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] > b[m]) return false;
    if (a[m] < b[m]) strictly_better = true;
  }
  return strictly_better;
}

Population init_population(const Bounds& bounds, std::size_t d, Rng& rng) {
  if (d < 2) throw InvalidConfig("population size must be at least 2");
  Population pop;
  pop.members.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> x(bounds.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(bounds.lower(i), bounds.upper(i));
    pop.members.emplace_back(std::move(x));
  }
  return pop;
}

Fronts nondominated_fronts(std::span<const std::vector<double>> objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  Fronts fronts;
  if (n == 0) return fronts;

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(objectives[p], objectives[q])) {
        dominated_by_me[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(objectives[q], objectives[p])) {
        dominated_by_me[q].push_back(p);
        ++domination_count[p];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated_by_me[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

namespace {

std::vector<std::vector<double>> objectives_of(std::span<const Individual> members) {
  std::vector<std::vector<double>> objs;
  objs.reserve(members.size());
  for (const auto& m : members) {
    if (!m.evaluated()) throw StateError("member has not been evaluated");
    objs.push_back(m.f);
  }
  return objs;
}

}  // namespace

Fronts fast_nondominated_sort(std::span<Individual> members) {
  const auto objs = objectives_of(members);
  Fronts fronts = nondominated_fronts(objs);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    for (std::size_t i : fronts[r]) members[i].rank = r;
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const std::vector<double>> front) {
  if (front.empty()) throw std::invalid_argument("crowding_distance: empty front");
  const std::size_t size = front.size();
  std::vector<double> dist(size, 0.0);
  if (size <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  const std::size_t num_obj = front[0].size();
  std::vector<std::size_t> order(size);
  for (std::size_t m = 0; m < num_obj; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    const double range = front[order.back()][m] - front[order.front()][m];
    if (range <= 0.0) continue;
    for (std::size_t j = 1; j + 1 < size; ++j) {
      const std::size_t i = order[j];
      if (std::isinf(dist[i])) continue;
      dist[i] += (front[order[j + 1]][m] - front[order[j - 1]][m]) / range;
    }
  }
  return dist;
}

std::vector<double> crowding_distance(std::span<const Individual> front) {
  const auto objs = objectives_of(front);
  return crowding_distance(std::span<const std::vector<double>>(objs));
}

std::pair<Individual, Individual> sbx_crossover(const Individual& a, const Individual& b, double eta_c,
                                                const Bounds& bounds, Rng& rng) {
  if (a.x.size() != b.x.size() || a.x.size() != bounds.size()) {
    throw std::invalid_argument("sbx_crossover: dimension mismatch");
  }
  Individual c1(a.x);
  Individual c2(b.x);
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    if (rng.uniform() > 0.5) continue;
    const double x1 = std::min(a.x[i], b.x[i]);
    const double x2 = std::max(a.x[i], b.x[i]);
    if (x2 - x1 <= 1e-14) continue;
    const double lo = bounds.lower(i);
    const double hi = bounds.upper(i);
    const double u = rng.uniform();

    auto spread = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta_c + 1.0));
      const double betaq = u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta_c + 1.0))
                                            : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta_c + 1.0));
      return betaq;
    };
    const double beta_lo = 1.0 + 2.0 * (x1 - lo) / (x2 - x1);
    const double beta_hi = 1.0 + 2.0 * (hi - x2) / (x2 - x1);
    double y1 = 0.5 * ((x1 + x2) - spread(beta_lo) * (x2 - x1));
    double y2 = 0.5 * ((x1 + x2) + spread(beta_hi) * (x2 - x1));
    y1 = bounds.clamp(i, y1);
    y2 = bounds.clamp(i, y2);
    if (rng.uniform() <= 0.5) std::swap(y1, y2);
    c1.x[i] = y1;
    c2.x[i] = y2;
  }
  return {std::move(c1), std::move(c2)};
}

Individual polynomial_mutation(const Individual& x, double eta_m, double pm, const Bounds& bounds, Rng& rng) {
  if (!(pm >= 0.0 && pm <= 1.0)) throw InvalidConfig("mutation probability must lie in [0, 1]");
  if (x.x.size() != bounds.size()) throw std::invalid_argument("polynomial_mutation: dimension mismatch");
  Individual y(x.x);
  if (pm == 0.0) return y;
  const double power = 1.0 / (eta_m + 1.0);
  for (std::size_t i = 0; i < y.x.size(); ++i) {
    if (rng.uniform() >= pm) continue;
    const double lo = bounds.lower(i);
    const double hi = bounds.upper(i);
    const double v = bounds.clamp(i, y.x[i]);
    const double delta1 = (v - lo) / (hi - lo);
    const double delta2 = (hi - v) / (hi - lo);
    const double u = rng.uniform();
    double deltaq = 0.0;
    if (u < 0.5) {
      const double xy = 1.0 - delta1;
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double xy = 1.0 - delta2;
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    y.x[i] = bounds.clamp(i, v + deltaq * (hi - lo));
  }
  return y;
}

std::vector<std::size_t> select_survivors(std::span<Individual> pool, std::size_t d) {
  if (pool.size() < d) throw std::invalid_argument("environmental_selection: pool smaller than target size");
  const Fronts fronts = fast_nondominated_sort(pool);
  std::vector<std::size_t> survivors;
  survivors.reserve(d);
  for (const auto& front : fronts) {
    if (survivors.size() == d) break;
    std::vector<std::vector<double>> objs;
    objs.reserve(front.size());
    for (std::size_t i : front) objs.push_back(pool[i].f);
    const auto dist = crowding_distance(std::span<const std::vector<double>>(objs));
    for (std::size_t j = 0; j < front.size(); ++j) pool[front[j]].crowding = dist[j];

    if (survivors.size() + front.size() <= d) {
      survivors.insert(survivors.end(), front.begin(), front.end());
      continue;
    }
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // front indices are ascending, so a stable sort breaks ties by member index.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    for (std::size_t j = 0; survivors.size() < d; ++j) survivors.push_back(front[order[j]]);
  }
  return survivors;
}

Population environmental_selection(Population pop, std::size_t d) {
  const auto keep = select_survivors(pop.members, d);
  Population out;
  out.fe_count = pop.fe_count;
  out.members.reserve(d);
  for (std::size_t i : keep) out.members.push_back(std::move(pop.members[i]));
  return out;
}

std::size_t binary_tournament(std::span<const Individual> members, Rng& rng) {
  const std::size_t a = rng.index(members.size());
  const std::size_t b = rng.index(members.size());
  const auto& ia = members[a];
  const auto& ib = members[b];
  if (!ia.rank || !ib.rank) throw StateError("binary_tournament: members are not ranked");
  if (*ia.rank != *ib.rank) return *ia.rank < *ib.rank ? a : b;
  const double ca = ia.crowding.value_or(0.0);
  const double cb = ib.crowding.value_or(0.0);
  if (ca != cb) return ca > cb ? a : b;
  return std::min(a, b);
}

std::vector<Individual> make_offspring(std::span<const Individual> members, std::size_t count,
                                       const VariationParams& params, const Bounds& bounds, Rng& rng) {
  std::vector<Individual> out;
  out.reserve(count + 1);
  const double pm = params.mutation_probability(bounds.size());
  while (out.size() < count) {
    const Individual& p1 = members[binary_tournament(members, rng)];
    const Individual& p2 = members[binary_tournament(members, rng)];
    std::pair<Individual, Individual> kids{Individual(p1.x), Individual(p2.x)};
    if (rng.uniform() < params.crossover_prob) kids = sbx_crossover(p1, p2, params.eta_c, bounds, rng);
    out.push_back(polynomial_mutation(kids.first, params.eta_m, pm, bounds, rng));
    if (out.size() < count) out.push_back(polynomial_mutation(kids.second, params.eta_m, pm, bounds, rng));
  }
  return out;
}

}  // namespace attnmoea
