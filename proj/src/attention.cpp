#include "attnmoea/attention.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace attnmoea {

std::vector<double> softmax(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("softmax: no scores");
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> w(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp(scores[i] - peak);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

std::vector<double> scaled_dot_attention(std::span<const double> query, std::span<const std::vector<double>> keys,
                                         std::span<const std::vector<double>> values) {
  if (keys.empty()) throw std::invalid_argument("attention: no keys");
  if (keys.size() != values.size()) throw std::invalid_argument("attention: keys and values differ in count");
  std::vector<double> scores(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].size() != query.size()) throw std::invalid_argument("attention: key dimension mismatch");
    scores[i] = std::inner_product(query.begin(), query.end(), keys[i].begin(), 0.0);
  }
  const auto weights = softmax(scores);
  std::vector<double> out(values.front().size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != out.size()) throw std::invalid_argument("attention: value dimension mismatch");
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += weights[i] * values[i][j];
  }
  return out;
}

// ---------------------------------------------------------------------------

KeyMatrix::KeyMatrix(std::vector<std::size_t> group_of, std::size_t k) : group_of_(std::move(group_of)), k_(k) {
  for (std::size_t g : group_of_) {
    if (g >= k_) throw std::invalid_argument("key matrix: group index out of range");
  }
}

std::vector<std::vector<int>> KeyMatrix::dense() const {
  std::vector<std::vector<int>> m(rows(), std::vector<int>(k_, 0));
  for (std::size_t i = 0; i < rows(); ++i) m[i][group_of_[i]] = 1;
  return m;
}

std::vector<double> KeyMatrix::project(std::span<const double> x) const {
  if (x.size() != rows()) throw std::invalid_argument("key matrix: projection dimension mismatch");
  std::vector<double> p(k_, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) p[group_of_[i]] += x[i];
  return p;
}

std::vector<double> variance_vector(const Population& pop) {
  if (pop.size() < 2) throw std::invalid_argument("variance_vector: need at least two members");
  const std::size_t n = pop.members.front().x.size();
  std::vector<double> sum(n, 0.0);
  std::vector<double> sum_sq(n, 0.0);
  for (const auto& m : pop.members) {
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] += m.x[i];
      sum_sq[i] += m.x[i] * m.x[i];
    }
  }
  const double d = static_cast<double>(pop.size());
  std::vector<double> var(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = sum[i] / d;
    // Cancellation can leave a tiny negative residue.
    var[i] = std::max(0.0, sum_sq[i] / d - mean * mean);
  }
  return var;
}

KeyMatrix build_key_matrix(std::span<const double> variance, std::size_t k) {
  const std::size_t n = variance.size();
  if (k < 1 || k > n) throw InvalidConfig("key matrix: k must lie in [1, n]");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return variance[a] < variance[b]; });
  std::vector<std::size_t> group_of(n);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t pos = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t size = base + (j < extra ? 1 : 0);
    for (std::size_t c = 0; c < size; ++c) group_of[order[pos++]] = j;
  }
  return KeyMatrix(std::move(group_of), k);
}

const Individual& value_individual(const Population& pop) {
  std::vector<std::vector<double>> objs;
  objs.reserve(pop.size());
  for (const auto& m : pop.members) {
    if (!m.evaluated()) throw StateError("value_individual: member has not been evaluated");
    objs.push_back(m.f);
  }
  const auto front = std::move(nondominated_fronts(objs).front());
  std::vector<std::vector<double>> front_objs;
  for (std::size_t i : front) front_objs.push_back(objs[i]);
  const auto dist = crowding_distance(std::span<const std::vector<double>>(front_objs));

  std::size_t best = 0;
  for (std::size_t j = 1; j < front.size(); ++j) {
    if (dist[j] > dist[best]) {
      best = j;
    } else if (dist[j] == dist[best] && std::isinf(dist[j]) && front_objs[j][0] < front_objs[best][0]) {
      best = j;
    }
  }
  return pop.members[front[best]];
}

QuerySet compute_queries(std::span<const Individual> base, const Individual& value, const KeyMatrix& key,
                         double epsilon) {
  const auto pv = key.project(value.x);
  QuerySet out;
  out.base.assign(base.begin(), base.end());
  out.queries.reserve(base.size());
  for (const auto& ind : base) {
    const auto p = key.project(ind.x);
    std::vector<double> q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) q[j] = std::abs(pv[j]) > epsilon ? p[j] / pv[j] : 1.0;
    out.queries.push_back(std::move(q));
  }
  return out;
}

namespace {

Bounds query_box(const std::vector<std::vector<double>>& queries) {
  const std::size_t k = queries.front().size();
  std::vector<double> lo(queries.front());
  std::vector<double> hi(queries.front());
  for (const auto& q : queries) {
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = std::min(lo[j], q[j]);
      hi[j] = std::max(hi[j], q[j]);
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    double margin = 0.1 * (hi[j] - lo[j]);
    // All queries agree on this component: open a band around the common value.
    if (!(margin > 0.0)) margin = 0.1 * std::max(std::abs(lo[j]), 1.0);
    lo[j] -= margin;
    hi[j] += margin;
  }
  return Bounds(std::move(lo), std::move(hi));
}

}  // namespace

QuerySet optimize_queries(const QuerySet& queries, Rng& rng, const QueryVariationOptions& options) {
  if (queries.queries.empty()) throw std::invalid_argument("optimize_queries: empty query set");
  QuerySet out;
  out.base = queries.base;
  out.queries = queries.queries;
  const std::size_t k = out.queries.front().size();
  const double pm = options.pm < 0.0 ? 1.0 / static_cast<double>(k) : options.pm;

  for (std::size_t pass = 0; pass < options.passes; ++pass) {
    const Bounds box = query_box(out.queries);
    std::vector<std::size_t> order(out.queries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);

    std::vector<Individual> kids(out.queries.size());
    for (std::size_t j = 0; j + 1 < order.size(); j += 2) {
      Individual a(out.queries[order[j]]);
      Individual b(out.queries[order[j + 1]]);
      if (options.crossover) std::tie(a, b) = sbx_crossover(a, b, options.eta_c, box, rng);
      kids[order[j]] = std::move(a);
      kids[order[j + 1]] = std::move(b);
    }
    if (order.size() % 2 == 1) kids[order.back()] = Individual(out.queries[order.back()]);

    for (std::size_t i = 0; i < kids.size(); ++i) {
      out.queries[i] = polynomial_mutation(kids[i], options.eta_m, pm, box, rng).x;
    }
  }
  return out;
}

AttentionVector attention_vector(std::span<const double> query, const KeyMatrix& key) {
  if (query.size() != key.cols()) throw std::invalid_argument("attention_vector: query length differs from k");
  AttentionVector out;
  out.a.resize(key.rows());
  for (std::size_t i = 0; i < key.rows(); ++i) out.a[i] = query[key.group(i)];
  return out;
}

Individual reconstruct_offspring(const AttentionVector& a, const Individual& value, const Bounds& bounds) {
  if (a.a.size() != value.x.size() || a.a.size() != bounds.size()) {
    throw std::invalid_argument("reconstruct_offspring: dimension mismatch");
  }
  std::vector<double> x(a.a.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = bounds.clamp(i, a.a[i] * value.x[i]);
  return Individual(std::move(x));
}

// ---------------------------------------------------------------------------

void AttentionParams::validate(std::size_t n) const {
  if (k < 1 || k > n) throw InvalidConfig("k must lie in [1, n]");
  if (d < 2) throw InvalidConfig("d must be at least 2");
  if (g < 1 || g > d) throw InvalidConfig("g must lie in [1, d]");
  if (fe_budget < d) throw InvalidConfig("fe_budget must be at least d");
  if (!(epsilon > 0.0)) throw InvalidConfig("epsilon must be positive");
  if (query.passes < 1) throw InvalidConfig("query passes must be at least 1");
}

std::vector<Individual> attention_offspring(const Population& pop, const AttentionParams& params,
                                            const Bounds& bounds, Rng& rng) {
  // Stage A
  const KeyMatrix key = build_key_matrix(variance_vector(pop), params.k);
  const Individual& anchor = value_individual(pop);
  const std::size_t wanted = params.pure_attention ? pop.size() : params.g;

  std::vector<Individual> out;
  out.reserve(wanted);
  while (out.size() < wanted) {
    // Stage B
    std::vector<Individual> base;
    for (std::size_t i : rng.sample(pop.size(), params.g)) base.push_back(pop.members[i]);
    QuerySet queries = compute_queries(base, anchor, key, params.epsilon);
    // Stage C
    queries = optimize_queries(queries, rng, params.query);
    for (auto& q : queries.queries) {
      if (out.size() == wanted) break;
      if (params.force_unit_queries) std::fill(q.begin(), q.end(), 1.0);
      out.push_back(reconstruct_offspring(attention_vector(q, key), anchor, bounds));
    }
  }
  return out;
}

Population attention_generation(Population pop, const AttentionParams& params, const Problem& problem, Rng& rng,
                                TraceRecorder* recorder) {
  const std::size_t d = params.d;
  const Bounds& bounds = problem.bounds();
  std::vector<Individual> offspring = attention_offspring(pop, params, bounds, rng);
  if (!params.pure_attention && d > params.g) {
    auto conventional = make_offspring(pop.members, d - params.g, params.variation, bounds, rng);
    std::move(conventional.begin(), conventional.end(), std::back_inserter(offspring));
  }

  const std::size_t remaining = params.fe_budget > pop.fe_count ? params.fe_budget - pop.fe_count : 0;
  if (offspring.size() > remaining) offspring.resize(remaining);
  evaluate_all(problem, offspring, pop.fe_count);
  if (recorder) recorder->observe(offspring);

  std::move(offspring.begin(), offspring.end(), std::back_inserter(pop.members));
  return environmental_selection(std::move(pop), d);
}

RunResult run_attention_moea(const Problem& problem, const AttentionParams& params, const IndicatorSetup& indicators,
                             Rng& rng) {
  params.validate(problem.num_variables());
  TraceRecorder recorder(indicators, params.trace_every, params.archive);

  Population pop = init_population(problem.bounds(), params.d, rng);
  evaluate_all(problem, pop.members, pop.fe_count);
  recorder.observe(pop.members);
  pop = environmental_selection(std::move(pop), params.d);
  recorder.record(0, pop, true);

  std::size_t generation = 0;
  while (pop.fe_count < params.fe_budget) {
    pop = attention_generation(std::move(pop), params, problem, rng, &recorder);
    ++generation;
    recorder.record(generation, pop, pop.fe_count >= params.fe_budget);
  }

  RunResult result;
  result.fe_count = pop.fe_count;
  result.trace = recorder.finish(pop);
  result.front = result.trace.final_front;
  return result;
}

}  // namespace attnmoea
