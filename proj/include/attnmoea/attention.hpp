#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "attnmoea/evo_core.hpp"
#include "attnmoea/rng.hpp"
#include "attnmoea/trace.hpp"
#include "attnmoea/types.hpp"

namespace attnmoea {

/// Textbook single-query attention: dot-product scores against each key,
/// softmax weights, weighted sum of the values.
std::vector<double> scaled_dot_attention(std::span<const double> query, std::span<const std::vector<double>> keys,
                                         std::span<const std::vector<double>> values);

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> scores);

// ---------------------------------------------------------------------------
// Attention-guided variation in decision space.
//
// Stage A groups decision variables by population variance (the key matrix),
// stage B expresses sampled solutions as per-group ratios against an anchor
// solution (the queries), and stage C evolves those ratios and maps them back
// to full-dimensional offspring by rescaling the anchor group by group.

/// n x k one-hot assignment of decision variables to groups. Stored as the
/// group index of each variable.
class KeyMatrix {
 public:
  KeyMatrix(std::vector<std::size_t> group_of, std::size_t k);

  std::size_t rows() const { return group_of_.size(); }
  std::size_t cols() const { return k_; }
  std::size_t group(std::size_t variable) const { return group_of_[variable]; }
  /// Dense entry: 1 iff `variable` belongs to group `col`.
  int at(std::size_t variable, std::size_t col) const { return group_of_[variable] == col ? 1 : 0; }
  std::vector<std::vector<int>> dense() const;

  /// Row vector times the key matrix: per-group sums of x.
  std::vector<double> project(std::span<const double> x) const;

 private:
  std::vector<std::size_t> group_of_;
  std::size_t k_;
};

struct QuerySet {
  std::vector<std::vector<double>> queries;
  std::vector<Individual> base;
};

/// n-dimensional per-variable scaling derived from one query.
struct AttentionVector {
  std::vector<double> a;
};

/// Population variance (denominator d) of every decision variable.
/// Throws std::invalid_argument for fewer than two members.
std::vector<double> variance_vector(const Population& pop);

/// Ascending-variance order (ties by index) split into k contiguous groups whose
/// sizes differ by at most one; larger groups come first.
/// Throws InvalidConfig unless 1 <= k <= n.
KeyMatrix build_key_matrix(std::span<const double> variance, std::size_t k);

/// First-front member with the largest crowding distance. Ties among infinite
/// distances go to the smaller first objective, then the lower index.
const Individual& value_individual(const Population& pop);

/// query[j] = (x K)[j] / (v K)[j], or 1 when |(v K)[j]| <= epsilon.
QuerySet compute_queries(std::span<const Individual> base, const Individual& value, const KeyMatrix& key,
                         double epsilon);

/// Test switches for the query-space variation pass.
struct QueryVariationOptions {
  bool crossover = true;
  /// Per-component mutation probability; negative selects 1/k.
  double pm = -1.0;
  double eta_c = 20.0;
  double eta_m = 20.0;
  /// Number of successive variation passes applied without evaluation.
  std::size_t passes = 1;
};

/// Variation of the queries inside their own bounding box widened by 10% on
/// each side: random pairing, SBX, then polynomial mutation. Spends no
/// evaluations. `base` is carried over unchanged.
QuerySet optimize_queries(const QuerySet& queries, Rng& rng, const QueryVariationOptions& options = {});

/// a[i] = q[group(i)]. Throws std::invalid_argument if len(q) != k.
AttentionVector attention_vector(std::span<const double> query, const KeyMatrix& key);

/// Offspring x[i] = clamp(a[i] * v[i]). Unevaluated.
Individual reconstruct_offspring(const AttentionVector& a, const Individual& value, const Bounds& bounds);

struct AttentionParams {
  std::size_t k = 5;
  std::size_t g = 10;
  std::size_t d = 100;
  std::size_t fe_budget = 50000;
  double epsilon = 1e-12;
  /// Every offspring comes from the attention pipeline instead of g of them.
  bool pure_attention = false;
  QueryVariationOptions query;
  VariationParams variation;
  /// Replaces every evolved query with all-ones (pipeline identity check).
  bool force_unit_queries = false;
  std::size_t trace_every = 1;
  bool archive = false;

  /// Throws InvalidConfig naming the violated constraint for an n-variable problem.
  void validate(std::size_t n) const;
};

/// Attention offspring for one generation: stages A, B and C on `pop`.
std::vector<Individual> attention_offspring(const Population& pop, const AttentionParams& params,
                                            const Bounds& bounds, Rng& rng);

/// One generation: attention offspring plus d - g conventional offspring,
/// evaluated up to the remaining budget, merged with `pop` and truncated to d.
Population attention_generation(Population pop, const AttentionParams& params, const Problem& problem, Rng& rng,
                                TraceRecorder* recorder = nullptr);

struct RunResult {
  std::vector<Individual> front;
  RunTrace trace;
  std::size_t fe_count = 0;
};

RunResult run_attention_moea(const Problem& problem, const AttentionParams& params, const IndicatorSetup& indicators,
                             Rng& rng);

}  // namespace attnmoea
