#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "attnmoea/attention.hpp"
#include "attnmoea/lmocso.hpp"
#include "attnmoea/problems.hpp"

namespace attnmoea {

enum class ProblemKind { kMcs, kZdt1, kZdt2 };
enum class Algorithm { kAttention, kLmocso };

std::string to_string(ProblemKind p);
std::string to_string(Algorithm a);
/// Throw InvalidConfig on unknown names.
ProblemKind parse_problem(const std::string& name);
Algorithm parse_algorithm(const std::string& name);

/// Everything that determines a run except the seed and the output location.
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::kMcs;
  Algorithm algorithm = Algorithm::kAttention;
  std::size_t n = 300;
  std::size_t d = 100;
  std::size_t k = 5;
  std::size_t g = 10;
  std::size_t fe_budget = 50000;
  std::vector<std::uint64_t> seeds{1};
  std::size_t trace_every = 1;
  bool pure_attention = false;
  std::size_t query_passes = 1;
  bool archive = false;
  /// Scalarization weights (mcs) or analytic samples (zdt) of the reference front.
  std::size_t reference_points = 200;
  double hv_ref = 1.1;
  /// Physical scenario; `sensors` is overwritten by n.
  McsConfig mcs;
  std::filesystem::path out_dir = "results";

  /// Throws InvalidConfig whose message starts with the offending field name.
  void validate() const;

  /// mcs, n=300, d=100, 50,000 FE, k=5, g=10, seeds 1..10, pure attention.
  static ExperimentConfig fig4();
};

/// Config echo without seeds and out_dir; identical echoes plus a seed pin down a run.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

std::unique_ptr<Problem> make_problem(const ExperimentConfig& config);

/// Reference front and normalization for the configured problem. MCS fronts are
/// cached under `cache_dir` keyed by instance hash.
IndicatorSetup make_indicators(const ExperimentConfig& config, const Problem& problem,
                               const std::filesystem::path& cache_dir);

/// One optimizer run with the configured algorithm.
RunResult run_single(const ExperimentConfig& config, std::uint64_t seed, const Problem& problem,
                     const IndicatorSetup& indicators);

struct RunFiles {
  std::uint64_t seed = 0;
  std::filesystem::path trace;
  std::filesystem::path front;
  std::filesystem::path manifest;
  TraceRow final_row;
};

/// File stem shared by a run's outputs: <algorithm>_<problem>_seed<seed>.
std::string run_stem(const ExperimentConfig& config, std::uint64_t seed);

/// Runs every seed and writes trace CSV (generation,fe,hv,igd), front CSV
/// (f1,f2,x1..xn) and manifest JSON per seed. When `reuse` is set, a seed whose
/// manifest already echoes this config is loaded instead of rerun.
std::vector<RunFiles> run_experiment(const ExperimentConfig& config, bool reuse = false);

/// Rebuilds config and seed from a manifest written by run_experiment.
std::pair<ExperimentConfig, std::uint64_t> load_manifest(const std::filesystem::path& manifest);

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

struct ComparisonRow {
  std::uint64_t seed = 0;
  double hv_a = 0.0;
  double igd_a = 0.0;
  double hv_b = 0.0;
  double igd_b = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double median_hv_a = 0.0;
  double median_hv_b = 0.0;
  double median_igd_a = 0.0;
  double median_igd_b = 0.0;
  std::size_t hv_wins_a = 0;
  std::size_t igd_wins_a = 0;
  /// median HV(a) >= median HV(b) and median IGD(a) <= median IGD(b).
  bool a_not_worse = false;
};

/// Head-to-head over the shared seed set. Both configs must agree on problem,
/// problem size, seeds and budget (InvalidConfig otherwise). Writes
/// comparison.csv (seed,hv_a,igd_a,hv_b,igd_b) into `report_dir`.
ComparisonReport compare(const ExperimentConfig& a, const ExperimentConfig& b,
                         const std::filesystem::path& report_dir);

double median(std::vector<double> values);

}  // namespace attnmoea
