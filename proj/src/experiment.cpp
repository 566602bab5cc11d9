#include "attnmoea/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "attnmoea/io.hpp"

#ifndef ATTNMOEA_VERSION
#define ATTNMOEA_VERSION "dev"
#endif

namespace attnmoea {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(ProblemKind p) {
  switch (p) {
    case ProblemKind::kMcs: return "mcs";
    case ProblemKind::kZdt1: return "zdt1";
    case ProblemKind::kZdt2: return "zdt2";
  }
  return "?";
}

std::string to_string(Algorithm a) { return a == Algorithm::kAttention ? "attention" : "lmocso"; }

ProblemKind parse_problem(const std::string& name) {
  if (name == "mcs") return ProblemKind::kMcs;
  if (name == "zdt1") return ProblemKind::kZdt1;
  if (name == "zdt2") return ProblemKind::kZdt2;
  throw InvalidConfig("problem: unknown problem '" + name + "'");
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "attention") return Algorithm::kAttention;
  if (name == "lmocso") return Algorithm::kLmocso;
  throw InvalidConfig("algorithm: unknown algorithm '" + name + "'");
}

void ExperimentConfig::validate() const {
  auto positive = [](std::size_t v, const char* field) {
    if (v == 0) throw InvalidConfig(std::string(field) + ": must be positive");
  };
  positive(n, "n");
  positive(d, "d");
  positive(k, "k");
  positive(g, "g");
  positive(fe_budget, "fe_budget");
  positive(trace_every, "trace_every");
  positive(query_passes, "query_passes");
  positive(reference_points, "reference_points");
  if (d < 2) throw InvalidConfig("d: must be at least 2");
  if (k > n) throw InvalidConfig("k: must not exceed n");
  if (g > d) throw InvalidConfig("g: must not exceed d");
  if (fe_budget < d) throw InvalidConfig("fe_budget: must be at least d");
  if (seeds.empty()) throw InvalidConfig("seeds: at least one seed required");
  if (reference_points < 2) throw InvalidConfig("reference_points: must be at least 2");
  if (!(hv_ref > 1.0)) throw InvalidConfig("hv_ref: must exceed 1");
  if (problem != ProblemKind::kMcs && n < 2) throw InvalidConfig("n: zdt problems need at least 2 variables");
  if (problem == ProblemKind::kMcs) {
    McsConfig m = mcs;
    m.sensors = n;
    m.validate();
  }
}

ExperimentConfig ExperimentConfig::fig4() {
  ExperimentConfig c;
  c.problem = ProblemKind::kMcs;
  c.n = 300;
  c.d = 100;
  c.k = 5;
  c.g = 10;
  c.fe_budget = 50000;
  c.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  c.pure_attention = true;
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  return json{
      {"problem", to_string(c.problem)},
      {"algorithm", to_string(c.algorithm)},
      {"n", c.n},
      {"d", c.d},
      {"k", c.k},
      {"g", c.g},
      {"fe_budget", c.fe_budget},
      {"trace_every", c.trace_every},
      {"pure_attention", c.pure_attention},
      {"query_passes", c.query_passes},
      {"archive", c.archive},
      {"reference_points", c.reference_points},
      {"hv_ref", c.hv_ref},
      {"mcs",
       {{"field_m", c.mcs.field_m},
        {"altitude_m", c.mcs.altitude_m},
        {"ref_gain", c.mcs.ref_gain},
        {"path_loss_exp", c.mcs.path_loss_exp},
        {"bandwidth_hz", c.mcs.bandwidth_hz},
        {"noise_w", c.mcs.noise_w},
        {"data_bits", c.mcs.data_bits},
        {"p_lo", c.mcs.p_lo},
        {"p_hi", c.mcs.p_hi},
        {"delay", c.mcs.delay == DelayAggregate::kSum ? "sum" : "max"},
        {"instance_seed", c.mcs.instance_seed}}},
  };
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.problem = parse_problem(j.at("problem").get<std::string>());
  c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.d = j.at("d").get<std::size_t>();
  c.k = j.at("k").get<std::size_t>();
  c.g = j.at("g").get<std::size_t>();
  c.fe_budget = j.at("fe_budget").get<std::size_t>();
  c.trace_every = j.at("trace_every").get<std::size_t>();
  c.pure_attention = j.at("pure_attention").get<bool>();
  c.query_passes = j.at("query_passes").get<std::size_t>();
  c.archive = j.at("archive").get<bool>();
  c.reference_points = j.at("reference_points").get<std::size_t>();
  c.hv_ref = j.at("hv_ref").get<double>();
  const auto& m = j.at("mcs");
  c.mcs.field_m = m.at("field_m").get<double>();
  c.mcs.altitude_m = m.at("altitude_m").get<double>();
  c.mcs.ref_gain = m.at("ref_gain").get<double>();
  c.mcs.path_loss_exp = m.at("path_loss_exp").get<double>();
  c.mcs.bandwidth_hz = m.at("bandwidth_hz").get<double>();
  c.mcs.noise_w = m.at("noise_w").get<double>();
  c.mcs.data_bits = m.at("data_bits").get<double>();
  c.mcs.p_lo = m.at("p_lo").get<double>();
  c.mcs.p_hi = m.at("p_hi").get<double>();
  c.mcs.delay = m.at("delay").get<std::string>() == "max" ? DelayAggregate::kMax : DelayAggregate::kSum;
  c.mcs.instance_seed = m.at("instance_seed").get<std::uint64_t>();
  return c;
}

std::unique_ptr<Problem> make_problem(const ExperimentConfig& config) {
  switch (config.problem) {
    case ProblemKind::kZdt1: return std::make_unique<ZdtProblem>(ZdtVariant::kZdt1, config.n);
    case ProblemKind::kZdt2: return std::make_unique<ZdtProblem>(ZdtVariant::kZdt2, config.n);
    case ProblemKind::kMcs: break;
  }
  McsConfig m = config.mcs;
  m.sensors = config.n;
  return std::make_unique<McsProblem>(mcs_instance(m));
}

IndicatorSetup make_indicators(const ExperimentConfig& config, const Problem& problem, const fs::path& cache_dir) {
  if (const auto* mcs = dynamic_cast<const McsProblem*>(&problem)) {
    return IndicatorSetup::from_reference(
        cached_mcs_reference_front(mcs->instance(), config.reference_points, cache_dir), config.hv_ref);
  }
  const auto& zdt = dynamic_cast<const ZdtProblem&>(problem);
  return IndicatorSetup::from_reference(zdt_front(zdt.variant(), config.reference_points), config.hv_ref);
}

RunResult run_single(const ExperimentConfig& config, std::uint64_t seed, const Problem& problem,
                     const IndicatorSetup& indicators) {
  Rng rng(seed);
  if (config.algorithm == Algorithm::kLmocso) {
    LmocsoParams p;
    p.d = config.d;
    p.fe_budget = config.fe_budget;
    p.trace_every = config.trace_every;
    p.archive = config.archive;
    return run_lmocso(problem, p, indicators, rng);
  }
  AttentionParams p;
  p.k = config.k;
  p.g = config.g;
  p.d = config.d;
  p.fe_budget = config.fe_budget;
  p.pure_attention = config.pure_attention;
  p.query.passes = config.query_passes;
  p.trace_every = config.trace_every;
  p.archive = config.archive;
  return run_attention_moea(problem, p, indicators, rng);
}

std::string run_stem(const ExperimentConfig& config, std::uint64_t seed) {
  return to_string(config.algorithm) + "_" + to_string(config.problem) + "_seed" + std::to_string(seed);
}

void write_trace_csv(const fs::path& path, const RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "generation,fe,hv,igd\n";
  for (const auto& r : trace.rows) {
    out << r.generation << ',' << r.fe << ',' << format_double(r.hv) << ',' << format_double(r.igd) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<TraceRow> read_trace_csv(const fs::path& path) {
  std::vector<TraceRow> rows;
  for (const auto& cells : read_front_csv(path)) {
    if (cells.size() != 4) throw std::runtime_error("malformed trace row in " + path.string());
    rows.push_back({static_cast<std::size_t>(cells[0]), static_cast<std::size_t>(cells[1]), cells[2], cells[3]});
  }
  return rows;
}

namespace {

void write_front_file(const fs::path& path, const std::vector<Individual>& front, std::size_t n) {
  std::vector<std::string> columns{"f1", "f2"};
  for (std::size_t i = 1; i <= n; ++i) columns.push_back("x" + std::to_string(i));
  std::vector<Individual> sorted = front;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Individual& a, const Individual& b) { return a.f < b.f; });
  Front rows;
  rows.reserve(sorted.size());
  for (const auto& ind : sorted) {
    std::vector<double> row = ind.f;
    row.insert(row.end(), ind.x.begin(), ind.x.end());
    rows.push_back(std::move(row));
  }
  write_front_csv(path, rows, columns);
}

json normalization_json(const NormalizationContext& ctx) {
  return json{{"ideal", ctx.ideal}, {"nadir", ctx.nadir}, {"ref_point", ctx.ref_point}, {"space", "reference-front"}};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

bool cached_run_matches(const fs::path& manifest, const json& echo, std::uint64_t seed) {
  if (!fs::exists(manifest)) return false;
  try {
    std::ifstream in(manifest);
    const json m = json::parse(in);
    return m.at("config") == echo && m.at("seed").get<std::uint64_t>() == seed;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::vector<RunFiles> run_experiment(const ExperimentConfig& config, bool reuse) {
  config.validate();
  ensure_dir(config.out_dir);
  const auto problem = make_problem(config);
  std::optional<IndicatorSetup> indicators;
  const json echo = config_to_json(config);

  std::vector<RunFiles> out;
  for (std::uint64_t seed : config.seeds) {
    RunFiles files;
    files.seed = seed;
    const std::string stem = run_stem(config, seed);
    files.trace = config.out_dir / (stem + "_trace.csv");
    files.front = config.out_dir / (stem + "_front.csv");
    files.manifest = config.out_dir / (stem + "_manifest.json");

    if (reuse && cached_run_matches(files.manifest, echo, seed) && fs::exists(files.trace)) {
      const auto rows = read_trace_csv(files.trace);
      if (!rows.empty()) {
        files.final_row = rows.back();
        out.push_back(files);
        continue;
      }
    }
    if (!indicators) indicators = make_indicators(config, *problem, config.out_dir / "reference");

    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run_single(config, seed, *problem, *indicators);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_trace_csv(files.trace, result.trace);
    write_front_file(files.front, result.front, problem->num_variables());
    const json manifest{
        {"config", echo},
        {"seed", seed},
        {"wall_time_s", wall},
        {"fe_count", result.fe_count},
        {"normalization", normalization_json(result.trace.normalization)},
        {"code_version", ATTNMOEA_VERSION},
        {"trace_csv", files.trace.filename().string()},
        {"front_csv", files.front.filename().string()},
    };
    std::ofstream(files.manifest) << manifest.dump(2) << '\n';
    files.final_row = result.trace.rows.back();
    out.push_back(files);
  }
  return out;
}

std::pair<ExperimentConfig, std::uint64_t> load_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error("cannot read manifest " + manifest.string());
  const json m = json::parse(in);
  ExperimentConfig config = config_from_json(m.at("config"));
  const auto seed = m.at("seed").get<std::uint64_t>();
  config.seeds = {seed};
  config.out_dir = manifest.parent_path().empty() ? fs::path(".") : manifest.parent_path();
  return {config, seed};
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ComparisonReport compare(const ExperimentConfig& a, const ExperimentConfig& b, const fs::path& report_dir) {
  if (a.problem != b.problem) throw InvalidConfig("problem: compared configs use different problems");
  if (a.n != b.n) throw InvalidConfig("n: compared configs use different problem sizes");
  if (a.seeds != b.seeds) throw InvalidConfig("seeds: compared configs use different seed sets");
  if (a.fe_budget != b.fe_budget) throw InvalidConfig("fe_budget: compared configs use different budgets");

  const auto runs_a = run_experiment(a, true);
  const auto runs_b = run_experiment(b, true);

  ComparisonReport report;
  std::vector<double> hv_a, hv_b, igd_a, igd_b;
  for (std::size_t i = 0; i < runs_a.size(); ++i) {
    ComparisonRow row{runs_a[i].seed, runs_a[i].final_row.hv, runs_a[i].final_row.igd, runs_b[i].final_row.hv,
                      runs_b[i].final_row.igd};
    hv_a.push_back(row.hv_a);
    hv_b.push_back(row.hv_b);
    igd_a.push_back(row.igd_a);
    igd_b.push_back(row.igd_b);
    if (row.hv_a > row.hv_b) ++report.hv_wins_a;
    if (row.igd_a < row.igd_b) ++report.igd_wins_a;
    report.rows.push_back(row);
  }
  report.median_hv_a = median(hv_a);
  report.median_hv_b = median(hv_b);
  report.median_igd_a = median(igd_a);
  report.median_igd_b = median(igd_b);
  report.a_not_worse = report.median_hv_a >= report.median_hv_b && report.median_igd_a <= report.median_igd_b;

  ensure_dir(report_dir);
  {
    std::ofstream out(report_dir / "comparison.csv", std::ios::binary);
    out << "seed,hv_a,igd_a,hv_b,igd_b\n";
    for (const auto& r : report.rows) {
      out << r.seed << ',' << format_double(r.hv_a) << ',' << format_double(r.igd_a) << ','
          << format_double(r.hv_b) << ',' << format_double(r.igd_b) << '\n';
    }
  }
  {
    std::ofstream out(report_dir / "comparison_summary.csv", std::ios::binary);
    out << "algorithm_a,algorithm_b,median_hv_a,median_hv_b,median_igd_a,median_igd_b,hv_wins_a,igd_wins_a,"
           "seeds,a_not_worse\n";
    out << to_string(a.algorithm) << ',' << to_string(b.algorithm) << ',' << format_double(report.median_hv_a) << ','
        << format_double(report.median_hv_b) << ',' << format_double(report.median_igd_a) << ','
        << format_double(report.median_igd_b) << ',' << report.hv_wins_a << ',' << report.igd_wins_a << ','
        << report.rows.size() << ',' << (report.a_not_worse ? 1 : 0) << '\n';
  }
  return report;
}

}  // namespace attnmoea
