// Command-line driver: run, compare, validate, front-oracle.
//
// Exit codes: 0 success (compare: a not worse than b), 1 compare verdict
// against a or failed validation suite, 2 usage/config/I-O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "attnmoea/experiment.hpp"
#include "attnmoea/io.hpp"
#include "attnmoea/validate.hpp"

namespace fs = std::filesystem;
using namespace attnmoea;

namespace {

struct Overrides {
  std::optional<std::string> preset;
  std::optional<std::string> problem;
  std::optional<std::string> algorithm;
  std::optional<std::size_t> n, d, k, g, fe_budget, trace_every, query_passes, reference_points;
  std::vector<std::uint64_t> seeds;
  std::optional<bool> pure_attention, archive;
  std::optional<double> hv_ref;
  std::optional<std::string> out;
  // scenario
  std::optional<double> field_m, altitude_m, ref_gain, path_loss_exp, bandwidth_hz, noise_w, data_bits, p_lo, p_hi;
  std::optional<std::string> delay;
  std::optional<std::uint64_t> instance_seed;

  void attach(CLI::App& app) {
    app.add_option("--preset", preset, "Named preset applied before other settings")->check(CLI::IsMember({"fig4"}));
    app.add_option("--problem", problem, "mcs | zdt1 | zdt2");
    app.add_option("--algorithm", algorithm, "attention | lmocso");
    app.add_option("--n", n, "Decision variables (sensors for mcs)");
    app.add_option("--d", d, "Population size");
    app.add_option("--k", k, "Query dimension (number of variable groups)");
    app.add_option("--g", g, "Sampled solutions per query round");
    app.add_option("--fe-budget,--fe_budget", fe_budget, "Function-evaluation budget");
    app.add_option("--seed,--seeds", seeds, "Run seed(s)");
    app.add_option("--trace-every,--trace_every", trace_every, "Generations between trace rows");
    app.add_option("--pure-attention,--pure_attention", pure_attention, "All offspring from the attention pipeline");
    app.add_option("--query-passes,--query_passes", query_passes, "Query variation passes per generation");
    app.add_option("--archive", archive, "Indicators over a cumulative non-dominated archive");
    app.add_option("--reference-points,--reference_points", reference_points, "Reference-front resolution");
    app.add_option("--hv-ref,--hv_ref", hv_ref, "Normalized hypervolume reference coordinate");
    app.add_option("--out,--out_dir", out, "Output directory");
    app.add_option("--field-m,--field_m", field_m);
    app.add_option("--altitude-m,--altitude_m", altitude_m);
    app.add_option("--ref-gain,--ref_gain", ref_gain);
    app.add_option("--path-loss-exp,--path_loss_exp", path_loss_exp);
    app.add_option("--bandwidth-hz,--bandwidth_hz", bandwidth_hz);
    app.add_option("--noise-w,--noise_w", noise_w);
    app.add_option("--data-bits,--data_bits", data_bits);
    app.add_option("--p-lo,--p_lo", p_lo);
    app.add_option("--p-hi,--p_hi", p_hi);
    app.add_option("--delay", delay, "sum | max")->check(CLI::IsMember({"sum", "max"}));
    app.add_option("--instance-seed,--instance_seed", instance_seed, "Seed of the sensor layout");
  }

  ExperimentConfig build() const {
    ExperimentConfig c = preset ? ExperimentConfig::fig4() : ExperimentConfig{};
    if (problem) c.problem = parse_problem(*problem);
    if (algorithm) c.algorithm = parse_algorithm(*algorithm);
    auto set = [](auto& field, const auto& value) {
      if (value) field = *value;
    };
    set(c.n, n);
    set(c.d, d);
    set(c.k, k);
    set(c.g, g);
    set(c.fe_budget, fe_budget);
    set(c.trace_every, trace_every);
    set(c.query_passes, query_passes);
    set(c.reference_points, reference_points);
    set(c.pure_attention, pure_attention);
    set(c.archive, archive);
    set(c.hv_ref, hv_ref);
    if (!seeds.empty()) c.seeds = seeds;
    if (out) c.out_dir = *out;
    set(c.mcs.field_m, field_m);
    set(c.mcs.altitude_m, altitude_m);
    set(c.mcs.ref_gain, ref_gain);
    set(c.mcs.path_loss_exp, path_loss_exp);
    set(c.mcs.bandwidth_hz, bandwidth_hz);
    set(c.mcs.noise_w, noise_w);
    set(c.mcs.data_bits, data_bits);
    set(c.mcs.p_lo, p_lo);
    set(c.mcs.p_hi, p_hi);
    set(c.mcs.instance_seed, instance_seed);
    if (delay) c.mcs.delay = *delay == "max" ? DelayAggregate::kMax : DelayAggregate::kSum;
    return c;
  }
};

int cmd_run(const Overrides& ov, const std::optional<std::string>& manifest) {
  ExperimentConfig config = ov.build();
  if (manifest) {
    auto [from_manifest, seed] = load_manifest(*manifest);
    config = from_manifest;
    if (ov.out) config.out_dir = *ov.out;
  }
  const auto runs = run_experiment(config);
  for (const auto& r : runs) {
    std::printf("seed %llu  fe %zu  hv %.6f  igd %.6f  -> %s\n", static_cast<unsigned long long>(r.seed),
                r.final_row.fe, r.final_row.hv, r.final_row.igd, r.trace.string().c_str());
  }
  return 0;
}

int cmd_compare(const Overrides& ov, const std::string& algo_a, const std::string& algo_b) {
  ExperimentConfig a = ov.build();
  ExperimentConfig b = a;
  a.algorithm = parse_algorithm(algo_a);
  b.algorithm = parse_algorithm(algo_b);
  const fs::path root = a.out_dir;
  a.out_dir = root / "a";
  b.out_dir = root / "b";
  const auto report = compare(a, b, root);
  std::printf("%-8s %-12s %-12s %-12s %-12s\n", "seed", "hv_a", "igd_a", "hv_b", "igd_b");
  for (const auto& r : report.rows) {
    std::printf("%-8llu %-12.6f %-12.6f %-12.6f %-12.6f\n", static_cast<unsigned long long>(r.seed), r.hv_a, r.igd_a,
                r.hv_b, r.igd_b);
  }
  std::printf("median   %-12.6f %-12.6f %-12.6f %-12.6f\n", report.median_hv_a, report.median_igd_a,
              report.median_hv_b, report.median_igd_b);
  std::printf("wins(a)  hv %zu/%zu  igd %zu/%zu\n", report.hv_wins_a, report.rows.size(), report.igd_wins_a,
              report.rows.size());
  std::printf("verdict: %s %s %s\n", algo_a.c_str(), report.a_not_worse ? "is not worse than" : "is NOT better than",
              algo_b.c_str());
  return report.a_not_worse ? 0 : 1;
}

int cmd_validate(bool corrupt_hv, std::size_t hv_samples) {
  ValidateOptions options;
  options.hv_samples = hv_samples;
  if (corrupt_hv) {
    options.hv = [](const Front& f, const NormalizationContext& ctx) { return 1.05 * hv_2d(f, ctx) + 0.02; };
  }
  bool all = true;
  for (const auto& s : run_validation(options)) {
    std::printf("[%s] %-26s %s\n", s.passed ? "PASS" : "FAIL", s.name.c_str(), s.detail.c_str());
    all = all && s.passed;
  }
  return all ? 0 : 1;
}

int cmd_front_oracle(const Overrides& ov, const std::optional<std::string>& file) {
  ExperimentConfig config = ov.build();
  config.problem = ProblemKind::kMcs;
  config.validate();
  const auto problem = make_problem(config);
  const auto& inst = dynamic_cast<const McsProblem&>(*problem).instance();
  const Front front = mcs_reference_front(inst, config.reference_points);
  fs::path path = file ? fs::path(*file) : config.out_dir / "mcs_reference_front.csv";
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_front_csv(path, front, {"delay_s", "energy_j"});
  std::printf("%zu reference points (instance %016llx) -> %s\n", front.size(),
              static_cast<unsigned long long>(inst.hash()), path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attention-guided large-scale multi-objective optimization harness"};
  app.set_config("--config", "", "Key=value config file; command-line flags override its keys");
  app.require_subcommand(1);
  app.fallthrough();

  Overrides ov;
  ov.attach(app);

  auto* run = app.add_subcommand("run", "Run one optimizer per seed and write trace/front/manifest files");
  std::optional<std::string> manifest;
  run->add_option("--manifest", manifest, "Re-run exactly the run described by a manifest");

  auto* cmp = app.add_subcommand("compare", "Head-to-head comparison over the shared seed set");
  std::string algo_a = "attention";
  std::string algo_b = "lmocso";
  cmp->add_option("--algo-a", algo_a, "First algorithm");
  cmp->add_option("--algo-b", algo_b, "Second algorithm");

  auto* val = app.add_subcommand("validate", "Run the oracle suites");
  bool corrupt_hv = false;
  std::size_t hv_samples = 1'000'000;
  val->add_flag("--corrupt-hv", corrupt_hv, "Swap in a broken hypervolume (detector check)")->group("");
  val->add_option("--hv-samples", hv_samples, "Monte Carlo samples per front");

  auto* oracle = app.add_subcommand("front-oracle", "Write the MCS scalarization reference front");
  std::optional<std::string> front_file;
  oracle->add_option("--file", front_file, "Output CSV path (default <out>/mcs_reference_front.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(ov, manifest);
    if (cmp->parsed()) return cmd_compare(ov, algo_a, algo_b);
    if (val->parsed()) return cmd_validate(corrupt_hv, hv_samples);
    if (oracle->parsed()) return cmd_front_oracle(ov, front_file);
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
