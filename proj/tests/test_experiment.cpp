#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "attnmoea/experiment.hpp"
#include "attnmoea/validate.hpp"

using namespace attnmoea;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("attnmoea_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_zdt() {
  ExperimentConfig c;
  c.problem = ProblemKind::kZdt1;
  c.n = 8;
  c.d = 12;
  c.k = 3;
  c.g = 4;
  c.fe_budget = 300;
  c.reference_points = 50;
  return c;
}

}  // namespace

TEST_CASE("config validation names the field") {
  ExperimentConfig c = small_zdt();
  c.k = 9;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("k:"), InvalidConfig);
  c = small_zdt();
  c.seeds.clear();
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("seeds:"), InvalidConfig);
  c = small_zdt();
  c.g = 13;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("g:"), InvalidConfig);
  CHECK_THROWS_AS(parse_problem("dtlz9"), InvalidConfig);
}

TEST_CASE("config json round-trip") {
  ExperimentConfig c = ExperimentConfig::fig4();
  c.mcs.delay = DelayAggregate::kMax;
  c.mcs.noise_w = 3e-14;
  const auto j = config_to_json(c);
  CHECK(config_to_json(config_from_json(j)) == j);
}

TEST_CASE("run fans out per seed and replays byte-identically") {
  ExperimentConfig c = small_zdt();
  c.seeds = {1, 2, 3};
  c.out_dir = scratch_dir("fanout");
  const auto runs = run_experiment(c);
  REQUIRE(runs.size() == 3);
  std::size_t traces = 0, fronts = 0, manifests = 0;
  for (const auto& e : fs::directory_iterator(c.out_dir)) {
    const auto name = e.path().filename().string();
    traces += name.ends_with("_trace.csv");
    fronts += name.ends_with("_front.csv");
    manifests += name.ends_with("_manifest.json");
  }
  CHECK(traces == 3);
  CHECK(fronts == 3);
  CHECK(manifests == 3);
  CHECK(slurp(runs[0].trace).starts_with("generation,fe,hv,igd\n"));
  CHECK(slurp(runs[0].front).starts_with("f1,f2,x1,x2,"));

  auto [replay, seed] = load_manifest(runs[1].manifest);
  CHECK(seed == 2);
  replay.out_dir = scratch_dir("fanout_replay");
  const auto again = run_experiment(replay);
  CHECK(slurp(again[0].trace) == slurp(runs[1].trace));
  CHECK(slurp(again[0].front) == slurp(runs[1].front));

  const auto rows = read_trace_csv(runs[0].trace);
  CHECK(rows.back().fe == 300);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].fe > rows[i - 1].fe);
  fs::remove_all(c.out_dir);
  fs::remove_all(replay.out_dir);
}

TEST_CASE("unwritable output directory is an I/O error naming the path") {
  ExperimentConfig c = small_zdt();
  const auto blocker = scratch_dir("blocker");
  std::ofstream(blocker.string()) << "file, not a directory";
  c.out_dir = blocker / "sub";
  CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains(blocker.string().c_str()), std::runtime_error);
  fs::remove(blocker);
}

TEST_CASE("archive mode gives a non-decreasing HV column") {
  ExperimentConfig c = small_zdt();
  c.archive = true;
  c.fe_budget = 600;
  const auto problem = make_problem(c);
  const auto setup = make_indicators(c, *problem, scratch_dir("unused"));
  for (auto algo : {Algorithm::kAttention, Algorithm::kLmocso}) {
    c.algorithm = algo;
    const auto r = run_single(c, 5, *problem, setup);
    for (std::size_t i = 1; i < r.trace.rows.size(); ++i) CHECK(r.trace.rows[i].hv >= r.trace.rows[i - 1].hv);
  }
}

TEST_CASE("compare") {
  ExperimentConfig a = small_zdt();
  a.seeds = {1, 2, 3, 4};
  a.out_dir = scratch_dir("cmp_a");
  SUBCASE("against itself is neutral") {
    const auto dir = scratch_dir("cmp_self");
    const auto report = compare(a, a, dir);
    CHECK(report.rows.size() == 4);
    CHECK(report.median_hv_a == report.median_hv_b);
    CHECK(report.median_igd_a == report.median_igd_b);
    CHECK(report.hv_wins_a == 0);
    CHECK(report.a_not_worse);
    std::ifstream in(dir / "comparison.csv");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1 + 4);
    fs::remove_all(dir);
  }
  SUBCASE("mismatched configs are rejected") {
    ExperimentConfig b = a;
    b.algorithm = Algorithm::kLmocso;
    b.seeds = {1, 2};
    CHECK_THROWS_AS(compare(a, b, scratch_dir("cmp_bad")), InvalidConfig);
    b = a;
    b.problem = ProblemKind::kZdt2;
    CHECK_THROWS_AS(compare(a, b, scratch_dir("cmp_bad")), InvalidConfig);
  }
  fs::remove_all(a.out_dir);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS(median({}));
}

TEST_CASE("validate reports every suite once and catches a broken hypervolume") {
  ValidateOptions options;
  options.hv_samples = 100000;
  const auto good = run_validation(options);
  const std::vector<std::string> names{"dominance_sort",     "hypervolume_monte_carlo", "igd_brute_force",
                                       "variance_two_pass", "mcs_dual_implementation", "reference_front_audit"};
  REQUIRE(good.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK(good[i].name == names[i]);
    CHECK_MESSAGE(good[i].passed, good[i].name << ": " << good[i].detail);
  }

  options.hv = [](const Front& f, const NormalizationContext& ctx) { return 1.05 * hv_2d(f, ctx) + 0.02; };
  const auto bad = run_validation(options);
  CHECK_FALSE(bad[1].passed);
  CHECK(bad[0].passed);
}
