#include "attnmoea/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "attnmoea/attention.hpp"
#include "attnmoea/evo_core.hpp"
#include "attnmoea/problems.hpp"

namespace attnmoea {

// The oracles below are written independently of the production code paths
// they audit: brute force, sampling, or textbook re-statements.

namespace {

bool brute_dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool any_better = false;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (b[m] < a[m]) return false;
    any_better = any_better || a[m] < b[m];
  }
  return any_better;
}

/// Peels non-dominated layers by exhaustive pairwise comparison.
std::vector<std::set<std::size_t>> brute_fronts(const Front& pts) {
  std::set<std::size_t> remaining;
  for (std::size_t i = 0; i < pts.size(); ++i) remaining.insert(i);
  std::vector<std::set<std::size_t>> fronts;
  while (!remaining.empty()) {
    std::set<std::size_t> layer;
    for (std::size_t i : remaining) {
      bool dominated = false;
      for (std::size_t j : remaining) dominated = dominated || brute_dominates(pts[j], pts[i]);
      if (!dominated) layer.insert(i);
    }
    for (std::size_t i : layer) remaining.erase(i);
    fronts.push_back(std::move(layer));
  }
  return fronts;
}

SuiteResult dominance_suite(Rng& rng) {
  SuiteResult r{"dominance_sort", true, ""};
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t size = 1 + rng.index(50);
    const std::size_t m = 2 + rng.index(2);
    Front pts(size, std::vector<double>(m));
    // Coarse integer grid so ties and duplicates occur.
    for (auto& p : pts) {
      for (auto& v : p) v = static_cast<double>(rng.index(6));
    }
    const auto fast = nondominated_fronts(pts);
    const auto slow = brute_fronts(pts);
    bool same = fast.size() == slow.size();
    for (std::size_t f = 0; same && f < fast.size(); ++f) {
      same = std::set<std::size_t>(fast[f].begin(), fast[f].end()) == slow[f];
    }
    if (!same) ++mismatches;
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(mismatches) + " mismatches in 200 populations";
  return r;
}

Front random_nondominated_front(Rng& rng, std::size_t max_size) {
  // Points on a random decreasing staircase inside [0,1]^2.
  const std::size_t size = 1 + rng.index(max_size);
  std::vector<double> f1(size), f2(size);
  for (auto& v : f1) v = rng.uniform();
  for (auto& v : f2) v = rng.uniform();
  std::sort(f1.begin(), f1.end());
  std::sort(f2.begin(), f2.end(), std::greater<>());
  Front front;
  for (std::size_t i = 0; i < size; ++i) front.push_back({f1[i], f2[i]});
  return front;
}

double monte_carlo_hv(const Front& normalized, const std::vector<double>& ref, std::size_t samples, Rng& rng) {
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double u = rng.uniform() * ref[0];
    const double v = rng.uniform() * ref[1];
    for (const auto& p : normalized) {
      if (p[0] <= u && p[1] <= v) {
        ++hits;
        break;
      }
    }
  }
  return ref[0] * ref[1] * static_cast<double>(hits) / static_cast<double>(samples);
}

NormalizationContext unit_context() {
  NormalizationContext ctx;
  ctx.ideal = {0.0, 0.0};
  ctx.nadir = {1.0, 1.0};
  ctx.ref_point = {1.1, 1.1};
  return ctx;
}

SuiteResult hv_suite(Rng& rng, const ValidateOptions& options) {
  SuiteResult r{"hypervolume_monte_carlo", true, ""};
  const auto ctx = unit_context();
  const double single = options.hv(Front{{0.5, 0.5}}, ctx);
  double worst = std::abs(single - 0.36);
  bool ok = worst < 1e-12;
  for (int trial = 0; trial < 50; ++trial) {
    const Front front = random_nondominated_front(rng, 12);
    const double exact = options.hv(front, ctx);
    const double estimate = monte_carlo_hv(front, ctx.ref_point, options.hv_samples, rng);
    worst = std::max(worst, std::abs(exact - estimate));
    ok = ok && std::abs(exact - estimate) <= 1e-2;
  }
  r.passed = ok;
  std::ostringstream os;
  os << "single-point value " << single << " (expect 0.36); worst |exact - MC| " << worst;
  r.detail = os.str();
  return r;
}

SuiteResult igd_suite(Rng& rng) {
  SuiteResult r{"igd_brute_force", true, ""};
  const auto ctx = unit_context();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Front ref(1 + rng.index(40), std::vector<double>(2));
    Front front(1 + rng.index(40), std::vector<double>(2));
    for (auto& p : ref) p = {rng.uniform(), rng.uniform()};
    for (auto& p : front) p = {rng.uniform(), rng.uniform()};
    double total = 0.0;
    for (const auto& q : ref) {
      double best = kInf;
      for (const auto& p : front) best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
      total += best;
    }
    worst = std::max(worst, std::abs(total / static_cast<double>(ref.size()) - igd(front, ref, ctx)));
    worst = std::max(worst, std::abs(igd(ref, ref, ctx)));
  }
  r.passed = worst <= 1e-12;
  r.detail = "worst deviation " + std::to_string(worst);
  return r;
}

SuiteResult variance_suite(Rng& rng) {
  SuiteResult r{"variance_two_pass", true, ""};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(30);
    const Bounds box = Bounds::uniform(n, 0.0, 1.0);
    const Population pop = init_population(box, 2 + rng.index(60), rng);
    const auto fast = variance_vector(pop);
    for (std::size_t i = 0; i < n; ++i) {
      double mean = 0.0;
      for (const auto& m : pop.members) mean += m.x[i];
      mean /= static_cast<double>(pop.size());
      double acc = 0.0;
      for (const auto& m : pop.members) acc += (m.x[i] - mean) * (m.x[i] - mean);
      worst = std::max(worst, std::abs(acc / static_cast<double>(pop.size()) - fast[i]));
    }
  }
  r.passed = worst <= 1e-12;
  r.detail = "worst deviation " + std::to_string(worst);
  return r;
}

SuiteResult mcs_suite(Rng& rng) {
  SuiteResult r{"mcs_dual_implementation", true, ""};
  McsConfig cfg;
  cfg.sensors = 50;
  cfg.instance_seed = rng.next_u64();
  const McsInstance inst = mcs_instance(cfg);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(inst.size());
    for (auto& v : p) v = rng.uniform(inst.p_lo, inst.p_hi);
    const auto f = mcs_evaluate(inst, p);
    double delay = 0.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double snr = p[i] * inst.gain[i] / inst.noise_w;
      const double rate = inst.bandwidth_hz * std::log(1.0 + snr) / std::log(2.0);
      delay += inst.data_bits[i] / rate;
      energy += p[i] * inst.data_bits[i] / rate;
    }
    worst = std::max({worst, std::abs(f[0] - delay) / delay, std::abs(f[1] - energy) / energy});
  }
  r.passed = worst <= 1e-12;
  r.detail = "worst relative deviation " + std::to_string(worst);
  return r;
}

SuiteResult reference_front_suite(Rng& rng) {
  SuiteResult r{"reference_front_audit", true, ""};
  McsConfig cfg;
  cfg.sensors = 40;
  cfg.instance_seed = rng.next_u64();
  const McsInstance inst = mcs_instance(cfg);
  const Front ref = mcs_reference_front(inst, 60);
  std::size_t dominated_pairs = 0;
  for (const auto& a : ref) {
    for (const auto& b : ref) dominated_pairs += brute_dominates(a, b) ? 1 : 0;
  }
  // No random feasible point may strictly dominate a reference point.
  std::size_t beaten = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> p(inst.size());
    const double scale = rng.uniform();
    for (auto& v : p) v = std::clamp(scale * rng.uniform(0.5, 1.5), inst.p_lo, inst.p_hi);
    const auto f = mcs_evaluate(inst, p);
    for (const auto& q : ref) beaten += brute_dominates(f, q) ? 1 : 0;
  }
  r.passed = dominated_pairs == 0 && beaten == 0 && ref.size() >= 2;
  r.detail = std::to_string(ref.size()) + " points, " + std::to_string(dominated_pairs) +
             " internal dominations, " + std::to_string(beaten) + " dominated by random solutions";
  return r;
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidateOptions& options) {
  Rng rng(options.seed);
  std::vector<SuiteResult> out;
  out.push_back(dominance_suite(rng));
  out.push_back(hv_suite(rng, options));
  out.push_back(igd_suite(rng));
  out.push_back(variance_suite(rng));
  out.push_back(mcs_suite(rng));
  out.push_back(reference_front_suite(rng));
  return out;
}

}  // namespace attnmoea
