#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "attnmoea/rng.hpp"
#include "attnmoea/types.hpp"

namespace attnmoea {

/// A point set in objective space, one vector per point.
using Front = std::vector<std::vector<double>>;

// ---------------------------------------------------------------------------
// ZDT validation problems

enum class ZdtVariant { kZdt1, kZdt2 };

class ZdtProblem final : public Problem {
 public:
  ZdtProblem(ZdtVariant variant, std::size_t n);

  std::string name() const override;
  std::size_t num_variables() const override { return bounds_.size(); }
  const Bounds& bounds() const override { return bounds_; }
  /// Throws std::invalid_argument when x leaves the unit box.
  std::vector<double> evaluate(std::span<const double> x) const override;

  ZdtVariant variant() const { return variant_; }

 private:
  ZdtVariant variant_;
  Bounds bounds_;
};

/// `points` samples of the analytic front, f1 uniform on [0, 1].
Front zdt_front(ZdtVariant variant, std::size_t points);

// ---------------------------------------------------------------------------
// UAV-assisted sensing data collection

enum class DelayAggregate { kSum, kMax };

/// Physical scenario parameters. Defaults are the artifact's choices.
struct McsConfig {
  std::size_t sensors = 300;
  double field_m = 1000.0;       // side of the square sensing field
  double altitude_m = 100.0;     // UAV hover height above the field centre
  double ref_gain = 1e-3;        // channel power gain at 1 m
  double path_loss_exp = 2.0;
  double bandwidth_hz = 1e6;
  double noise_w = 1e-13;
  double data_bits = 5e6;
  double p_lo = 1e-3;
  double p_hi = 1.0;
  DelayAggregate delay = DelayAggregate::kSum;
  std::uint64_t instance_seed = 1;

  /// Throws InvalidConfig naming the first bad field.
  void validate() const;
};

/// One generated scenario. Immutable after construction.
struct McsInstance {
  std::vector<double> gain;       // per-sensor channel power gain
  std::vector<double> data_bits;  // per-sensor payload
  double bandwidth_hz = 0.0;
  double noise_w = 0.0;
  double p_lo = 0.0;
  double p_hi = 0.0;
  DelayAggregate delay = DelayAggregate::kSum;

  std::size_t size() const { return gain.size(); }
  /// Stable digest of every field, used to key cached reference fronts.
  std::uint64_t hash() const;
};

/// Places sensors uniformly in the field with the UAV above its centre and
/// applies line-of-sight path loss gain = ref_gain / dist^alpha.
McsInstance mcs_instance(const McsConfig& config, Rng& rng);
McsInstance mcs_instance(const McsConfig& config);

/// Per-sensor transmission rate in bit/s at power p.
double mcs_rate(const McsInstance& inst, std::size_t i, double p);

/// Objectives (delay_s, energy_j). Throws std::invalid_argument when any power
/// lies outside [p_lo, p_hi].
std::vector<double> mcs_evaluate(const McsInstance& inst, std::span<const double> power);

class McsProblem final : public Problem {
 public:
  explicit McsProblem(McsInstance inst);

  std::string name() const override { return "mcs"; }
  std::size_t num_variables() const override { return inst_.size(); }
  const Bounds& bounds() const override { return bounds_; }
  std::vector<double> evaluate(std::span<const double> x) const override { return mcs_evaluate(inst_, x); }

  const McsInstance& instance() const { return inst_; }

 private:
  McsInstance inst_;
  Bounds bounds_;
};

/// Reference Pareto front from per-weight scalarization. For the summed-delay
/// model every weighted sum separates into independent per-sensor 1-D problems
/// solved by golden-section search; the max-delay model is swept over delay
/// targets with the closed-form minimal power. The box corners are always
/// included and the union is filtered to its non-dominated subset, sorted by
/// delay. Throws InvalidConfig when weights < 2.
Front mcs_reference_front(const McsInstance& inst, std::size_t weights);

// ---------------------------------------------------------------------------
// Front persistence

/// CSV with a header row; one point per line.
void write_front_csv(const std::filesystem::path& path, const Front& front,
                     const std::vector<std::string>& columns);
Front read_front_csv(const std::filesystem::path& path);

/// Returns the cached front for this instance under `cache_dir`, computing and
/// persisting it on a miss. Files are named mcs_ref_<hash>_<weights>.csv.
Front cached_mcs_reference_front(const McsInstance& inst, std::size_t weights,
                                 const std::filesystem::path& cache_dir);

// ---------------------------------------------------------------------------

/// Golden-section minimum of a function on [lo, hi], preceded by a coarse grid
/// scan that brackets the best grid cell.
double golden_section_min(const auto& fn, double lo, double hi, double tol, std::size_t grid = 64) {
  constexpr double kInvPhi = 0.6180339887498949;
  std::size_t best = 0;
  double best_val = fn(lo);
  for (std::size_t j = 1; j <= grid; ++j) {
    const double v = fn(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(grid));
    if (v < best_val) {
      best_val = v;
      best = j;
    }
  }
  const double cell = (hi - lo) / static_cast<double>(grid);
  double a = best == 0 ? lo : lo + cell * static_cast<double>(best - 1);
  double b = best == grid ? hi : lo + cell * static_cast<double>(best + 1);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  // Endpoints win when the minimum sits on the box boundary.
  double x = 0.5 * (a + b);
  double fx = fn(x);
  if (fn(lo) <= fx) {
    x = lo;
    fx = fn(lo);
  }
  if (fn(hi) < fx) x = hi;
  return x;
}

}  // namespace attnmoea
