#pragma once

#include <cstddef>
#include <vector>

#include "attnmoea/metrics.hpp"
#include "attnmoea/types.hpp"

namespace attnmoea {

struct TraceRow {
  std::size_t generation = 0;
  std::size_t fe = 0;
  double hv = 0.0;
  double igd = 0.0;
};

/// Per-generation indicator record shared by every optimizer.
struct RunTrace {
  std::vector<TraceRow> rows;
  /// First non-dominated front of the final population.
  std::vector<Individual> final_front;
  NormalizationContext normalization;
};

/// What a run is measured against.
struct IndicatorSetup {
  Front reference;
  NormalizationContext normalization;

  static IndicatorSetup from_reference(Front reference, double ref_coord = 1.1);
};

/// Samples HV and IGD every `every` generations. In archive mode the indicators
/// are taken over a cumulative non-dominated archive of everything evaluated,
/// which makes the HV column non-decreasing.
class TraceRecorder {
 public:
  TraceRecorder(const IndicatorSetup& setup, std::size_t every, bool archive);

  /// Offers newly evaluated individuals to the archive (no-op otherwise).
  void observe(std::span<const Individual> evaluated);

  /// Appends a row if `generation` is on the sampling grid or `force` is set.
  void record(std::size_t generation, const Population& pop, bool force = false);

  RunTrace finish(const Population& pop);

 private:
  Front current_front(const Population& pop) const;

  const IndicatorSetup& setup_;
  std::size_t every_;
  bool archive_mode_;
  Front archive_;
  RunTrace trace_;
};

/// Objective vectors of the first front of `members`.
Front first_front_objectives(std::span<const Individual> members);

}  // namespace attnmoea
