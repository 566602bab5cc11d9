#pragma once

#include <vector>

#include "attnmoea/problems.hpp"

namespace attnmoea {

/// Maps objective vectors into the unit box spanned by a reference front's
/// ideal and nadir points. Hypervolume is measured against `ref_point` in that
/// normalized space.
struct NormalizationContext {
  std::vector<double> ideal;
  std::vector<double> nadir;
  std::vector<double> ref_point{1.1, 1.1};

  /// ideal/nadir from the componentwise extrema of `reference`.
  static NormalizationContext from_reference(const Front& reference, double ref_coord = 1.1);

  /// Throws InvalidConfig on a zero-width axis or ref_point <= 1.
  void validate() const;
  std::vector<double> normalize(const std::vector<double>& f) const;
};

/// Exact two-objective hypervolume of `front` in normalized space. Points not
/// strictly inside the reference box are ignored; empty input yields 0.
double hv_2d(const Front& front, const NormalizationContext& ctx);

/// Mean distance from each reference point to its nearest front point, both
/// sets normalized. Throws std::invalid_argument on empty input.
double igd(const Front& front, const Front& reference, const NormalizationContext& ctx);

}  // namespace attnmoea
