#include "attnmoea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace attnmoea {

NormalizationContext NormalizationContext::from_reference(const Front& reference, double ref_coord) {
  if (reference.empty()) throw std::invalid_argument("normalization: empty reference front");
  NormalizationContext ctx;
  ctx.ideal = reference.front();
  ctx.nadir = reference.front();
  for (const auto& p : reference) {
    for (std::size_t m = 0; m < p.size(); ++m) {
      ctx.ideal[m] = std::min(ctx.ideal[m], p[m]);
      ctx.nadir[m] = std::max(ctx.nadir[m], p[m]);
    }
  }
  ctx.ref_point.assign(ctx.ideal.size(), ref_coord);
  ctx.validate();
  return ctx;
}

void NormalizationContext::validate() const {
  if (ideal.size() != nadir.size() || ideal.size() != ref_point.size() || ideal.empty()) {
    throw InvalidConfig("normalization: ideal, nadir and ref_point must share one dimension");
  }
  for (std::size_t m = 0; m < ideal.size(); ++m) {
    if (!(ideal[m] < nadir[m])) throw InvalidConfig("normalization: ideal must lie strictly below nadir");
    if (!(ref_point[m] > 1.0)) throw InvalidConfig("normalization: ref_point must exceed 1 in every coordinate");
  }
}

std::vector<double> NormalizationContext::normalize(const std::vector<double>& f) const {
  std::vector<double> out(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) out[m] = (f[m] - ideal[m]) / (nadir[m] - ideal[m]);
  return out;
}

double hv_2d(const Front& front, const NormalizationContext& ctx) {
  ctx.validate();
  if (ctx.ideal.size() != 2) throw InvalidConfig("hv_2d: two objectives required");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(front.size());
  for (const auto& f : front) {
    const auto p = ctx.normalize(f);
    if (p[0] < ctx.ref_point[0] && p[1] < ctx.ref_point[1]) pts.emplace_back(p[0], p[1]);
  }
  std::sort(pts.begin(), pts.end());
  // Sweep on f1 ascending; only points improving the running f2 minimum add area.
  double area = 0.0;
  double f2_bound = ctx.ref_point[1];
  for (const auto& [f1, f2] : pts) {
    if (f2 >= f2_bound) continue;
    area += (ctx.ref_point[0] - f1) * (f2_bound - f2);
    f2_bound = f2;
  }
  return area;
}

double igd(const Front& front, const Front& reference, const NormalizationContext& ctx) {
  if (front.empty() || reference.empty()) throw std::invalid_argument("igd: empty point set");
  Front nf;
  nf.reserve(front.size());
  for (const auto& f : front) nf.push_back(ctx.normalize(f));
  double total = 0.0;
  for (const auto& r : reference) {
    const auto nr = ctx.normalize(r);
    double best = kInf;
    for (const auto& p : nf) {
      double sq = 0.0;
      for (std::size_t m = 0; m < p.size(); ++m) sq += (p[m] - nr[m]) * (p[m] - nr[m]);
      best = std::min(best, sq);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

}  // namespace attnmoea
