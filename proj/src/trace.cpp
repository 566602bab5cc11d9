#include "attnmoea/trace.hpp"

#include <algorithm>

#include "attnmoea/evo_core.hpp"

namespace attnmoea {

IndicatorSetup IndicatorSetup::from_reference(Front reference, double ref_coord) {
  IndicatorSetup s;
  s.normalization = NormalizationContext::from_reference(reference, ref_coord);
  s.reference = std::move(reference);
  return s;
}

Front first_front_objectives(std::span<const Individual> members) {
  std::vector<std::vector<double>> objs;
  objs.reserve(members.size());
  for (const auto& m : members) objs.push_back(m.f);
  const auto fronts = nondominated_fronts(objs);
  Front out;
  for (std::size_t i : fronts.front()) out.push_back(objs[i]);
  return out;
}

TraceRecorder::TraceRecorder(const IndicatorSetup& setup, std::size_t every, bool archive)
    : setup_(setup), every_(std::max<std::size_t>(every, 1)), archive_mode_(archive) {
  trace_.normalization = setup.normalization;
}

void TraceRecorder::observe(std::span<const Individual> evaluated) {
  if (!archive_mode_) return;
  for (const auto& ind : evaluated) {
    if (!ind.evaluated()) continue;
    const auto& f = ind.f;
    bool rejected = false;
    for (const auto& a : archive_) {
      if (dominates(a, f) || a == f) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    std::erase_if(archive_, [&](const std::vector<double>& a) { return dominates(f, a); });
    archive_.push_back(f);
  }
}

Front TraceRecorder::current_front(const Population& pop) const {
  return archive_mode_ ? archive_ : first_front_objectives(pop.members);
}

void TraceRecorder::record(std::size_t generation, const Population& pop, bool force) {
  if (!trace_.rows.empty() && trace_.rows.back().fe == pop.fe_count) return;
  if (!force && generation % every_ != 0) return;
  const Front front = current_front(pop);
  trace_.rows.push_back({generation, pop.fe_count, hv_2d(front, setup_.normalization),
                         igd(front, setup_.reference, setup_.normalization)});
}

RunTrace TraceRecorder::finish(const Population& pop) {
  std::vector<Individual> members = pop.members;
  const auto fronts = fast_nondominated_sort(members);
  for (std::size_t i : fronts.front()) trace_.final_front.push_back(members[i]);
  return std::move(trace_);
}

}  // namespace attnmoea
