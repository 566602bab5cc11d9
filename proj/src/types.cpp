#include "attnmoea/types.hpp"

#include <algorithm>
#include <numeric>

#include "attnmoea/rng.hpp"

namespace attnmoea {

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw InvalidConfig("bounds: lower and upper differ in length");
  if (lower_.empty()) throw InvalidConfig("bounds: zero-dimensional box");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw InvalidConfig("bounds: lower[" + std::to_string(i) + "] must be below upper");
    }
  }
}

Bounds Bounds::uniform(std::size_t n, double lo, double hi) {
  return Bounds(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

double Bounds::clamp(std::size_t i, double v) const { return std::clamp(v, lower_[i], upper_[i]); }

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

void evaluate(const Problem& problem, Individual& ind, std::size_t& fe_count) {
  ind.f = problem.evaluate(ind.x);
  ind.rank.reset();
  ind.crowding.reset();
  ++fe_count;
}

void evaluate_all(const Problem& problem, std::span<Individual> members, std::size_t& fe_count) {
  for (auto& m : members) evaluate(problem, m, fe_count);
}

std::vector<std::size_t> Rng::sample(std::size_t n, std::size_t count) {
  // Partial Fisher-Yates over an index table.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + index(n - i)]);
  pool.resize(count);
  return pool;
}

}  // namespace attnmoea
