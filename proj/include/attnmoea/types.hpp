#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace attnmoea {

/// A configuration value is out of its admissible range.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on data in the wrong state (e.g. unevaluated).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Axis-aligned decision box. Construction enforces lower[i] < upper[i].
class Bounds {
 public:
  Bounds(std::vector<double> lower, std::vector<double> upper);

  /// Same [lo, hi] interval on every one of n coordinates.
  static Bounds uniform(std::size_t n, double lo, double hi);

  std::size_t size() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }

  double clamp(std::size_t i, double v) const;
  bool contains(std::span<const double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct Individual {
  std::vector<double> x;
  /// Objective vector; empty until evaluated.
  std::vector<double> f;
  std::optional<std::size_t> rank;
  std::optional<double> crowding;

  Individual() = default;
  explicit Individual(std::vector<double> decision) : x(std::move(decision)) {}

  bool evaluated() const { return !f.empty(); }
};

struct Population {
  std::vector<Individual> members;
  /// Function evaluations spent so far. Never decreases.
  std::size_t fe_count = 0;

  std::size_t size() const { return members.size(); }
};

/// Objective evaluator interface. Implementations are immutable after
/// construction, so concurrent `evaluate` calls are safe.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t num_variables() const = 0;
  virtual std::size_t num_objectives() const { return 2; }
  virtual const Bounds& bounds() const = 0;
  virtual std::vector<double> evaluate(std::span<const double> x) const = 0;
};

/// Evaluates `ind` and charges one evaluation to `fe_count`.
void evaluate(const Problem& problem, Individual& ind, std::size_t& fe_count);

/// Evaluates every member in order; fe_count grows by members.size().
void evaluate_all(const Problem& problem, std::span<Individual> members, std::size_t& fe_count);

}  // namespace attnmoea
