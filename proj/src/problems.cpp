#include "attnmoea/problems.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "attnmoea/evo_core.hpp"
#include "attnmoea/io.hpp"

namespace attnmoea {

// ---------------------------------------------------------------------------
// ZDT

ZdtProblem::ZdtProblem(ZdtVariant variant, std::size_t n) : variant_(variant), bounds_(Bounds::uniform(n, 0.0, 1.0)) {
  if (n < 2) throw InvalidConfig("zdt: need at least 2 variables");
}

std::string ZdtProblem::name() const { return variant_ == ZdtVariant::kZdt1 ? "zdt1" : "zdt2"; }

std::vector<double> ZdtProblem::evaluate(std::span<const double> x) const {
  if (!bounds_.contains(x)) throw std::invalid_argument("zdt: decision vector outside the unit box");
  const std::size_t n = x.size();
  double tail = 0.0;
  for (std::size_t i = 1; i < n; ++i) tail += x[i];
  const double g = 1.0 + 9.0 * tail / static_cast<double>(n - 1);
  const double f1 = x[0];
  const double ratio = f1 / g;
  const double h = variant_ == ZdtVariant::kZdt1 ? 1.0 - std::sqrt(ratio) : 1.0 - ratio * ratio;
  return {f1, g * h};
}

Front zdt_front(ZdtVariant variant, std::size_t points) {
  if (points < 2) throw InvalidConfig("zdt_front: need at least 2 points");
  Front front;
  front.reserve(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double f1 = static_cast<double>(j) / static_cast<double>(points - 1);
    const double f2 = variant == ZdtVariant::kZdt1 ? 1.0 - std::sqrt(f1) : 1.0 - f1 * f1;
    front.push_back({f1, f2});
  }
  return front;
}

// ---------------------------------------------------------------------------
// Sensing scenario

void McsConfig::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidConfig(std::string("mcs: ") + field + " must be positive");
  };
  if (sensors == 0) throw InvalidConfig("mcs: sensors must be positive");
  positive(field_m, "field_m");
  positive(altitude_m, "altitude_m");
  positive(ref_gain, "ref_gain");
  positive(path_loss_exp, "path_loss_exp");
  positive(bandwidth_hz, "bandwidth_hz");
  positive(noise_w, "noise_w");
  positive(data_bits, "data_bits");
  positive(p_lo, "p_lo");
  positive(p_hi, "p_hi");
  if (!(p_lo < p_hi)) throw InvalidConfig("mcs: p_lo must be below p_hi");
}

std::uint64_t McsInstance::hash() const {
  // FNV-1a over the raw bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_d = [&mix](double v) { mix(std::bit_cast<std::uint64_t>(v)); };
  mix(gain.size());
  for (double g : gain) mix_d(g);
  for (double s : data_bits) mix_d(s);
  mix_d(bandwidth_hz);
  mix_d(noise_w);
  mix_d(p_lo);
  mix_d(p_hi);
  mix(static_cast<std::uint64_t>(delay));
  return h;
}

McsInstance mcs_instance(const McsConfig& config, Rng& rng) {
  config.validate();
  McsInstance inst;
  inst.bandwidth_hz = config.bandwidth_hz;
  inst.noise_w = config.noise_w;
  inst.p_lo = config.p_lo;
  inst.p_hi = config.p_hi;
  inst.delay = config.delay;
  inst.gain.reserve(config.sensors);
  inst.data_bits.assign(config.sensors, config.data_bits);
  const double centre = 0.5 * config.field_m;
  for (std::size_t i = 0; i < config.sensors; ++i) {
    const double px = rng.uniform(0.0, config.field_m) - centre;
    const double py = rng.uniform(0.0, config.field_m) - centre;
    const double dist = std::sqrt(px * px + py * py + config.altitude_m * config.altitude_m);
    inst.gain.push_back(config.ref_gain / std::pow(dist, config.path_loss_exp));
  }
  return inst;
}

McsInstance mcs_instance(const McsConfig& config) {
  Rng rng(config.instance_seed);
  return mcs_instance(config, rng);
}

double mcs_rate(const McsInstance& inst, std::size_t i, double p) {
  return inst.bandwidth_hz * std::log2(1.0 + p * inst.gain[i] / inst.noise_w);
}

std::vector<double> mcs_evaluate(const McsInstance& inst, std::span<const double> power) {
  if (power.size() != inst.size()) throw std::invalid_argument("mcs: power vector has wrong length");
  double delay = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < power.size(); ++i) {
    const double p = power[i];
    if (!(p >= inst.p_lo && p <= inst.p_hi)) {
      throw std::invalid_argument("mcs: power of sensor " + std::to_string(i) + " outside [p_lo, p_hi]");
    }
    const double t = inst.data_bits[i] / mcs_rate(inst, i, p);
    delay = inst.delay == DelayAggregate::kSum ? delay + t : std::max(delay, t);
    energy += p * t;
  }
  return {delay, energy};
}

McsProblem::McsProblem(McsInstance inst)
    : inst_(std::move(inst)), bounds_(Bounds::uniform(inst_.size(), inst_.p_lo, inst_.p_hi)) {}

namespace {

Front nondominated_subset(const Front& points) {
  const auto fronts = nondominated_fronts(points);
  Front out;
  for (std::size_t i : fronts.front()) out.push_back(points[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Front sum_delay_front(const McsInstance& inst, std::size_t weights) {
  const std::size_t n = inst.size();
  const auto lo = mcs_evaluate(inst, std::vector<double>(n, inst.p_lo));
  const auto hi = mcs_evaluate(inst, std::vector<double>(n, inst.p_hi));
  const double delay_span = lo[0] - hi[0];
  const double energy_span = hi[1] - lo[1];

  Front points{lo, hi};
  std::vector<double> power(n);
  for (std::size_t j = 1; j <= weights; ++j) {
    const double w = static_cast<double>(j) / static_cast<double>(weights + 1);
    for (std::size_t i = 0; i < n; ++i) {
      auto cost = [&](double p) {
        const double t = inst.data_bits[i] / mcs_rate(inst, i, p);
        return w * (p * t) / energy_span + (1.0 - w) * t / delay_span;
      };
      power[i] = golden_section_min(cost, inst.p_lo, inst.p_hi, 1e-9);
    }
    points.push_back(mcs_evaluate(inst, power));
  }
  return nondominated_subset(points);
}

Front max_delay_front(const McsInstance& inst, std::size_t targets) {
  const std::size_t n = inst.size();
  const auto lo = mcs_evaluate(inst, std::vector<double>(n, inst.p_lo));
  const auto hi = mcs_evaluate(inst, std::vector<double>(n, inst.p_hi));
  Front points{lo, hi};
  std::vector<double> power(n);
  for (std::size_t j = 1; j <= targets; ++j) {
    const double target = hi[0] + (lo[0] - hi[0]) * static_cast<double>(j) / static_cast<double>(targets + 1);
    for (std::size_t i = 0; i < n; ++i) {
      // Smallest power meeting the delay target; energy is increasing in power.
      const double needed_rate = inst.data_bits[i] / target;
      const double p = (std::exp2(needed_rate / inst.bandwidth_hz) - 1.0) * inst.noise_w / inst.gain[i];
      power[i] = std::clamp(p, inst.p_lo, inst.p_hi);
    }
    points.push_back(mcs_evaluate(inst, power));
  }
  return nondominated_subset(points);
}

}  // namespace

Front mcs_reference_front(const McsInstance& inst, std::size_t weights) {
  if (weights < 2) throw InvalidConfig("mcs_reference_front: need at least 2 weights");
  return inst.delay == DelayAggregate::kSum ? sum_delay_front(inst, weights) : max_delay_front(inst, weights);
}

// ---------------------------------------------------------------------------
// Persistence

void write_front_csv(const std::filesystem::path& path, const Front& front, const std::vector<std::string>& columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : front) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Front read_front_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Front front;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell));
    front.push_back(std::move(row));
  }
  return front;
}

Front cached_mcs_reference_front(const McsInstance& inst, std::size_t weights, const std::filesystem::path& cache_dir) {
  std::ostringstream name;
  name << "mcs_ref_" << std::hex << inst.hash() << std::dec << '_' << weights << ".csv";
  const auto path = cache_dir / name.str();
  if (std::filesystem::exists(path)) return read_front_csv(path);
  Front front = mcs_reference_front(inst, weights);
  std::filesystem::create_directories(cache_dir);
  write_front_csv(path, front, {"delay_s", "energy_j"});
  return front;
}

}  // namespace attnmoea
