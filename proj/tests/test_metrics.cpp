#include <doctest.h>

#include "attnmoea/metrics.hpp"
#include "oracles.hpp"

using namespace attnmoea;

namespace {

NormalizationContext unit() {
  NormalizationContext ctx;
  ctx.ideal = {0.0, 0.0};
  ctx.nadir = {1.0, 1.0};
  return ctx;
}

}  // namespace

TEST_CASE("hv_2d basics") {
  const auto ctx = unit();
  CHECK(hv_2d({{0.5, 0.5}}, ctx) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(hv_2d({}, ctx) == 0.0);
  CHECK(hv_2d({{1.2, 0.0}}, ctx) == 0.0);  // outside the reference box
  CHECK(hv_2d({{0.5, 0.5}, {0.6, 0.6}}, ctx) == doctest::Approx(0.36));

  NormalizationContext bad = unit();
  bad.nadir = {1.0, 0.0};
  CHECK_THROWS_AS(hv_2d({{0.5, 0.5}}, bad), InvalidConfig);
}

TEST_CASE("hv_2d against Monte Carlo") {
  Rng rng(101);
  const auto ctx = unit();
  for (int t = 0; t < 10; ++t) {
    const auto front = oracle::random_staircase(rng, 1 + rng.index(15));
    CHECK(std::abs(hv_2d(front, ctx) - oracle::hv_monte_carlo(front, 1.1, 200000, rng)) < 1e-2);
  }
}

TEST_CASE("hv_2d is monotone") {
  Rng rng(102);
  const auto ctx = unit();
  for (int t = 0; t < 200; ++t) {
    auto front = oracle::random_points(rng, 1 + rng.index(10), 2);
    const double before = hv_2d(front, ctx);
    const auto extra = oracle::random_points(rng, 1, 2).front();
    auto grown = front;
    grown.push_back(extra);
    CHECK(hv_2d(grown, ctx) >= before);

    // A point strictly dominating a front member adds area.
    const auto stairs = oracle::random_staircase(rng, 1 + rng.index(10));
    const auto& base = stairs[rng.index(stairs.size())];
    auto better = stairs;
    better.push_back({base[0] * 0.9, base[1] * 0.9});
    CHECK(hv_2d(better, ctx) > hv_2d(stairs, ctx));
  }
}

TEST_CASE("igd") {
  const auto ctx = unit();
  const oracle::Points ref{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
  CHECK(igd(ref, ref, ctx) == 0.0);
  CHECK(igd({{3.0, 4.0}}, {{0.0, 0.0}}, ctx) == doctest::Approx(5.0));
  CHECK_THROWS_AS(igd({}, ref, ctx), std::invalid_argument);
  CHECK_THROWS_AS(igd(ref, {}, ctx), std::invalid_argument);

  Rng rng(103);
  for (int t = 0; t < 100; ++t) {
    const auto f = oracle::random_points(rng, 1 + rng.index(30), 2);
    const auto r = oracle::random_points(rng, 1 + rng.index(30), 2);
    CHECK(std::abs(igd(f, r, ctx) - oracle::igd(f, r)) <= 1e-12);
    // superset never increases IGD
    auto more = f;
    more.push_back(oracle::random_points(rng, 1, 2).front());
    CHECK(igd(more, r, ctx) <= igd(f, r, ctx));
  }
}

TEST_CASE("indicators are invariant under a shared affine rescaling") {
  Rng rng(104);
  for (int t = 0; t < 50; ++t) {
    const auto ref = oracle::random_staircase(rng, 20);
    const auto front = oracle::random_points(rng, 10, 2);
    const auto ctx = NormalizationContext::from_reference(ref);
    const double sx = rng.uniform(0.1, 100.0), sy = rng.uniform(0.1, 100.0);
    const double ox = rng.uniform(-5.0, 5.0), oy = rng.uniform(-5.0, 5.0);
    auto map = [&](const oracle::Points& pts) {
      oracle::Points out;
      for (const auto& p : pts) out.push_back({ox + sx * p[0], oy + sy * p[1]});
      return out;
    };
    const auto ref2 = map(ref);
    const auto ctx2 = NormalizationContext::from_reference(ref2);
    CHECK(hv_2d(map(front), ctx2) == doctest::Approx(hv_2d(front, ctx)).epsilon(1e-9));
    CHECK(igd(map(front), ref2, ctx2) == doctest::Approx(igd(front, ref, ctx)).epsilon(1e-9));
  }
}
