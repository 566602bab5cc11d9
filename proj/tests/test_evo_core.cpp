#include <doctest.h>

#include <algorithm>
#include <set>

#include "attnmoea/evo_core.hpp"
#include "oracles.hpp"

using namespace attnmoea;

namespace {

Individual with_f(std::vector<double> f) {
  Individual ind(std::vector<double>{0.0});
  ind.f = std::move(f);
  return ind;
}

Population population_of(const oracle::Points& objs) {
  Population pop;
  for (const auto& f : objs) pop.members.push_back(with_f(f));
  return pop;
}

}  // namespace

TEST_CASE("init_population samples inside the box") {
  Rng rng(3);
  const auto pop = init_population(Bounds::uniform(3, 0.0, 1.0), 4, rng);
  CHECK(pop.size() == 4);
  CHECK(pop.fe_count == 0);
  for (const auto& m : pop.members) {
    CHECK(m.x.size() == 3);
    CHECK_FALSE(m.evaluated());
    for (double v : m.x) CHECK((v >= 0.0 && v <= 1.0));
  }
}

TEST_CASE("init_population rejects bad configuration") {
  Rng rng(1);
  CHECK_THROWS_AS(init_population(Bounds::uniform(3, 0.0, 1.0), 1, rng), InvalidConfig);
  CHECK_THROWS_AS(Bounds({0.0, 0.0}, {0.0, 1.0}), InvalidConfig);
}

TEST_CASE("init_population replays under a fixed seed") {
  Rng a(77), b(77);
  const auto pa = init_population(Bounds::uniform(5, -2.0, 3.0), 10, a);
  const auto pb = init_population(Bounds::uniform(5, -2.0, 3.0), 10, b);
  for (std::size_t i = 0; i < 10; ++i) CHECK(pa.members[i].x == pb.members[i].x);
}

TEST_CASE("fast_nondominated_sort hand cases") {
  SUBCASE("singleton") {
    auto pop = population_of({{1.0, 1.0}});
    const auto fronts = fast_nondominated_sort(pop.members);
    REQUIRE(fronts.size() == 1);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
    CHECK(pop.members[0].rank == 0u);
  }
  SUBCASE("two layers") {
    auto pop = population_of({{1, 2}, {2, 1}, {2, 2}});
    const auto fronts = fast_nondominated_sort(pop.members);
    REQUIRE(fronts.size() == 2);
    CHECK(fronts[0] == std::vector<std::size_t>{0, 1});
    CHECK(fronts[1] == std::vector<std::size_t>{2});
    CHECK(pop.members[2].rank == 1u);
  }
  SUBCASE("unevaluated member") {
    Population pop;
    pop.members.emplace_back(std::vector<double>{0.5});
    CHECK_THROWS_AS(fast_nondominated_sort(pop.members), StateError);
  }
}

TEST_CASE("fast_nondominated_sort matches the brute-force oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t size = 1 + rng.index(50);
    const std::size_t m = 2 + rng.index(2);
    const auto pts = oracle::random_points(rng, size, m, trial % 2 == 0 ? 5 : 0);
    auto pop = population_of(pts);
    const auto fronts = fast_nondominated_sort(pop.members);
    const auto expected = oracle::fronts(pts);
    REQUIRE(fronts.size() == expected.size());
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      CHECK(std::set<std::size_t>(fronts[f].begin(), fronts[f].end()) == expected[f]);
      for (std::size_t i : fronts[f]) CHECK(pop.members[i].rank == f);
    }
  }
}

TEST_CASE("crowding_distance") {
  SUBCASE("two members are both boundary") {
    const oracle::Points f{{0, 1}, {1, 0}};
    const auto d = crowding_distance(std::span<const std::vector<double>>(f));
    CHECK(d[0] == kInf);
    CHECK(d[1] == kInf);
  }
  SUBCASE("three-point line") {
    // middle: (2-0)/2 + (2-0)/2
    const oracle::Points f{{0, 2}, {1, 1}, {2, 0}};
    const auto d = crowding_distance(std::span<const std::vector<double>>(f));
    CHECK(d[0] == kInf);
    CHECK(d[1] == doctest::Approx(2.0));
    CHECK(d[2] == kInf);
  }
  SUBCASE("zero range contributes nothing") {
    const oracle::Points f(5, std::vector<double>{1.0, 1.0});
    const auto d = crowding_distance(std::span<const std::vector<double>>(f));
    CHECK(std::count(d.begin(), d.end(), kInf) == 2);
    CHECK(std::count(d.begin(), d.end(), 0.0) == 3);
  }
  SUBCASE("empty front") {
    const oracle::Points f;
    CHECK_THROWS_AS(crowding_distance(std::span<const std::vector<double>>(f)), std::invalid_argument);
  }
}

TEST_CASE("sbx_crossover") {
  const Bounds box = Bounds::uniform(10, 0.0, 1.0);
  SUBCASE("identical parents are reproduced") {
    Rng rng(5);
    Individual a(std::vector<double>(10, 0.3));
    const auto [c1, c2] = sbx_crossover(a, a, 20.0, box, rng);
    CHECK(c1.x == a.x);
    CHECK(c2.x == a.x);
  }
  SUBCASE("children stay in the box") {
    Rng rng(6);
    for (int t = 0; t < 10000; ++t) {
      Individual a(std::vector<double>(10)), b(std::vector<double>(10));
      for (std::size_t i = 0; i < 10; ++i) {
        a.x[i] = rng.uniform();
        b.x[i] = rng.uniform();
      }
      const auto [c1, c2] = sbx_crossover(a, b, 2.0, box, rng);
      REQUIRE(box.contains(c1.x));
      REQUIRE(box.contains(c2.x));
      CHECK_FALSE(c1.evaluated());
    }
  }
  SUBCASE("replay") {
    Individual a(std::vector<double>(10, 0.1)), b(std::vector<double>(10, 0.9));
    Rng r1(9), r2(9);
    CHECK(sbx_crossover(a, b, 20.0, box, r1).first.x == sbx_crossover(a, b, 20.0, box, r2).first.x);
  }
  SUBCASE("dimension mismatch") {
    Rng rng(1);
    Individual a(std::vector<double>(10, 0.1)), b(std::vector<double>(9, 0.9));
    CHECK_THROWS_AS(sbx_crossover(a, b, 20.0, box, rng), std::invalid_argument);
  }
}

TEST_CASE("polynomial_mutation") {
  const Bounds box = Bounds::uniform(5, 0.0, 1.0);
  Individual x(std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  SUBCASE("pm = 0 is identity") {
    Rng rng(1);
    CHECK(polynomial_mutation(x, 20.0, 0.0, box, rng).x == x.x);
  }
  SUBCASE("pm = 1 stays in the box") {
    Rng rng(2);
    for (int t = 0; t < 10000; ++t) REQUIRE(box.contains(polynomial_mutation(x, 5.0, 1.0, box, rng).x));
  }
  SUBCASE("replay") {
    Rng r1(4), r2(4);
    CHECK(polynomial_mutation(x, 20.0, 1.0, box, r1).x == polynomial_mutation(x, 20.0, 1.0, box, r2).x);
  }
  SUBCASE("probability out of range") {
    Rng rng(1);
    CHECK_THROWS_AS(polynomial_mutation(x, 20.0, 1.5, box, rng), InvalidConfig);
    CHECK_THROWS_AS(polynomial_mutation(x, 20.0, -0.1, box, rng), InvalidConfig);
  }
}

TEST_CASE("environmental_selection") {
  SUBCASE("no truncation keeps the multiset") {
    auto pop = population_of({{3, 1}, {1, 3}, {2, 2}, {4, 4}});
    const auto out = environmental_selection(pop, 4);
    std::multiset<std::vector<double>> before, after;
    for (const auto& m : pop.members) before.insert(m.f);
    for (const auto& m : out.members) after.insert(m.f);
    CHECK(before == after);
  }
  SUBCASE("extremes of an overflowing front survive") {
    auto pop = population_of({{0, 2}, {1, 1}, {2, 0}});
    const auto out = environmental_selection(pop, 2);
    REQUIRE(out.size() == 2);
    CHECK(out.members[0].f == std::vector<double>{0, 2});
    CHECK(out.members[1].f == std::vector<double>{2, 0});
  }
  SUBCASE("too small a pool") {
    auto pop = population_of({{0, 2}});
    CHECK_THROWS_AS(environmental_selection(pop, 2), std::invalid_argument);
  }
  SUBCASE("fe_count is carried over") {
    auto pop = population_of({{0, 2}, {1, 1}, {2, 0}});
    pop.fe_count = 17;
    CHECK(environmental_selection(pop, 2).fe_count == 17);
  }
}

TEST_CASE("environmental_selection is rank-monotone and deterministic") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t size = 2 + rng.index(39);
    const std::size_t d = 1 + rng.index(size);
    const auto pts = oracle::random_points(rng, size, 2, 6);
    auto pool = population_of(pts);
    const auto keep = select_survivors(pool.members, d);
    CHECK(keep.size() == d);
    CHECK(keep == select_survivors(pool.members, d));

    const auto layers = oracle::fronts(pts);
    std::vector<std::size_t> rank(size);
    for (std::size_t f = 0; f < layers.size(); ++f) {
      for (std::size_t i : layers[f]) rank[i] = f;
    }
    std::size_t worst_kept = 0;
    for (std::size_t i : keep) worst_kept = std::max(worst_kept, rank[i]);
    std::set<std::size_t> kept(keep.begin(), keep.end());
    for (std::size_t i = 0; i < size; ++i) {
      if (!kept.count(i)) CHECK(rank[i] >= worst_kept);
    }
  }
}
