#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "onena/arcs.hpp"
#include "onena/rng.hpp"

using namespace onena;

namespace {

constexpr double pi = std::numbers::pi;

ArcSet random_arcset(CounterRng& rng) {
  const int n = 1 + static_cast<int>(rng.next_below(4));
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    arcs.push_back({rng.next_double() * two_pi, rng.next_double() * two_pi / n});
  return ArcSet::normalize(arcs);
}

}  // namespace

TEST_SUITE("arcs") {

TEST_CASE("normalize merges overlapping arcs") {
  const ArcSet s = ArcSet::normalize({Arc{0.0, pi / 2.0}, Arc{pi / 4.0, 3.0 * pi / 4.0}});
  CHECK(s.measure() == doctest::Approx(pi).epsilon(1e-14));
  CHECK(s.approx_equal(ArcSet::arc(0.0, pi)));
}

TEST_CASE("normalize handles wrap-around unions") {
  // [3*pi/2, 2*pi) u [0, pi/4) together with [0, pi/2) has measure pi.
  const ArcSet s = ArcSet::normalize({Arc{3.0 * pi / 2.0, 3.0 * pi / 4.0}, Arc{0.0, pi / 2.0}});
  CHECK(s.measure() == doctest::Approx(pi).epsilon(1e-14));
  CHECK(s.contains(3.0 * pi / 2.0 + 0.01));
  CHECK(s.contains(0.3));
  CHECK(!s.contains(pi));
}

TEST_CASE("empty input gives the empty set") {
  const ArcSet s = ArcSet::normalize({});
  CHECK(s.empty());
  CHECK(s.measure() == 0.0);
}

TEST_CASE("normalization is idempotent") {
  CounterRng rng(11);
  for (int i = 0; i < 100; ++i) {
    const ArcSet s = random_arcset(rng);
    std::vector<Arc> back;
    for (const auto& seg : s.segments()) back.push_back({seg.lo, seg.hi - seg.lo});
    CHECK(ArcSet::normalize(back).approx_equal(s, 1e-12));
  }
}

TEST_CASE("non-finite and out-of-range arcs are rejected") {
  CHECK_THROWS(ArcSet::normalize({Arc{std::nan(""), 1.0}}));
  CHECK_THROWS(ArcSet::normalize({Arc{0.0, -0.5}}));
  CHECK_THROWS(ArcSet::normalize({Arc{0.0, two_pi + 0.1}}));
}

TEST_CASE("complement of the upper half circle") {
  const ArcSet c = set_complement(ArcSet::arc(0.0, pi));
  CHECK(c.measure() == doctest::Approx(pi).epsilon(1e-14));
  CHECK(c.approx_equal(ArcSet::arc(pi, pi)));
}

TEST_CASE("intersection across the wrap point") {
  const ArcSet wrapped = ArcSet::arc(3.0 * pi / 2.0, 3.0 * pi / 4.0);  // up to pi/4
  const ArcSet quarter = ArcSet::arc(0.0, pi / 2.0);
  const ArcSet i = set_intersect(wrapped, quarter);
  CHECK(i.approx_equal(ArcSet::arc(0.0, pi / 4.0)));
}

TEST_CASE("measure partitions the circle with the complement") {
  CounterRng rng(22);
  for (int i = 0; i < 200; ++i) {
    const ArcSet a = random_arcset(rng);
    CHECK(a.measure() + set_complement(a).measure() == doctest::Approx(two_pi).epsilon(1e-12));
  }
}

TEST_CASE("inclusion-exclusion holds to 1e-12") {
  CounterRng rng(33);
  for (int i = 0; i < 200; ++i) {
    const ArcSet a = random_arcset(rng);
    const ArcSet b = random_arcset(rng);
    const double lhs = set_union(a, b).measure() + set_intersect(a, b).measure();
    CHECK(std::abs(lhs - a.measure() - b.measure()) < 1e-12);
  }
}

TEST_CASE("double complement is the identity in canonical form") {
  CounterRng rng(44);
  for (int i = 0; i < 200; ++i) {
    const ArcSet a = random_arcset(rng);
    CHECK(set_complement(set_complement(a)).approx_equal(a, 1e-12));
  }
}

TEST_CASE("De Morgan in canonical form") {
  CounterRng rng(55);
  for (int i = 0; i < 200; ++i) {
    const ArcSet a = random_arcset(rng);
    const ArcSet b = random_arcset(rng);
    const ArcSet lhs = set_complement(set_union(a, b));
    const ArcSet rhs = set_intersect(set_complement(a), set_complement(b));
    CHECK(lhs.approx_equal(rhs, 1e-12));
  }
}

TEST_CASE("rasterization oracle agrees with exact measures") {
  CounterRng rng(66);
  const long grid = 1000000;
  for (int rep = 0; rep < 10; ++rep) {
    const ArcSet a = random_arcset(rng);
    const ArcSet b = random_arcset(rng);
    const ArcSet expr = set_union(set_intersect(a, b), set_complement(set_union(a, b)));
    long inside = 0;
    for (long i = 0; i < grid; ++i) {
      const double theta = (i + 0.5) * two_pi / grid;
      if (expr.contains(theta)) ++inside;
    }
    const double frac = static_cast<double>(inside) / grid;
    CHECK(std::abs(frac - expr.measure() / two_pi) < 3e-6 + 1.0 / grid);
  }
}

TEST_CASE("contains respects half-open boundaries up to measure zero") {
  const ArcSet s = ArcSet::arc(1.0, 0.5);
  CHECK(s.contains(1.0));
  CHECK(s.contains(1.25));
  CHECK(!s.contains(1.5));
  CHECK(!s.contains(0.99));
}

}  // TEST_SUITE
