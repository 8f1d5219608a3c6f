#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/mac_check.hpp"
#include "gdof/scheme.hpp"
#include "oracles.hpp"

#include <algorithm>

using gdof::LayerKind;
using gdof::Rational;
using gdof::SubCase;
using gdof::SystemConfig;

namespace {

SystemConfig cfg(int M, int N, Rational a, Rational b) { return SystemConfig{M, N, a, b}; }

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("S_q membership") {
  CHECK_FALSE(gdof::in_sq(cfg(5, 3, Rational(7, 10), Rational(7, 10))));
  CHECK(gdof::in_sq(cfg(5, 3, Rational(7, 10), Rational(1, 2))));
  CHECK_FALSE(gdof::in_sq(cfg(5, 3, 1, 0)));
  CHECK_THROWS_AS(gdof::in_sq(cfg(5, 3, Rational(2, 3), 0)), gdof::OutOfRange);
  CHECK_THROWS_AS(gdof::in_sq(cfg(5, 3, Rational(25, 24), 0)), gdof::OutOfRange);
}

TEST_CASE("S_q agrees with the smaller argument of the min") {
  for (auto [M, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {5, 3}, {6, 3}, {7, 4}}) {
    for (const Rational& a : oracle::grid(120, 120)) {
      if (a <= Rational(2, 3)) continue;
      for (const Rational& b : oracle::grid(120, 120)) {
        if (b > a) break;
        const Rational n(N);
        const Rational nh(std::min(N, M - N));
        const Rational left = 2 * n * a + 2 * nh * oracle::pos(1 - 2 * a + b);
        const Rational right = 2 * n - n * a + nh * b;
        // The membership test only decides the branch when the first
        // argument is active; on ties either label is consistent.
        if (left != right) CHECK(gdof::in_sq(cfg(M, N, a, b)) == (left < right));
      }
    }
  }
}

TEST_CASE("weak-interference layering") {
  const auto s = gdof::synthesize(cfg(5, 3, Rational(1, 4), Rational(1, 4)));
  CHECK(s.per_user_gdof == Rational(11, 4));
  CHECK(s.layers_of(1, LayerKind::kCommon).empty());
  const auto zf = s.layers_of(1, LayerKind::kZeroForced);
  const auto pr = s.layers_of(1, LayerKind::kPrivate);
  REQUIRE(zf.size() == 2);
  REQUIRE(pr.size() == 3);
  for (const auto& l : zf) {
    CHECK(l.stream_gdof == Rational(1, 4));
    CHECK(l.power_exponent == Rational(0));
  }
  for (const auto& l : pr) {
    CHECK(l.stream_gdof == Rational(3, 4));
    CHECK(l.power_exponent == Rational(1, 4));
  }
  CHECK(s.zero_forced_margin == Rational(3, 4));
}

TEST_CASE("strong-interference layering") {
  const auto s = gdof::synthesize(cfg(5, 3, 3, 0));
  CHECK(s.per_user_gdof == Rational(3));
  for (const auto& l : s.layers_of(2, LayerKind::kCommon)) CHECK(l.stream_gdof == Rational(1));
  for (const auto& l : s.layers_of(2, LayerKind::kZeroForced)) CHECK(l.stream_gdof == Rational(0));
  CHECK(s.layers_of(2, LayerKind::kPrivate).empty());

  const auto corner = gdof::synthesize(cfg(2, 1, 1, 1));
  CHECK(corner.per_user_gdof == Rational(1));
  REQUIRE(corner.layers_of(1, LayerKind::kCommon).size() == 1);
  CHECK(corner.layers_of(1, LayerKind::kCommon)[0].stream_gdof == Rational(0));
}

TEST_CASE("mixed-regime sub-case labels") {
  CHECK(gdof::synthesize(cfg(5, 3, Rational(7, 10), Rational(1, 2))).sub_case == SubCase::kInSq);
  CHECK(gdof::synthesize(cfg(5, 3, Rational(7, 10), Rational(7, 10))).sub_case == SubCase::kOutsideSq);
  CHECK(gdof::synthesize(cfg(5, 3, Rational(1, 2), 0)).sub_case == SubCase::kNone);
}

TEST_CASE("MAC reductions carry the expected levels") {
  SUBCASE("moderate interference") {
    const Rational a(7, 12), b(1, 6);
    const auto red = gdof::to_mac_instance(gdof::synthesize(cfg(5, 3, a, b)), 1);
    REQUIRE(red.instance.users() == 11);
    const std::vector<Rational> expect{1, 1, 1, 1 + b - a, 1 + b - a, 1 - a, 1 - a, 1 - a, a, a, a};
    CHECK(gdof::received_levels(red.instance) == expect);
  }
  SUBCASE("weak interference, zero-forced first after commons") {
    const Rational a(1, 3), b(1, 6);
    const auto s = gdof::synthesize(cfg(5, 3, a, b));
    const auto red = gdof::to_mac_instance(s, 1);
    REQUIRE(red.instance.users() == 5);
    const std::vector<Rational> demand{b, b, 1 - a, 1 - a, 1 - a};
    CHECK(red.demand == demand);
    // zero-forced streams arrive at 1 - alpha + beta, above the beta they carry
    const std::vector<Rational> levels{1 - a + b, 1 - a + b, 1 - a, 1 - a, 1 - a};
    CHECK(gdof::received_levels(red.instance) == levels);
  }
  SUBCASE("strong interference") {
    const Rational a(5, 4), b(1, 2);
    const Rational m = b + 1 - a;
    const auto red = gdof::to_mac_instance(gdof::synthesize(cfg(5, 3, a, b)), 2);
    REQUIRE(red.instance.users() == 8);
    const std::vector<Rational> expect{1, 1, 1, m, m, a, a, a};
    CHECK(sorted(gdof::received_levels(red.instance)) == sorted(expect));
  }
  CHECK_THROWS_AS(gdof::to_mac_instance(gdof::synthesize(cfg(5, 3, 1, 0)), 3), gdof::OutOfRange);
}

TEST_CASE("grid: achievability matches the formula, layers decodable") {
  for (auto [M, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 3}}) {
    for (const Rational& a : oracle::grid(12, 36)) {
      for (const Rational& b : oracle::grid(12, 36)) {
        if (b > a) break;
        const auto s = gdof::synthesize(cfg(M, N, a, b));
        CHECK(2 * s.per_user_gdof == oracle::sum_gdof(M, N, a, b));
        for (const auto& l : s.layers) {
          CHECK(l.stream_gdof >= Rational(0));
          CHECK(l.power_exponent >= Rational(0));
          if (l.kind == LayerKind::kPrivate) CHECK(l.power_exponent == a);
        }
        // symmetric between the users
        const auto u1 = s.layers_of(1);
        const auto u2 = s.layers_of(2);
        REQUIRE(u1.size() == u2.size());
        for (std::size_t i = 0; i < u1.size(); ++i) {
          CHECK(u1[i].kind == u2[i].kind);
          CHECK(u1[i].stream_gdof == u2[i].stream_gdof);
          CHECK(u1[i].power_exponent == u2[i].power_exponent);
        }
        for (int r = 1; r <= 2; ++r) {
          const auto red = gdof::to_mac_instance(s, r);
          CHECK(gdof::feasible(red.instance, red.demand).ok);
        }
      }
    }
  }
}
