#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/gdof_core.hpp"
#include "oracles.hpp"

using gdof::Branch;
using gdof::Rational;
using gdof::Regime;
using gdof::SystemConfig;

namespace {

SystemConfig cfg(int M, int N, Rational a, Rational b) { return SystemConfig{M, N, a, b}; }
const std::vector<std::pair<int, int>> kAntennas{{2, 1}, {3, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 3}};

}  // namespace

TEST_CASE("derived dimensions") {
  CHECK(cfg(5, 3, 0, 0).nhat() == 2);
  CHECK(cfg(5, 3, 0, 0).ncheck() == 1);
  CHECK(cfg(4, 3, 0, 0).nhat() == 1);
  CHECK(cfg(4, 3, 0, 0).ncheck() == 2);
  CHECK(cfg(6, 2, 0, 0).nhat() == 2);
  CHECK(cfg(6, 2, 0, 0).ncheck() == 0);
}

TEST_CASE("regime boundaries are assigned as printed") {
  CHECK(gdof::classify(Rational(0)) == Regime::kWeak);
  CHECK(gdof::classify(Rational(1, 2)) == Regime::kWeak);
  CHECK(gdof::classify(Rational(13, 24)) == Regime::kModerate);
  CHECK(gdof::classify(Rational(2, 3)) == Regime::kModerate);
  CHECK(gdof::classify(Rational(1)) == Regime::kMixed);
  CHECK(gdof::classify(Rational(2)) == Regime::kStrong);
  CHECK(gdof::classify(Rational(49, 24)) == Regime::kVeryStrong);
  CHECK(gdof::regime_name(Regime::kVeryStrong) == "alpha>2");
}

TEST_CASE("sum_gdof worked examples") {
  auto r = gdof::sum_gdof(cfg(5, 3, 3, 0));
  CHECK(r.sum_gdof == Rational(6));
  CHECK(r.regime == Regime::kVeryStrong);
  CHECK(r.active_branch == Branch::kTrivialCap);

  CHECK(gdof::sum_gdof(cfg(5, 3, 0, 0)).sum_gdof == Rational(6));

  // min(2*3*1 + 2*2*0, 6 - 3 + 0) = min(6, 3)
  r = gdof::sum_gdof(cfg(5, 3, 1, 0));
  CHECK(r.sum_gdof == Rational(3));
  CHECK(r.active_branch == Branch::kMinRight);
  REQUIRE(r.bound_low.has_value());
  REQUIRE(r.bound_high.has_value());
  CHECK(*r.bound_low == Rational(6));
  CHECK(*r.bound_high == Rational(3));

  // min(6, 3 + 2) = 5 = min(2N, M)
  CHECK(gdof::sum_gdof(cfg(5, 3, 1, 1)).sum_gdof == Rational(5));

  // 2*3*(1/2) + 2*2*(1/4) = 4 from both sides of the breakpoint
  CHECK(gdof::sum_gdof(cfg(5, 3, Rational(1, 2), Rational(1, 4))).sum_gdof == Rational(4));
  CHECK(gdof::branch_expression(1, cfg(5, 3, Rational(1, 2), Rational(1, 4))) == Rational(4));

  // min(9/2 + 4 (-1/4)^+, 6 - 9/4 + 1/2) = 17/4
  CHECK(gdof::sum_gdof(cfg(5, 3, Rational(3, 4), Rational(1, 4))).sum_gdof == Rational(17, 4));
}

TEST_CASE("errors and clamping") {
  CHECK_THROWS_AS(gdof::sum_gdof(cfg(3, 3, 1, 0)), gdof::PerfectCsitRegime);
  CHECK_THROWS_AS(gdof::sum_gdof(cfg(2, 3, 1, 0)), gdof::PerfectCsitRegime);
  CHECK_THROWS_AS(gdof::sum_gdof(cfg(5, 3, Rational(-1, 2), 0)), gdof::InvalidConfig);
  CHECK_THROWS_AS(gdof::sum_gdof(cfg(5, 3, 1, Rational(-1))), gdof::InvalidConfig);

  const auto r = gdof::sum_gdof(cfg(5, 3, Rational(1, 2), 1));
  CHECK(r.clamped);
  CHECK(r.beta_used == Rational(1, 2));
  CHECK(r.sum_gdof == gdof::sum_gdof(cfg(5, 3, Rational(1, 2), Rational(1, 2))).sum_gdof);
  CHECK_FALSE(gdof::sum_gdof(cfg(5, 3, Rational(1, 2), Rational(1, 2))).clamped);
}

TEST_CASE("outer bounds") {
  CHECK(gdof::outer_bound_low(cfg(5, 3, Rational(1, 2), Rational(1, 2))) == Rational(5));
  CHECK(gdof::outer_bound_low(cfg(3, 2, 0, 0)) == Rational(4));
  CHECK(gdof::outer_bound_low(cfg(5, 3, 1, 0)) == Rational(6));
  CHECK_THROWS_AS(gdof::outer_bound_low(cfg(5, 3, Rational(25, 24), 0)), gdof::OutOfRange);

  CHECK(gdof::outer_bound_high(cfg(5, 3, 1, 0)) == Rational(3));
  CHECK(gdof::outer_bound_high(cfg(5, 3, 3, 0)) == Rational(6));
  CHECK(gdof::outer_bound_high(cfg(5, 3, 2, 0)) == Rational(6));
  CHECK_THROWS_AS(gdof::outer_bound_high(cfg(5, 3, Rational(2, 3), 0)), gdof::OutOfRange);
}

TEST_CASE("lemma1 coefficient") {
  CHECK(gdof::lemma1_bound(cfg(5, 3, 1, 0), 0) == Rational(0));
  CHECK(gdof::lemma1_bound(cfg(5, 3, Rational(3, 4), Rational(1, 4)), Rational(3, 4)) == Rational(9, 4));
  CHECK(gdof::lemma1_bound(cfg(4, 3, Rational(1, 2), Rational(1, 2)), 0) == Rational(2));
  CHECK_THROWS_AS(gdof::lemma1_bound(cfg(5, 3, 1, 0), Rational(5, 4)), gdof::OutOfRange);
  CHECK_THROWS_AS(gdof::lemma1_bound(cfg(5, 3, 1, 0), Rational(-1, 4)), gdof::OutOfRange);
}

TEST_CASE("grid properties against the transcribed formula") {
  for (auto [M, N] : kAntennas) {
    for (const Rational& a : oracle::grid(24, 72)) {
      Rational previous(-1);
      for (const Rational& b : oracle::grid(24, 72)) {
        if (b > a + Rational(1, 4)) break;  // a few clamped points past alpha
        const auto r = gdof::sum_gdof(cfg(M, N, a, b));
        CHECK(r.sum_gdof == oracle::sum_gdof(M, N, a, b));
        CHECK(r.sum_gdof >= Rational(N));
        CHECK(r.sum_gdof <= Rational(2 * N));
        CHECK(r.sum_gdof >= previous);  // nondecreasing in beta
        previous = r.sum_gdof;
        if (r.bound_low && r.bound_high) CHECK(r.sum_gdof == std::min(*r.bound_low, *r.bound_high));
      }
    }
    CHECK(gdof::sum_gdof(cfg(M, N, 1, 1)).sum_gdof == Rational(std::min(2 * N, M)));
  }
}

TEST_CASE("breakpoint continuity") {
  for (auto [M, N] : kAntennas) {
    const std::vector<std::pair<Rational, int>> points{
        {Rational(1, 2), 0}, {Rational(2, 3), 1}, {Rational(1), 2}, {Rational(2), 3}};
    for (auto [a, left] : points) {
      for (const Rational& b : oracle::grid(24, 48)) {
        if (b > a) break;
        CHECK(gdof::branch_expression(left, cfg(M, N, a, b)) ==
              gdof::branch_expression(left + 1, cfg(M, N, a, b)));
      }
    }
  }
}

TEST_CASE("converse consistency and lemma specialization") {
  for (auto [M, N] : kAntennas) {
    for (const Rational& a : oracle::grid(24, 72)) {
      for (const Rational& b : oracle::grid(24, 72)) {
        if (b > a) break;
        const auto c = cfg(M, N, a, b);
        const Rational s = gdof::sum_gdof(c).sum_gdof;
        if (a <= Rational(2, 3)) {
          CHECK(s == std::min(gdof::outer_bound_low(c), Rational(2 * N)));
        } else if (a <= Rational(1)) {
          CHECK(s == std::min(gdof::outer_bound_low(c), gdof::outer_bound_high(c)));
        } else {
          CHECK(s == gdof::outer_bound_high(c));
        }
        if (a <= Rational(1)) CHECK(2 * gdof::lemma1_bound(c, a) == gdof::outer_bound_low(c));
      }
    }
  }
}
