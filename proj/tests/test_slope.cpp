#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/serialize.hpp"
#include "gdof/slope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using gdof::Rational;
using gdof::SystemConfig;

namespace {

gdof::SlopeSettings quick(int trials) {
  gdof::SlopeSettings s;
  s.trials = trials;
  return s;
}

}  // namespace

TEST_CASE("no interference behaves like parallel point-to-point links") {
  const auto scheme = gdof::synthesize(SystemConfig{5, 3, 0, 0});
  const auto r = gdof::slope_check(scheme, quick(10));
  CHECK(r.target == Rational(6));
  CHECK(r.trials == 10);
  INFO("extrapolated " << r.extrapolated_slope);
  CHECK(std::abs(r.extrapolated_slope - 6.0) <= 0.05 * 6.0);
  CHECK(r.within_tolerance);
  CHECK(r.max_spectral_norm_U == doctest::Approx(1.0));
  // joint rows plus one row per receiver at every grid point
  CHECK(r.rows.size() == 15);
  for (const auto& row : r.rows) {
    CHECK(row.sum_rate > 0.0);
    CHECK(row.normalized_slope == doctest::Approx(row.sum_rate / (0.5 * std::log(row.P))));
  }
}

TEST_CASE("perfect-knowledge endpoint") {
  const auto r = gdof::slope_check(gdof::synthesize(SystemConfig{5, 3, 1, 1}), quick(5));
  CHECK(r.target == Rational(5));
  CHECK(r.relative_error <= 0.1);
}

TEST_CASE("grid validation") {
  const auto scheme = gdof::synthesize(SystemConfig{3, 2, 1, 0});
  auto s = quick(1);
  s.P_grid = {1e4, 1e8};
  CHECK_THROWS_AS(gdof::slope_check(scheme, s), gdof::InvalidConfig);
  s.P_grid = {1e4, 1e6, 1e5};
  CHECK_THROWS_AS(gdof::slope_check(scheme, s), gdof::InvalidConfig);
  s.P_grid = {1e4, 1e5, 1e6};
  CHECK_THROWS_AS(gdof::slope_check(scheme, s), gdof::InvalidConfig);
  s.P_grid = {1e4, 1e6, 1e8};
  s.trials = 0;
  CHECK_THROWS_AS(gdof::slope_check(scheme, s), gdof::InvalidConfig);
}

TEST_CASE("reports are reproducible and independent of the worker count") {
  const auto scheme = gdof::synthesize(SystemConfig{4, 2, Rational(3, 4), Rational(1, 4)});
  auto s = quick(4);
  s.P_grid = {1e4, 1e6, 1e8};
  const auto a = gdof::slope_check(scheme, s);
  s.jobs = 3;
  const auto b = gdof::slope_check(scheme, s);
  CHECK(gdof::slope_csv(a) == gdof::slope_csv(b));
  CHECK(gdof::to_json(a).dump() == gdof::to_json(b).dump());
  s.seed = 2;
  CHECK(gdof::slope_csv(gdof::slope_check(scheme, s)) != gdof::slope_csv(a));
}

TEST_CASE("slope csv layout") {
  auto s = quick(2);
  s.P_grid = {1e4, 1e6, 1e8};
  const auto r = gdof::slope_check(gdof::synthesize(SystemConfig{2, 1, Rational(1, 2), 0}), s);
  const std::string csv = gdof::slope_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "P,receiver,sum_rate,normalized_slope");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == 9);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
}

TEST_CASE("csv helpers") {
  CHECK(gdof::csv_field("plain") == "plain");
  CHECK(gdof::csv_field("a,b") == "\"a,b\"");
  CHECK(gdof::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(gdof::csv_record({"1", "x,y"}) == "1,\"x,y\"\n");
  CHECK(gdof::format_double(0.1) == "0.1");
  CHECK(gdof::format_double(1e8) == "1e+08");
}
