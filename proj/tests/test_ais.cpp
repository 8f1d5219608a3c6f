#include "doctest.h"

#include "gdof/ais.hpp"
#include "gdof/errors.hpp"

using gdof::Rational;
using gdof::SystemConfig;

namespace {

gdof::AisSettings tiny(Rational alpha, Rational beta, Rational gamma) {
  gdof::AisSettings s;
  s.config = SystemConfig{2, 1, alpha, beta};
  s.gamma = gamma;
  s.trials = 2000;
  s.pairs = 60;
  return s;
}

}  // namespace

TEST_CASE("alignment model") {
  const auto m = gdof::make_alignment_model(SystemConfig{3, 2, Rational(3, 2), Rational(1, 2)}, 16,
                                            Rational(1, 2), 1.0, 2.0, 1.0, 4);
  CHECK(m.input_max() == 8);  // pbar(16, 3/2)
  CHECK(m.div_alpha == 1);
  CHECK(m.div_alpha_minus_beta == 2);
  CHECK(m.div_one == 2);
  CHECK(std::abs(m.h_interference.determinant()) >= 1.0);
  CHECK(m.h_observed.rows() == 2);
  CHECK(m.h_observed.cols() == 6);
  // nhat = 1: the second row carries no own X_b term
  CHECK(m.h_observed(1, 2) == 0.0);
  CHECK_THROWS_AS(gdof::make_alignment_model(SystemConfig{2, 1, 1, 0}, 16, 0, 1.0, 2.0, 0.5, 1),
                  gdof::InvalidConfig);
}

TEST_CASE("identical codewords always align") {
  const auto m = gdof::make_alignment_model(SystemConfig{2, 1, 1, 0}, 64, 0, 1.0, 2.0, 1.0, 2);
  const std::vector<std::int64_t> e{3, 5};
  CHECK(gdof::alignment_spread(m, e, e) == 0);
  CHECK(gdof::alignment_probability_bound(m, 0) == 1.0);
  const auto g = gdof::draw_bounded_coefficients(m, 1, 1);
  CHECK(gdof::interference_image(m, g, e) == gdof::interference_image(m, g, e));
  // 2 M fmax / A per receive antenna
  CHECK(gdof::alignment_probability_bound(m, 8) == doctest::Approx(0.5));
  CHECK_THROWS_AS(gdof::interference_image(m, g, {9, 0}), gdof::OutOfAlphabet);
}

TEST_CASE("a single representative is its own aligned set") {
  const auto m = gdof::make_alignment_model(SystemConfig{2, 1, 1, 0}, 16, 0, 1.0, 2.0, 1.0, 2);
  const auto g = gdof::draw_bounded_coefficients(m, 3, 0);
  CHECK(gdof::aligned_set_sizes(m, g, {{1, 2}}) == std::vector<std::int64_t>{1});
  const auto sizes = gdof::aligned_set_sizes(m, g, {{1, 2}, {1, 2}, {0, 0}});
  CHECK(sizes == std::vector<std::int64_t>{2, 2, 1});
}

TEST_CASE("beta = alpha is skipped") {
  const auto r = gdof::verify_alignment_probability(tiny(1, 1, 0));
  CHECK(r.skipped);
  CHECK(r.pairs.empty());
}

TEST_CASE("alignment probability stays under the product bound") {
  // beta = 0 leaves the full top level of X_b, so spreads reach 2 M fmax
  auto s = tiny(1, 0, 0);
  s.P_grid = {64, 256};
  const auto r = gdof::verify_alignment_probability(s);
  CHECK_FALSE(r.skipped);
  CHECK(r.pairs.size() == 120);
  CHECK(r.pair_coverage >= 0.99);
  int informative = 0;
  for (const auto& p : r.pairs) {
    CHECK(p.samples == 2000);
    CHECK(p.e2 != p.f2);
    CHECK(p.margin == doctest::Approx(p.bound_p - p.empirical_p));
    if (p.bound_p < 1.0) ++informative;
  }
  CHECK(informative > 0);
}

TEST_CASE("expected aligned-set size") {
  auto s = tiny(Rational(1, 2), 0, 0);
  s.trials = 500;
  const auto r = gdof::verify_expected_set_size(s);
  REQUIRE(r.sizes.size() == 3);
  CHECK(r.lemma1_coefficient == Rational(1, 2));
  for (const auto& rec : r.sizes) {
    CHECK(rec.within_bound);
    CHECK(rec.max_expected_size >= 1.0);
    CHECK(rec.representatives >= 1);
    CHECK(rec.entropy_difference >= -1e-12);
  }
  CHECK(r.growth_exponent <= 0.5 + 0.15);
}

TEST_CASE("settings validation") {
  auto s = tiny(1, 0, 0);
  s.fmax = 0.5;
  CHECK_THROWS_AS(gdof::verify_ais(s), gdof::InvalidConfig);
  s = tiny(1, 0, 0);
  s.config = SystemConfig{5, 3, 1, 0};
  CHECK_THROWS_AS(gdof::verify_ais(s), gdof::InvalidConfig);
  s = tiny(1, 0, 0);
  s.P_grid = {512};
  CHECK_THROWS_AS(gdof::verify_ais(s), gdof::InvalidConfig);
  s = tiny(1, 0, Rational(3, 2));
  CHECK_THROWS_AS(gdof::verify_ais(s), gdof::OutOfRange);
  s = tiny(1, 0, 0);
  s.config = SystemConfig{3, 2, 2, 0};
  s.P_grid = {256};
  CHECK_THROWS_AS(gdof::verify_expected_set_size(s), gdof::InfeasibleEnumeration);
}

TEST_CASE("reports do not depend on the worker count") {
  auto s = tiny(Rational(3, 4), Rational(1, 4), Rational(3, 4));
  s.trials = 300;
  s.pairs = 20;
  s.P_grid = {16, 64};
  const auto a = gdof::verify_ais(s);
  s.jobs = 4;
  const auto b = gdof::verify_ais(s);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].aligned == b.pairs[i].aligned);
    CHECK(a.pairs[i].e2 == b.pairs[i].e2);
  }
  REQUIRE(a.sizes.size() == b.sizes.size());
  for (std::size_t i = 0; i < a.sizes.size(); ++i) {
    CHECK(a.sizes[i].max_expected_size == b.sizes[i].max_expected_size);
    CHECK(a.sizes[i].entropy_difference == b.sizes[i].entropy_difference);
  }
  CHECK(a.growth_exponent == b.growth_exponent);
}
