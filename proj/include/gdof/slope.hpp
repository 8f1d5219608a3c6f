#pragma once

#include "gdof/rational.hpp"
#include "gdof/scheme.hpp"

#include <cstdint>
#include <vector>

namespace gdof {

struct SlopeSettings {
  std::vector<double> P_grid{1e4, 1e5, 1e6, 1e7, 1e8};
  int trials = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
  double delta1 = 0.5;
  double delta2 = 2.0;
};

struct SlopeRow {
  double P = 0;
  int receiver = 0;  ///< 1 or 2; 0 is the joint row (worst receiver per draw)
  double sum_rate = 0;          ///< nats, mean over draws
  double normalized_slope = 0;  ///< sum_rate / ((1/2) ln P)
};

struct SlopeReport {
  SystemConfig config;
  Rational target{0};  ///< sum GDoF
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<SlopeRow> rows;
  double extrapolated_slope = 0;  ///< intercept of normalized_slope against 1 / ln P (joint rows)
  double fit_slope = 0;
  double relative_error = 0;
  bool within_tolerance = false;  ///< relative_error <= 0.1
  bool monotone_toward_target = false;
  double max_spectral_norm_U = 0;
};

/// Finite-SNR check of the layered scheme. Each draw fixes a channel
/// realization valid over the whole grid. Each stream carrying GDoF is sent
/// at power P^(-eta) (total power at most the stream count, a constant):
/// common and private streams on generic unit directions, zero-forced
/// streams on zf_vectors. Receiver r jointly decodes its own streams and the other
/// user's common streams, treating the rest as noise. The largest t for
/// which rates t d (1/2) ln P satisfy every Gaussian MAC constraint gives
/// the normalized sum rate t * sum GDoF.
SlopeReport slope_check(const Scheme& scheme, const SlopeSettings& settings);

}  // namespace gdof
