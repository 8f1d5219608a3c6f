#pragma once

#include "gdof/gdof_core.hpp"
#include "gdof/mac_check.hpp"
#include "gdof/rational.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace gdof {

enum class LayerKind { kCommon, kZeroForced, kPrivate };

std::string_view layer_kind_name(LayerKind k);

/// One codeword stream of the layered rate-splitting scheme. Transmit power
/// scales as P^(-power_exponent); the stream carries stream_gdof.
struct Layer {
  int user = 1;
  LayerKind kind = LayerKind::kCommon;
  int stream_index = 1;  ///< 1-based within (user, kind)
  Rational power_exponent{0};
  Rational stream_gdof{0};
};

/// Sub-case of the 2/3 < alpha <= 1 interval: (a) inside S_q, the first
/// argument of the min is smaller; (b) otherwise.
enum class SubCase { kNone, kInSq, kOutsideSq };

struct Scheme {
  SystemConfig config;  ///< beta already clamped to <= alpha
  Regime regime = Regime::kWeak;
  SubCase sub_case = SubCase::kNone;
  Rational per_user_gdof{0};
  /// Received level of each zero-forced stream at its own receiver minus the
  /// GDoF it carries: 1 - alpha for alpha <= 1, zero above.
  Rational zero_forced_margin{0};
  std::vector<Layer> layers;

  std::vector<Layer> layers_of(int user) const;
  std::vector<Layer> layers_of(int user, LayerKind kind) const;
};

/// Membership in S_q for 2/3 < alpha <= 1 and 0 <= beta <= alpha.
bool in_sq(const SystemConfig& config);

/// Builds the common / zero-forced / private layering for the given config.
/// The resulting per-user GDoF is exactly half the sum GDoF.
Scheme synthesize(const SystemConfig& config);

/// The single-antenna-per-codeword MAC seen by `receiver` (1 or 2): the
/// desired user's streams at strength 1 followed by the interferer's common
/// streams at strength alpha. Codeword order follows the decoding reductions
/// (common, zero-forced, private, interferer common). The d vector carries
/// the stream GDoF of each codeword in the same order.
struct MacReduction {
  MacInstance instance;
  std::vector<Rational> demand;
  std::vector<Layer> codewords;
};

MacReduction to_mac_instance(const Scheme& scheme, int receiver);

}  // namespace gdof
