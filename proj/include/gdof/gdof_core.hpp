#pragma once

#include "gdof/rational.hpp"

#include <optional>
#include <string_view>

namespace gdof {

/// Antenna counts and channel exponents of the symmetric two-user MIMO
/// interference channel. alpha is the cross-link strength exponent and beta
/// the CSIT quality exponent of the cross links.
struct SystemConfig {
  int M = 1;  ///< transmit antennas per user
  int N = 1;  ///< receive antennas per user
  Rational alpha{0};
  Rational beta{0};

  /// min(N, M - N): receive dimensions that see the zero-forced subspace.
  int nhat() const;
  /// (2N - M)^+: receive dimensions that do not.
  int ncheck() const;
};

/// The five alpha-intervals of the sum-GDoF characterization, endpoints
/// assigned exactly as (0, 1/2], (1/2, 2/3], (2/3, 1], (1, 2], (2, inf).
enum class Regime { kWeak, kModerate, kMixed, kStrong, kVeryStrong };

/// Which expression produced the value.
enum class Branch { kSingle, kMinLeft, kMinRight, kTrivialCap };

std::string_view regime_name(Regime r);
std::string_view branch_name(Branch b);

Regime classify(const Rational& alpha);

struct GdofResult {
  Rational sum_gdof;
  Regime regime = Regime::kWeak;
  Branch active_branch = Branch::kSingle;
  std::optional<Rational> bound_low;   ///< alpha <= 1 converse bound
  std::optional<Rational> bound_high;  ///< alpha > 2/3 converse bound
  bool clamped = false;                ///< input beta > alpha was lowered to alpha
  Rational beta_used;                  ///< beta after clamping
};

/// Checks M, N >= 1, alpha, beta >= 0 and N < M. Throws InvalidConfig or
/// PerfectCsitRegime.
void validate(const SystemConfig& config);

/// Returns the config with beta lowered to alpha when beta > alpha.
SystemConfig clamp_beta(SystemConfig config);

/// Sum GDoF d1 + d2 of the symmetric MIMO IC with partial CSIT, N < M.
GdofResult sum_gdof(const SystemConfig& config);

/// Evaluates branch expression `index` (0..4) of the piecewise sum-GDoF
/// formula at the given config, ignoring which interval alpha lies in. Used
/// to check that neighbouring branches agree at the breakpoints.
Rational branch_expression(int index, const SystemConfig& config);

/// Converse bound for alpha <= 1 (both Fano terms bounded with gamma = alpha).
Rational outer_bound_low(const SystemConfig& config);

/// Converse bound for alpha > 2/3 (one Fano term bounded with gamma = 0).
Rational outer_bound_high(const SystemConfig& config);

/// GDoF coefficient of n log Pbar in the entropy-difference bound:
///   nhat * max(1 - alpha + beta, gamma) + (N - nhat) * max(1 - alpha, gamma).
Rational lemma1_bound(const SystemConfig& config, const Rational& gamma);

}  // namespace gdof
