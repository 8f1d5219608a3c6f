#pragma once

#include "gdof/gdof_core.hpp"
#include "gdof/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gdof {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPerfectCsit = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitUsage = 64;

enum class BetaRule { kFixed, kFraction, kRange };

struct SweepSpec {
  int M = 2;
  int N = 1;
  Rational alpha_from{0};
  Rational alpha_to{1};
  Rational alpha_step{1, 24};
  BetaRule beta_rule = BetaRule::kFixed;
  Rational beta{0};             ///< fixed value, or the fraction of alpha
  Rational beta_from{0};        ///< kRange only
  Rational beta_to{0};
  Rational beta_step{1, 24};
  bool json = false;
  std::uint64_t seed = 0;
};

struct SweepRow {
  Rational alpha;
  Rational beta;
  GdofResult result;
};

/// Grid points in ascending alpha (then beta). An empty range gives no rows.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1);

/// Columns alpha, beta, sum_gdof (12 decimals), sum_gdof_exact, regime, branch.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Runs one command. args excludes the program name. Output goes to `out`
/// (or the --out file), diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdof
