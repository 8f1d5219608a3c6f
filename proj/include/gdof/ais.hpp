#pragma once

#include "gdof/gdof_core.hpp"
#include "gdof/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace gdof {

/// Aligned-image-sets experiment at n = 1. Receiver 1 sees the interference
/// image U (N rows) and receiver 2 the image U' that also carries the
/// gamma-level contribution of transmitter 1:
///   U_j  = L_j1((X_2a)^alpha) + Lb_j((X_2b)^(alpha - beta))
///   U'_j = L_j2((X_2a)^1; (X_2b)^1; (X_1a)^gamma; (X_1b)^((gamma - beta)^+))  for j <= nhat
///   U'_j = L_j3((X_2a)^1; (X_1a)^gamma; (X_1b)^((gamma - beta)^+))            otherwise
struct AlignmentModel {
  SystemConfig config;
  std::int64_t P = 16;
  Rational gamma{0};
  double delta1 = 1.0;
  double delta2 = 2.0;
  double fmax = 1.0;
  Eigen::MatrixXd h_interference;  ///< N x N, coefficients of (X_2a)^alpha in U
  Eigen::MatrixXd h_observed;      ///< N x 2M over [X_2a; X_2b; X_1a; X_1b]; X_2b columns zero past nhat

  // Divisors pbar(P, A - level) for the truncation levels in use, where
  // A = max(1, alpha) is the input alphabet exponent. Filled by
  // make_alignment_model so the sampling loops stay in integer arithmetic.
  std::int64_t xmax = 0;
  std::int64_t div_alpha = 1;
  std::int64_t div_alpha_minus_beta = 1;
  std::int64_t div_one = 1;
  std::int64_t div_gamma = 1;
  std::int64_t div_gamma_minus_beta = 1;

  std::int64_t input_max() const { return xmax; }
};

/// Freezes the arbitrary coefficients; h_interference is redrawn until
/// |det| >= delta1.
AlignmentModel make_alignment_model(const SystemConfig& config, std::int64_t P,
                                    const Rational& gamma, double delta1, double delta2,
                                    double fmax, std::uint64_t seed);

/// One realization of the bounded-density coefficients: N x (M - N).
Eigen::MatrixXd draw_bounded_coefficients(const AlignmentModel& model, std::uint64_t seed,
                                          std::uint64_t stream);

std::vector<std::int64_t> interference_image(const AlignmentModel& model, const Eigen::MatrixXd& g,
                                             const std::vector<std::int64_t>& x2);
std::vector<std::int64_t> observed_image(const AlignmentModel& model,
                                         const std::vector<std::int64_t>& x1,
                                         const std::vector<std::int64_t>& x2);

/// max_j |(E_2j)^(alpha - beta) - (F_2j)^(alpha - beta)| over the zero-forced
/// antennas j = N+1..M.
std::int64_t alignment_spread(const AlignmentModel& model, const std::vector<std::int64_t>& e2,
                              const std::vector<std::int64_t>& f2);

/// prod over the N rows of 2 M fmax / A, or 1 when A = 0 (no factor).
double alignment_probability_bound(const AlignmentModel& model, std::int64_t spread);

/// |S_nu| for every representative nu: the number of representatives whose
/// interference image equals nu's under coefficient draw g.
std::vector<std::int64_t> aligned_set_sizes(const AlignmentModel& model, const Eigen::MatrixXd& g,
                                            const std::vector<std::vector<std::int64_t>>& reps);

/// Closed-form upper bound on E|S_nu| for one channel use (harmonic-sum form,
/// natural logarithm), with c_k, c_l and the per-row Delta, Pcheck_i.
double expected_set_size_bound(const AlignmentModel& model);

struct AisSettings {
  SystemConfig config;
  std::vector<std::int64_t> P_grid{16, 64, 256};
  Rational gamma{0};
  int trials = 10000;
  int pairs = 200;
  double delta1 = 1.0;
  double delta2 = 2.0;
  double fmax = 1.0;  ///< must be >= 1
  std::uint64_t seed = 7;
  int jobs = 1;
  double z = 2.576;   ///< two-sided 99% normal quantile for the binomial interval
};

struct AisPairRecord {
  std::int64_t P = 0;
  int pair_id = 0;
  std::vector<std::int64_t> e2;
  std::vector<std::int64_t> f2;
  std::int64_t spread = 0;
  std::int64_t aligned = 0;
  std::int64_t samples = 0;
  double empirical_p = 0;
  double ci_half_width = 0;
  double bound_p = 1;
  double margin = 0;  ///< bound_p - empirical_p
  bool within_bound = true;
};

struct AisSizeRecord {
  std::int64_t P = 0;
  std::int64_t pbar_one = 0;
  std::int64_t representatives = 0;
  std::int64_t samples = 0;
  double max_expected_size = 0;
  double max_ci_half_width = 0;
  double mean_expected_size = 0;
  double bound = 0;
  bool within_bound = true;
  double entropy_difference = 0;  ///< mean plug-in H(U') - H(U), nats
  double entropy_draws = 0;
  double lemma1_log_pbar = 0;     ///< lemma coefficient * ln(pbar_one)
};

struct AisReport {
  SystemConfig config;
  Rational gamma{0};
  std::uint64_t seed = 0;
  int trials = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<AisPairRecord> pairs;
  double pair_coverage = 1.0;  ///< fraction of pairs within the bound
  std::vector<AisSizeRecord> sizes;
  Rational lemma1_coefficient{0};
  double growth_exponent = 0;  ///< OLS slope of ln max E|S| against ln pbar(P, 1)
};

/// Monte Carlo check that the probability of two codewords producing the
/// same interference image is below the bounded-density product bound.
AisReport verify_alignment_probability(const AisSettings& settings);

/// Exhaustive enumeration of inputs at n = 1 with one representative per
/// distinct U' value; estimates E|S_nu| over coefficient draws and compares
/// it to the closed-form bound, then regresses the growth exponent.
AisReport verify_expected_set_size(const AisSettings& settings);

/// Both fragments merged into one report.
AisReport verify_ais(const AisSettings& settings);

}  // namespace gdof
