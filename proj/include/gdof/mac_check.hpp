#pragma once

#include "gdof/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace gdof {

/// A multiple-access channel with M1 single-antenna transmitters at strength
/// P, M2 at strength P^alpha, an N-antenna receiver, and N noise terms whose
/// powers scale as P^(noise_exponents[m]). Transmitter k is limited to power
/// P^(-eta[k]).
struct MacInstance {
  int M1 = 0;
  int M2 = 0;
  int N = 1;
  Rational alpha{0};
  std::vector<Rational> eta;
  std::vector<Rational> noise_exponents;

  int users() const { return M1 + M2; }
};

inline constexpr int kMaxMacUsers = 22;

void validate(const MacInstance& instance);

/// Received level of each transmitter: (1 - eta)^+ for the first M1 and
/// (alpha - eta)^+ for the rest.
std::vector<Rational> received_levels(const MacInstance& instance);

/// Right-hand side of the subset constraint for subset `mask` (bit k set ->
/// transmitter k in S): the min(|S|, N) largest levels inside S minus the
/// min(|S|, N) smallest noise exponents.
Rational subset_capacity(const MacInstance& instance, std::uint32_t mask);

struct MacVerdict {
  bool ok = true;
  std::vector<int> violated_subset;  ///< 1-based indices, ascending
  Rational lhs{0};
  Rational rhs{0};
  std::uint64_t subsets_checked = 0;
};

/// Checks every nonempty subset S of the transmitters against
/// sum_{i in S} d_i <= subset_capacity(S). Returns the first violated subset
/// in lexicographic order of its sorted index list.
MacVerdict feasible(const MacInstance& instance, const std::vector<Rational>& d);

/// Lexicographic comparison of subsets given as bitmasks (compares sorted
/// index lists; a proper prefix sorts first).
bool subset_lex_less(std::uint32_t a, std::uint32_t b);

/// Generic N x 1 direction vectors of the transmitters (columns of H) and of
/// the noise terms (columns of G).
struct MacDirections {
  Eigen::MatrixXd H;
  Eigen::MatrixXd G;
};

/// Smallest |det| over all N x N column submatrices of an N x C matrix
/// (0 when C < N).
double min_square_minor(const Eigen::MatrixXd& A);

/// Entries have magnitude uniform in [1/2, 2] with random sign; the draw is
/// repeated until every N x N submatrix of [H G] has |det| >= 1e-3.
MacDirections draw_mac_directions(const MacInstance& instance, std::uint64_t seed);

/// Finite-SNR conditional mutual information I(T_S; Q | T_{S^c}) in nats for
/// independent Gaussian inputs at powers P^(-eta). Only meaningful as a slope
/// diagnostic against (1/2) log P.
double finite_snr_rate(const MacInstance& instance, const MacDirections& dirs, std::uint32_t mask,
                       double P);
double finite_snr_rate(const MacInstance& instance, std::uint32_t mask, double P,
                       std::uint64_t seed);

/// (1/2) log det(K + A A^T) - (1/2) log det K in nats, for noise covariance K
/// and received signal columns A. Throws NumericalFailure when K is not
/// positive definite.
double gaussian_rate(const Eigen::MatrixXd& noise_cov, const Eigen::MatrixXd& signals);

}  // namespace gdof
