#pragma once

#include "gdof/gdof_core.hpp"
#include "gdof/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace gdof {

/// Partial-CSIT channel realization. Indices are [receiver - 1][transmitter - 1];
/// each link is N x M. The transmitters know Ghat; the effective channel is
/// Ghat + P^(-beta/2) Gtilde.
struct ChannelRealization {
  SystemConfig config;
  double P = 1e4;
  double delta1 = 0.5;
  double delta2 = 2.0;
  std::array<std::array<Eigen::MatrixXd, 2>, 2> Ghat;
  std::array<std::array<Eigen::MatrixXd, 2>, 2> Gtilde;
  std::array<std::array<Rational, 2>, 2> beta;

  Eigen::MatrixXd effective(int r, int s) const;
  /// Same estimates and errors viewed at another SNR.
  ChannelRealization at_power(double P) const;
};

/// Rejection-samples Ghat and Gtilde entrywise (magnitude uniform on
/// [delta1, delta2], random sign) until every effective entry lies in
/// [delta1, delta2] in magnitude and every N x N minor has |det| >= delta1.
/// Every link uses beta = config.beta.
ChannelRealization draw_channel(const SystemConfig& config, double P, double delta1, double delta2,
                                std::uint64_t seed);

/// As above, but the invariants must hold at every P in P_grid; the
/// realization is returned at P_grid.front().
ChannelRealization draw_channel(const SystemConfig& config, const std::vector<double>& P_grid,
                                double delta1, double delta2, std::uint64_t seed);

/// True when the effective channel at real.P satisfies the entry and minor
/// invariants.
bool satisfies_invariants(const ChannelRealization& real);

struct TransformedChannel {
  std::array<Eigen::MatrixXd, 2> U;        ///< M x M, orthogonal, det +1; last M - N columns null Ghat[other][i]
  std::array<Eigen::MatrixXd, 2> Uprime;   ///< N x N, orthogonal, det +1
  std::array<Eigen::MatrixXd, 2> direct;   ///< U'_i G_ii U_i
  std::array<Eigen::MatrixXd, 2> cross;    ///< U'_i G_i,other U_other
  std::array<double, 2> null_residual{};   ///< ||Ghat[other][i] U_i[:, N..M)|| / ||Ghat[other][i]||
  std::array<double, 2> block_residual{};  ///< ||lower-right ncheck x (M - N) of direct_i|| / ||G_ii||
  std::array<double, 2> det_U{};
  std::array<double, 2> det_Uprime{};
  std::array<double, 2> spectral_norm_U{};
};

TransformedChannel equivalent_transform(const ChannelRealization& real);

/// nhat orthonormal columns (M x nhat) in the null space of Ghat[other][user].
Eigen::MatrixXd zf_vectors(const ChannelRealization& real, int user);

/// ||G_eff[other][user] V||_F^2 for the zero-forcing vectors of `user`.
double leakage_power(const ChannelRealization& real, int user, const Eigen::MatrixXd& V);

/// log(leak(P2) / leak(P1)) / log(P2 / P1) with V fixed from the estimates.
double leakage_slope(const ChannelRealization& real, int user, double P1, double P2);

}  // namespace gdof
