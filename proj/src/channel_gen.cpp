#include "gdof/channel_gen.hpp"

#include "gdof/errors.hpp"
#include "gdof/mac_check.hpp"
#include "gdof/random.hpp"

#include <cmath>

namespace gdof {

namespace {

constexpr int kDrawBudget = 10000;
constexpr double kRankTolerance = 1e-10;

double error_scale(double P, const Rational& beta) { return std::pow(P, -0.5 * to_double(beta)); }

bool entry_ok(double g, double d1, double d2) {
  const double a = std::abs(g);
  return a >= d1 && a <= d2;
}

// Full orthonormal basis whose first rank columns span the columns of A.
Eigen::MatrixXd full_q(const Eigen::MatrixXd& A) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  return qr.householderQ() * Eigen::MatrixXd::Identity(A.rows(), A.rows());
}

void fix_sign_column(Eigen::MatrixXd& Q) {
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
}

void require_full_row_rank(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= kRankTolerance * s(0)) {
    throw NullSpaceDeficient("estimate does not have full row rank; null space dimension exceeds M - N");
  }
}

}  // namespace

Eigen::MatrixXd ChannelRealization::effective(int r, int s) const {
  if (r < 1 || r > 2 || s < 1 || s > 2) throw OutOfRange("link indices must be 1 or 2");
  return Ghat[r - 1][s - 1] + error_scale(P, beta[r - 1][s - 1]) * Gtilde[r - 1][s - 1];
}

ChannelRealization ChannelRealization::at_power(double new_P) const {
  if (!(new_P > 1.0)) throw OutOfRange("P must exceed 1");
  ChannelRealization out = *this;
  out.P = new_P;
  return out;
}

bool satisfies_invariants(const ChannelRealization& real) {
  for (int r = 1; r <= 2; ++r) {
    for (int s = 1; s <= 2; ++s) {
      const Eigen::MatrixXd G = real.effective(r, s);
      for (Eigen::Index i = 0; i < G.size(); ++i) {
        if (!entry_ok(G(i), real.delta1, real.delta2)) return false;
      }
      if (min_square_minor(G) < real.delta1) return false;
    }
  }
  return true;
}

ChannelRealization draw_channel(const SystemConfig& config, const std::vector<double>& P_grid,
                                double delta1, double delta2, std::uint64_t seed) {
  validate(config);
  if (P_grid.empty()) throw InvalidConfig("P grid is empty");
  for (double P : P_grid) {
    if (!(P > 1.0)) throw OutOfRange("P must exceed 1");
  }
  if (!(delta1 > 0 && delta1 <= 1 && delta2 >= 1 && delta1 < delta2)) {
    throw InvalidConfig("need 0 < delta1 <= 1 <= delta2 and delta1 < delta2");
  }
  ChannelRealization real;
  real.config = clamp_beta(config);
  real.P = P_grid.front();
  real.delta1 = delta1;
  real.delta2 = delta2;
  for (auto& row : real.beta) row.fill(real.config.beta);

  const int N = config.N;
  const int M = config.M;
  Rng rng(seed, 0xc4a);
  // The four links are independent and the invariants are per link, so each
  // link is rejection-sampled on its own.
  for (int r = 0; r < 2; ++r) {
    for (int s = 0; s < 2; ++s) {
      bool accepted = false;
      for (int attempt = 0; attempt < kDrawBudget && !accepted; ++attempt) {
        Eigen::MatrixXd gh(N, M);
        Eigen::MatrixXd gt(N, M);
        for (int i = 0; i < N * M; ++i) {
          bool placed = false;
          for (int tries = 0; tries < kDrawBudget && !placed; ++tries) {
            gh(i) = rng.signed_magnitude(delta1, delta2);
            gt(i) = rng.signed_magnitude(delta1, delta2);
            placed = true;
            for (double P : P_grid) {
              if (!entry_ok(gh(i) + error_scale(P, real.beta[r][s]) * gt(i), delta1, delta2)) {
                placed = false;
                break;
              }
            }
          }
          if (!placed) throw RejectionBudgetExceeded("no channel entry satisfies the magnitude bounds");
        }
        accepted = true;
        for (double P : P_grid) {
          if (min_square_minor(gh + error_scale(P, real.beta[r][s]) * gt) < delta1) {
            accepted = false;
            break;
          }
        }
        if (accepted) {
          real.Ghat[r][s] = gh;
          real.Gtilde[r][s] = gt;
        }
      }
      if (!accepted) throw RejectionBudgetExceeded("channel draw exceeded the rejection budget");
    }
  }
  return real;
}

ChannelRealization draw_channel(const SystemConfig& config, double P, double delta1, double delta2,
                                std::uint64_t seed) {
  return draw_channel(config, std::vector<double>{P}, delta1, delta2, seed);
}

TransformedChannel equivalent_transform(const ChannelRealization& real) {
  validate(real.config);
  const int N = real.config.N;
  const int M = real.config.M;
  const int ncheck = real.config.ncheck();
  TransformedChannel t;

  for (int i = 0; i < 2; ++i) {
    const int other = 1 - i;
    const Eigen::MatrixXd& cross_hat = real.Ghat[other][i];
    require_full_row_rank(cross_hat);
    Eigen::MatrixXd U = full_q(cross_hat.transpose());
    fix_sign_column(U);
    t.U[i] = U;
    t.det_U[i] = U.determinant();
    t.spectral_norm_U[i] = Eigen::JacobiSVD<Eigen::MatrixXd>(U).singularValues()(0);
    t.null_residual[i] = (cross_hat * U.rightCols(M - N)).norm() / cross_hat.norm();
  }

  for (int i = 0; i < 2; ++i) {
    const Eigen::MatrixXd G = real.effective(i + 1, i + 1);
    const Eigen::MatrixXd right = G * t.U[i].rightCols(M - N);
    // Rows of U' past the span of the right block annihilate it.
    Eigen::MatrixXd Q = full_q(right);
    fix_sign_column(Q);
    t.Uprime[i] = Q.transpose();
    t.det_Uprime[i] = t.Uprime[i].determinant();
    t.direct[i] = t.Uprime[i] * G * t.U[i];
    t.cross[i] = t.Uprime[i] * real.effective(i + 1, 2 - i) * t.U[1 - i];
    t.block_residual[i] =
        ncheck == 0 ? 0.0 : t.direct[i].bottomRightCorner(ncheck, M - N).norm() / G.norm();
  }
  return t;
}

Eigen::MatrixXd zf_vectors(const ChannelRealization& real, int user) {
  validate(real.config);
  if (user != 1 && user != 2) throw OutOfRange("user must be 1 or 2");
  const int N = real.config.N;
  const Eigen::MatrixXd& cross_hat = real.Ghat[2 - user][user - 1];
  require_full_row_rank(cross_hat);
  const Eigen::MatrixXd U = full_q(cross_hat.transpose());
  return U.middleCols(N, real.config.nhat());
}

double leakage_power(const ChannelRealization& real, int user, const Eigen::MatrixXd& V) {
  if (user != 1 && user != 2) throw OutOfRange("user must be 1 or 2");
  return (real.effective(3 - user, user) * V).squaredNorm();
}

double leakage_slope(const ChannelRealization& real, int user, double P1, double P2) {
  if (!(P2 > P1)) throw OutOfRange("need P2 > P1");
  const Eigen::MatrixXd V = zf_vectors(real, user);
  const double l1 = leakage_power(real.at_power(P1), user, V);
  const double l2 = leakage_power(real.at_power(P2), user, V);
  if (!(l1 > 0) || !(l2 > 0)) throw NumericalFailure("leakage power vanished");
  return std::log(l2 / l1) / std::log(P2 / P1);
}

}  // namespace gdof
