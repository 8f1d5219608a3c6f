#include "gdof/slope.hpp"

#include "gdof/channel_gen.hpp"
#include "gdof/errors.hpp"
#include "gdof/parallel.hpp"
#include "gdof/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdof {

namespace {

struct Stream {
  int user = 1;
  LayerKind kind = LayerKind::kCommon;
  double eta = 0;
  double d = 0;
  Eigen::VectorXd v;
};

Eigen::VectorXd generic_direction(Rng& rng, int M) {
  Eigen::VectorXd v(M);
  for (int i = 0; i < M; ++i) v(i) = rng.normal();
  return v.normalized();
}

std::vector<Stream> active_streams(const Scheme& scheme, const ChannelRealization& real, Rng& rng) {
  const int M = scheme.config.M;
  std::vector<Stream> out;
  for (int user = 1; user <= 2; ++user) {
    const Eigen::MatrixXd V = zf_vectors(real, user);
    for (const auto& l : scheme.layers_of(user)) {
      if (l.stream_gdof <= 0) continue;
      Stream s{user, l.kind, to_double(l.power_exponent), to_double(l.stream_gdof), {}};
      s.v = l.kind == LayerKind::kZeroForced ? Eigen::VectorXd(V.col(l.stream_index - 1))
                                             : generic_direction(rng, M);
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Largest t such that t d_S (1/2) ln P <= I(S) for every decoded subset S.
double receiver_scale(const ChannelRealization& real, const std::vector<Stream>& streams,
                      int receiver, double alpha) {
  const int N = real.config.N;
  const double P = real.P;
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(N, N);
  std::vector<Eigen::VectorXd> cols;
  std::vector<double> demand;
  for (const auto& s : streams) {
    const bool own = s.user == receiver;
    const double strength = own ? 1.0 : alpha;
    const double power = std::pow(P, strength - s.eta);
    const Eigen::VectorXd a = std::sqrt(power) * (real.effective(receiver, s.user) * s.v);
    if (own || s.kind == LayerKind::kCommon) {
      cols.push_back(a);
      demand.push_back(s.d);
    } else {
      K += a * a.transpose();
    }
  }
  const std::size_t k = cols.size();
  if (k == 0) return std::numeric_limits<double>::infinity();
  if (k > 24) throw InvalidConfig("too many decoded streams for subset enumeration");

  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) throw NumericalFailure("interference covariance is not positive definite");
  Eigen::MatrixXd W(N, k);
  for (std::size_t j = 0; j < k; ++j) W.col(j) = cols[j];
  W = llt.matrixL().solve(W);

  const double half_log_P = 0.5 * std::log(P);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    double d = 0;
    int count = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (1u << j)) {
        d += demand[j];
        ++count;
      }
    }
    if (d <= 0) continue;
    Eigen::MatrixXd Ws(N, count);
    for (std::size_t j = 0, c = 0; j < k; ++j) {
      if (mask & (1u << j)) Ws.col(c++) = W.col(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ws);
    double rate = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      const double s = svd.singularValues()(i);
      rate += 0.5 * std::log1p(s * s);
    }
    if (!std::isfinite(rate)) throw NumericalFailure("non-finite log-det rate");
    best = std::min(best, rate / (half_log_P * d));
  }
  return best;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 3) throw InvalidConfig("P grid needs at least 3 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 1.0)) throw InvalidConfig("P grid values must exceed 1");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidConfig("P grid must be ascending");
  }
  if (std::log10(grid.back() / grid.front()) < 4.0 - 1e-9) {
    throw InvalidConfig("P grid must span at least 4 decades");
  }
}

}  // namespace

SlopeReport slope_check(const Scheme& scheme, const SlopeSettings& s) {
  check_grid(s.P_grid);
  if (s.trials < 1) throw InvalidConfig("trials must be positive");
  validate(scheme.config);

  SlopeReport rep;
  rep.config = scheme.config;
  rep.target = 2 * scheme.per_user_gdof;
  rep.trials = s.trials;
  rep.seed = s.seed;
  const double target = to_double(rep.target);
  const double alpha = to_double(scheme.config.alpha);
  const std::size_t np = s.P_grid.size();

  // scale[trial][p][r]: r = 0, 1 per receiver
  std::vector<std::vector<std::array<double, 2>>> scale(s.trials,
                                                        std::vector<std::array<double, 2>>(np));
  std::vector<double> norms(s.trials, 0.0);
  parallel_for(static_cast<std::size_t>(s.trials), s.jobs, [&](std::size_t trial) {
    Rng rng(s.seed, 0x5109e + trial);
    const ChannelRealization base =
        draw_channel(scheme.config, s.P_grid, s.delta1, s.delta2, rng.next_u64());
    const auto transform = equivalent_transform(base);
    norms[trial] = std::max(transform.spectral_norm_U[0], transform.spectral_norm_U[1]);
    const std::vector<Stream> streams = active_streams(scheme, base, rng);
    for (std::size_t p = 0; p < np; ++p) {
      const ChannelRealization real = base.at_power(s.P_grid[p]);
      for (int r = 0; r < 2; ++r) scale[trial][p][r] = receiver_scale(real, streams, r + 1, alpha);
    }
  });

  rep.max_spectral_norm_U = *std::max_element(norms.begin(), norms.end());
  std::vector<double> joint(np, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    const double P = s.P_grid[p];
    const double half_log_P = 0.5 * std::log(P);
    std::array<double, 2> mean{0, 0};
    for (int t = 0; t < s.trials; ++t) {
      const double a = std::min(scale[t][p][0], 1e6);
      const double b = std::min(scale[t][p][1], 1e6);
      mean[0] += a * target;
      mean[1] += b * target;
      joint[p] += std::min(a, b) * target;
    }
    joint[p] /= s.trials;
    rep.rows.push_back({P, 0, joint[p] * half_log_P, joint[p]});
    for (int r = 0; r < 2; ++r) {
      const double y = mean[r] / s.trials;
      rep.rows.push_back({P, r + 1, y * half_log_P, y});
    }
  }

  // OLS of the joint normalized slope against x = 1 / ln P.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t p = 0; p < np; ++p) {
    const double x = 1.0 / std::log(s.P_grid[p]);
    sx += x;
    sy += joint[p];
    sxx += x * x;
    sxy += x * joint[p];
  }
  const double n = static_cast<double>(np);
  rep.fit_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.extrapolated_slope = (sy - rep.fit_slope * sx) / n;
  rep.relative_error = target > 0 ? std::abs(rep.extrapolated_slope - target) / target
                                  : std::abs(rep.extrapolated_slope);
  rep.within_tolerance = rep.relative_error <= 0.1;
  rep.monotone_toward_target = true;
  for (std::size_t p = 1; p < np; ++p) {
    if (std::abs(joint[p] - target) > std::abs(joint[p - 1] - target) + 1e-12) {
      rep.monotone_toward_target = false;
    }
  }
  return rep;
}

}  // namespace gdof
