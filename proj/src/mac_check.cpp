#include "gdof/mac_check.hpp"

#include "gdof/errors.hpp"
#include "gdof/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace gdof {

void validate(const MacInstance& in) {
  if (in.M1 < 0 || in.M2 < 0 || in.N < 1) throw InvalidConfig("MAC sizes must be nonnegative, N >= 1");
  if (in.users() > kMaxMacUsers) {
    throw TooManyUsers("MAC with " + std::to_string(in.users()) +
                       " transmitters exceeds the exhaustive-enumeration cap of " +
                       std::to_string(kMaxMacUsers));
  }
  if (static_cast<int>(in.eta.size()) != in.users()) {
    throw InvalidConfig("eta must have M1 + M2 entries");
  }
  if (static_cast<int>(in.noise_exponents.size()) != in.N) {
    throw InvalidConfig("noise_exponents must have N entries");
  }
  if (in.alpha < 0) throw InvalidConfig("alpha must be nonnegative");
  for (const auto& e : in.eta) {
    if (e < 0) throw InvalidConfig("eta entries must be nonnegative");
  }
  for (const auto& a : in.noise_exponents) {
    if (a < 0) throw InvalidConfig("noise exponents must be nonnegative");
  }
}

std::vector<Rational> received_levels(const MacInstance& in) {
  std::vector<Rational> gamma(in.eta.size());
  for (std::size_t k = 0; k < in.eta.size(); ++k) {
    const Rational top = static_cast<int>(k) < in.M1 ? Rational(1) : in.alpha;
    gamma[k] = positive_part(top - in.eta[k]);
  }
  return gamma;
}

namespace {

// All quantities of one instance scaled to a common denominator so the
// 2^K subset sweep runs on plain integers.
struct ScaledInstance {
  std::int64_t scale = 1;
  std::vector<std::int64_t> gamma;        // per transmitter
  std::vector<int> order_desc;            // transmitters by decreasing gamma
  std::vector<std::int64_t> noise_prefix; // prefix sums of ascending noise exponents
  std::vector<std::int64_t> demand;
};

std::int64_t common_denominator(const std::vector<Rational>& values, std::int64_t acc) {
  for (const auto& v : values) acc = std::lcm(acc, v.denominator());
  return acc;
}

std::int64_t scaled(const Rational& r, std::int64_t scale) {
  return r.numerator() * (scale / r.denominator());
}

ScaledInstance scale_instance(const MacInstance& in, const std::vector<Rational>& d) {
  const auto gamma = received_levels(in);
  ScaledInstance s;
  s.scale = common_denominator(gamma, 1);
  s.scale = common_denominator(in.noise_exponents, s.scale);
  s.scale = common_denominator(d, s.scale);

  for (const auto& g : gamma) s.gamma.push_back(scaled(g, s.scale));
  for (const auto& x : d) s.demand.push_back(scaled(x, s.scale));

  s.order_desc.resize(gamma.size());
  std::iota(s.order_desc.begin(), s.order_desc.end(), 0);
  std::stable_sort(s.order_desc.begin(), s.order_desc.end(),
                   [&](int a, int b) { return s.gamma[a] > s.gamma[b]; });

  std::vector<std::int64_t> noise;
  for (const auto& a : in.noise_exponents) noise.push_back(scaled(a, s.scale));
  std::sort(noise.begin(), noise.end());
  s.noise_prefix.assign(noise.size() + 1, 0);
  for (std::size_t i = 0; i < noise.size(); ++i) s.noise_prefix[i + 1] = s.noise_prefix[i] + noise[i];
  return s;
}

std::int64_t scaled_capacity(const ScaledInstance& s, int N, std::uint32_t mask) {
  const int take = std::min(std::popcount(mask), N);
  std::int64_t top = 0;
  int taken = 0;
  for (int k : s.order_desc) {
    if (taken == take) break;
    if (mask & (1u << k)) {
      top += s.gamma[k];
      ++taken;
    }
  }
  return top - s.noise_prefix[take];
}

std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int k = 0; k < 32; ++k) {
    if (mask & (1u << k)) out.push_back(k + 1);
  }
  return out;
}

}  // namespace

Rational subset_capacity(const MacInstance& in, std::uint32_t mask) {
  validate(in);
  const auto s = scale_instance(in, {});
  return Rational(scaled_capacity(s, in.N, mask), s.scale);
}

bool subset_lex_less(std::uint32_t a, std::uint32_t b) {
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

MacVerdict feasible(const MacInstance& in, const std::vector<Rational>& d) {
  validate(in);
  if (static_cast<int>(d.size()) != in.users()) throw InvalidConfig("d must have M1 + M2 entries");
  for (const auto& x : d) {
    if (x < 0) throw InvalidConfig("d entries must be nonnegative");
  }

  const auto s = scale_instance(in, d);
  const int K = in.users();
  const std::uint32_t full = K == 0 ? 0u : ((K == 32) ? ~0u : ((1u << K) - 1u));

  MacVerdict verdict;
  std::uint32_t worst = 0;
  std::int64_t worst_lhs = 0;
  std::int64_t worst_rhs = 0;
  for (std::uint32_t mask = 1; mask != 0 && mask <= full; ++mask) {
    ++verdict.subsets_checked;
    std::int64_t lhs = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) lhs += s.demand[std::countr_zero(m)];
    const std::int64_t rhs = scaled_capacity(s, in.N, mask);
    if (lhs > rhs && (worst == 0 || subset_lex_less(mask, worst))) {
      worst = mask;
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  if (worst != 0) {
    verdict.ok = false;
    verdict.violated_subset = mask_to_indices(worst);
    verdict.lhs = Rational(worst_lhs, s.scale);
    verdict.rhs = Rational(worst_rhs, s.scale);
  }
  return verdict;
}

namespace {

double det_abs(const Eigen::MatrixXd& m) { return std::abs(m.fullPivLu().determinant()); }

// Smallest |det| over all N x N column submatrices.

}  // namespace

double min_square_minor(const Eigen::MatrixXd& A) {
  const int N = static_cast<int>(A.rows());
  const int C = static_cast<int>(A.cols());
  if (C < N) return 0.0;
  std::vector<int> pick(N);
  std::iota(pick.begin(), pick.end(), 0);
  double best = INFINITY;
  Eigen::MatrixXd sub(N, N);
  while (true) {
    for (int j = 0; j < N; ++j) sub.col(j) = A.col(pick[j]);
    best = std::min(best, det_abs(sub));
    int i = N - 1;
    while (i >= 0 && pick[i] == C - N + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < N; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

MacDirections draw_mac_directions(const MacInstance& in, std::uint64_t seed) {
  validate(in);
  Rng rng(seed, 0x3ac);
  const int K = in.users();
  const int N = in.N;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Eigen::MatrixXd all(N, K + N);
    for (int c = 0; c < K + N; ++c) {
      for (int r = 0; r < N; ++r) all(r, c) = rng.signed_magnitude(0.5, 2.0);
    }
    if (min_square_minor(all) < 1e-3) continue;
    return {all.leftCols(K), all.rightCols(N)};
  }
  throw RejectionBudgetExceeded("could not draw generic MAC directions");
}

double finite_snr_rate(const MacInstance& in, const MacDirections& dirs, std::uint32_t mask,
                       double P) {
  validate(in);
  if (P < 10.0) throw OutOfRange("finite_snr_rate requires P >= 10");
  if (mask == 0) return 0.0;
  const int N = in.N;
  const double a = to_double(in.alpha);

  // Noise-plus-unknown covariance K = sum_m P^(alpha_m) G_m G_m^T; the
  // decoded signals of S add rank-one terms on top of it.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  for (int m = 0; m < N; ++m) {
    K += std::pow(P, to_double(in.noise_exponents[m])) * dirs.G.col(m) * dirs.G.col(m).transpose();
  }
  std::vector<int> members;
  for (int k = 0; k < in.users(); ++k) {
    if (mask & (1u << k)) members.push_back(k);
  }
  Eigen::MatrixXd A(N, members.size());
  for (std::size_t j = 0; j < members.size(); ++j) {
    const int k = members[j];
    const double strength = k < in.M1 ? 1.0 : a;
    const double power = std::pow(P, strength - to_double(in.eta[k]));
    A.col(j) = std::sqrt(power) * dirs.H.col(k);
  }
  return gaussian_rate(K, A);
}

double gaussian_rate(const Eigen::MatrixXd& noise_cov, const Eigen::MatrixXd& signals) {
  if (signals.cols() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(noise_cov);
  if (llt.info() != Eigen::Success) throw NumericalFailure("noise covariance is not positive definite");
  // Whitened columns W = L^{-1} A; log det(I + W W^T) via singular values
  // stays accurate when received levels span many decades.
  const Eigen::MatrixXd W = llt.matrixL().solve(signals);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(W);
  double rate = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    rate += 0.5 * std::log1p(s * s);
  }
  if (!std::isfinite(rate)) throw NumericalFailure("non-finite log-det rate");
  return rate;
}

double finite_snr_rate(const MacInstance& in, std::uint32_t mask, double P, std::uint64_t seed) {
  return finite_snr_rate(in, draw_mac_directions(in, seed), mask, P);
}

}  // namespace gdof
