#pragma once

#include "gdof/errors.hpp"
#include "gdof/gdof_core.hpp"
#include "gdof/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace gdof {

inline constexpr std::int64_t kMaxRootDenominator = 12;

/// floor(sqrt(P^a)), computed exactly with big integers. The denominator of
/// `a` must not exceed kMaxRootDenominator.
std::int64_t pbar(std::int64_t P, const Rational& a);

/// Top a_prime power levels of x in the alphabet {0, ..., pbar(P, a)}:
/// floor(x / pbar(P, a - a_prime)).
std::int64_t top_levels(std::int64_t x, const Rational& a, const Rational& a_prime, std::int64_t P);

/// Rounds toward zero; for positive arguments this is the usual floor.
inline std::int64_t floor_toward_zero(double v) { return static_cast<std::int64_t>(std::trunc(v)); }

/// sum_i floor(c_i * v_i) with floor taken toward zero for negative products.
std::int64_t lincomb(std::span<const double> coeffs, std::span<const std::int64_t> values);

/// Entries m+1 .. m+n of V (1-based), wrapping around to the front when
/// m + n exceeds the length. Requires m, n < V.size().
template <typename T>
std::vector<T> slice(const std::vector<T>& v, std::size_t m, std::size_t n) {
  const std::size_t k = v.size();
  if (m >= k || n >= k) throw IndexOutOfRange("slice offsets must be smaller than the vector length");
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(v[(m + i) % k]);
  return out;
}

template <typename T>
std::vector<T> concat(const std::vector<T>& v, const std::vector<T>& w) {
  std::vector<T> out(v);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

/// Integer-input, floor-quantized model of the equivalent channel. For each
/// channel use t and receiver i the coefficient matrices are
///   common rows (nhat):  Lc  over [(X_ia)^1 ; (X_ib)^1 ; (X_oa)^alpha]
///                        Lbc over (X_ob)^(alpha - beta)
///   remaining rows (ncheck): Ld over [(X_ia)^1 ; (X_oa)^alpha]
///                            Lbd over (X_ob)^(alpha - beta)
/// where o is the other user. L coefficients are arbitrary but frozen; Lb
/// coefficients are bounded-density random variables that the inputs never
/// depend on.
struct DeterministicIC {
  struct ReceiverCoefficients {
    Eigen::MatrixXd Lc;
    Eigen::MatrixXd Lbc;
    Eigen::MatrixXd Ld;
    Eigen::MatrixXd Lbd;
  };

  int n = 1;
  std::int64_t P = 16;
  SystemConfig config;
  double delta1 = 1.0;
  double delta2 = 2.0;
  double fmax = 1.0;
  std::vector<std::array<ReceiverCoefficients, 2>> uses;  // [t][receiver - 1]

  /// Largest input symbol: pbar(P, max(1, alpha)).
  std::int64_t input_max() const;
};

/// Density bound of the coefficient law (magnitude uniform on [d1, d2] with
/// random sign): max(1, 1 / (2 (d2 - d1))).
double bounded_density_fmax(double delta1, double delta2);

/// Draws the arbitrary coefficients (rejection until every N x N matrix a
/// receiver sees from one transmitter has |det| >= delta1, at most 1e4
/// attempts) and an initial bounded-density draw.
DeterministicIC make_deterministic_ic(const SystemConfig& config, std::int64_t P, int n,
                                      double delta1, double delta2, std::uint64_t seed);

/// Replaces only the bounded-density (Lb) coefficients.
void redraw_bounded(DeterministicIC& ic, std::uint64_t seed);

struct DeterministicOutput {
  std::vector<std::int64_t> yc;  ///< nhat entries
  std::vector<std::int64_t> yd;  ///< ncheck entries
};

/// Output of `receiver` at channel use t for transmit vectors x1, x2 (each M
/// entries in {0, ..., input_max()}).
DeterministicOutput channel_output(const DeterministicIC& ic, int receiver,
                                   const std::vector<std::int64_t>& x1,
                                   const std::vector<std::int64_t>& x2, int t = 0);

/// Uniform bound on |x_i| over all solutions of |sum_j g_ij x_j| <= r_i:
///   sum_j r_j (N - 1)! delta2^(N - 1) / delta1.
/// Throws SingularMatrix when |det G| < delta1.
double cramer_bound(const Eigen::MatrixXd& G, std::span<const double> r, double delta1,
                    double delta2);

}  // namespace gdof
