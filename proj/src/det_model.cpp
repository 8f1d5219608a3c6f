#include "gdof/det_model.hpp"

#include "gdof/random.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gdof {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int ipow(std::int64_t base, std::int64_t exp) {
  mp::cpp_int result = 1;
  mp::cpp_int b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

// Largest r with r^k <= value.
std::int64_t integer_root(const mp::cpp_int& value, std::int64_t k) {
  if (value == 0) return 0;
  const double guess = std::pow(value.convert_to<double>(), 1.0 / static_cast<double>(k));
  std::int64_t r = static_cast<std::int64_t>(guess);
  while (r > 0 && ipow(r, k) > value) --r;
  while (ipow(r + 1, k) <= value) ++r;
  return r;
}

}  // namespace

std::int64_t pbar(std::int64_t P, const Rational& a) {
  if (P < 1) throw OutOfRange("P must be at least 1");
  if (a < 0) throw OutOfRange("power-level exponent must be nonnegative");
  if (a.denominator() > kMaxRootDenominator) {
    throw UnsupportedExponent("exponent " + to_string(a) + " has denominator above " +
                              std::to_string(kMaxRootDenominator));
  }
  // floor(sqrt(P^(p/q))) = floor((P^p)^(1/(2q))).
  return integer_root(ipow(P, a.numerator()), 2 * a.denominator());
}

std::int64_t top_levels(std::int64_t x, const Rational& a, const Rational& a_prime, std::int64_t P) {
  if (a_prime < 0 || a_prime > a) throw OutOfAlphabet("top_levels requires 0 <= a' <= a");
  const std::int64_t limit = pbar(P, a);
  if (x < 0 || x > limit) {
    throw OutOfAlphabet("symbol " + std::to_string(x) + " outside {0, ..., " +
                        std::to_string(limit) + "}");
  }
  return x / pbar(P, a - a_prime);
}

std::int64_t lincomb(std::span<const double> coeffs, std::span<const std::int64_t> values) {
  if (coeffs.size() != values.size()) throw InvalidConfig("lincomb operands differ in length");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    sum += floor_toward_zero(coeffs[i] * static_cast<double>(values[i]));
  }
  return sum;
}

std::int64_t DeterministicIC::input_max() const {
  return pbar(P, rmax(Rational(1), config.alpha));
}

double bounded_density_fmax(double delta1, double delta2) {
  return std::max(1.0, 1.0 / (2.0 * (delta2 - delta1)));
}

namespace {

Eigen::MatrixXd draw_matrix(Rng& rng, int rows, int cols, double lo, double hi) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.signed_magnitude(lo, hi);
  }
  return m;
}

double abs_det(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 1.0;
  return std::abs(m.fullPivLu().determinant());
}

}  // namespace

DeterministicIC make_deterministic_ic(const SystemConfig& config, std::int64_t P, int n,
                                      double delta1, double delta2, std::uint64_t seed) {
  validate(config);
  if (n < 1) throw InvalidConfig("blocklength must be positive");
  if (!(0.0 < delta1 && delta1 < delta2)) throw InvalidConfig("need 0 < delta1 < delta2");

  DeterministicIC ic;
  ic.n = n;
  ic.P = P;
  ic.config = clamp_beta(config);
  ic.delta1 = delta1;
  ic.delta2 = delta2;
  ic.fmax = bounded_density_fmax(delta1, delta2);

  const int M = ic.config.M;
  const int N = ic.config.N;
  const int nh = ic.config.nhat();
  const int nc = ic.config.ncheck();

  Rng rng(seed, 0xa7b);
  ic.uses.resize(n);
  for (int t = 0; t < n; ++t) {
    for (auto& rc : ic.uses[t]) {
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt >= 10000) throw RejectionBudgetExceeded("arbitrary coefficients rejected 1e4 times");
        rc.Lc = draw_matrix(rng, nh, 2 * N + (M - N), delta1, delta2);
        rc.Ld = draw_matrix(rng, nc, 2 * N, delta1, delta2);
        // Stack the rows a receiver sees from its own X_a and from the
        // other transmitter's X_a; both N x N blocks must be non-singular.
        Eigen::MatrixXd own(N, N);
        Eigen::MatrixXd cross(N, N);
        own << rc.Lc.leftCols(N), rc.Ld.leftCols(N);
        cross << rc.Lc.middleCols(M, N), rc.Ld.rightCols(N);
        if (abs_det(own) >= delta1 && abs_det(cross) >= delta1) break;
      }
    }
  }
  redraw_bounded(ic, seed ^ 0x5bd1e995ULL);
  return ic;
}

void redraw_bounded(DeterministicIC& ic, std::uint64_t seed) {
  Rng rng(seed, 0xb0d);
  const int M = ic.config.M;
  const int N = ic.config.N;
  for (auto& use : ic.uses) {
    for (auto& rc : use) {
      rc.Lbc = draw_matrix(rng, ic.config.nhat(), M - N, ic.delta1, ic.delta2);
      rc.Lbd = draw_matrix(rng, ic.config.ncheck(), M - N, ic.delta1, ic.delta2);
    }
  }
}

namespace {

std::vector<std::int64_t> top_all(const std::vector<std::int64_t>& x, const Rational& alphabet,
                                  const Rational& level, std::int64_t P) {
  std::vector<std::int64_t> out;
  out.reserve(x.size());
  for (auto v : x) out.push_back(top_levels(v, alphabet, level, P));
  return out;
}

std::int64_t row_lincomb(const Eigen::MatrixXd& m, int row, const std::vector<std::int64_t>& values) {
  const Eigen::RowVectorXd r = m.row(row);
  return lincomb(std::span<const double>(r.data(), static_cast<std::size_t>(r.size())), values);
}

}  // namespace

DeterministicOutput channel_output(const DeterministicIC& ic, int receiver,
                                   const std::vector<std::int64_t>& x1,
                                   const std::vector<std::int64_t>& x2, int t) {
  if (receiver != 1 && receiver != 2) throw OutOfRange("receiver must be 1 or 2");
  if (t < 0 || t >= ic.n) throw IndexOutOfRange("channel use index outside the blocklength");
  const int M = ic.config.M;
  const int N = ic.config.N;
  if (static_cast<int>(x1.size()) != M || static_cast<int>(x2.size()) != M) {
    throw AlphabetViolation("input vectors must have M entries");
  }
  const std::int64_t xmax = ic.input_max();
  for (const auto* x : {&x1, &x2}) {
    for (auto v : *x) {
      if (v < 0 || v > xmax) {
        throw AlphabetViolation("input symbol " + std::to_string(v) + " outside {0, ..., " +
                                std::to_string(xmax) + "}");
      }
    }
  }

  const auto& own = receiver == 1 ? x1 : x2;
  const auto& other = receiver == 1 ? x2 : x1;
  const Rational alphabet = rmax(Rational(1), ic.config.alpha);
  const Rational& a = ic.config.alpha;
  const Rational& b = ic.config.beta;
  const std::int64_t P = ic.P;

  const auto own_a = top_all(slice(own, 0, N), alphabet, Rational(1), P);
  const auto own_b = top_all(slice(own, N, M - N), alphabet, Rational(1), P);
  const auto other_a = top_all(slice(other, 0, N), alphabet, a, P);
  const auto other_b = top_all(slice(other, N, M - N), alphabet, a - b, P);

  const auto& rc = ic.uses[t][receiver - 1];
  DeterministicOutput out;
  const auto common_args = concat(concat(own_a, own_b), other_a);
  for (int j = 0; j < ic.config.nhat(); ++j) {
    out.yc.push_back(row_lincomb(rc.Lc, j, common_args) + row_lincomb(rc.Lbc, j, other_b));
  }
  const auto rest_args = concat(own_a, other_a);
  for (int j = 0; j < ic.config.ncheck(); ++j) {
    out.yd.push_back(row_lincomb(rc.Ld, j, rest_args) + row_lincomb(rc.Lbd, j, other_b));
  }
  return out;
}

double cramer_bound(const Eigen::MatrixXd& G, std::span<const double> r, double delta1,
                    double delta2) {
  const auto N = G.rows();
  if (N < 1 || G.cols() != N) throw InvalidConfig("cramer_bound needs a square matrix");
  if (static_cast<Eigen::Index>(r.size()) != N) throw InvalidConfig("r must have N entries");
  if (G.cwiseAbs().maxCoeff() > delta2) throw InvalidConfig("coefficient magnitude exceeds delta2");
  if (abs_det(G) < delta1) throw SingularMatrix("|det G| below delta1");
  double factorial = 1.0;
  for (Eigen::Index i = 2; i < N; ++i) factorial *= static_cast<double>(i);
  const double per_unit = factorial * std::pow(delta2, static_cast<double>(N - 1)) / delta1;
  double total = 0.0;
  for (double v : r) {
    if (v < 0) throw InvalidConfig("r entries must be nonnegative");
    total += v;
  }
  return total * per_unit;
}

}  // namespace gdof
