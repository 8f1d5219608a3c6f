#include "gdof/gdof_core.hpp"

#include "gdof/errors.hpp"

#include <algorithm>

namespace gdof {

namespace {

const Rational kHalf(1, 2);
const Rational kTwoThirds(2, 3);
const Rational kOne(1);
const Rational kTwo(2);

}  // namespace

int SystemConfig::nhat() const { return std::min(N, M - N); }

int SystemConfig::ncheck() const { return std::max(0, 2 * N - M); }

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kWeak: return "0<=alpha<=1/2";
    case Regime::kModerate: return "1/2<alpha<=2/3";
    case Regime::kMixed: return "2/3<alpha<=1";
    case Regime::kStrong: return "1<alpha<=2";
    case Regime::kVeryStrong: return "alpha>2";
  }
  return "?";
}

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::kSingle: return "single";
    case Branch::kMinLeft: return "min-left";
    case Branch::kMinRight: return "min-right";
    case Branch::kTrivialCap: return "trivial-cap";
  }
  return "?";
}

Regime classify(const Rational& alpha) {
  if (alpha <= kHalf) return Regime::kWeak;
  if (alpha <= kTwoThirds) return Regime::kModerate;
  if (alpha <= kOne) return Regime::kMixed;
  if (alpha <= kTwo) return Regime::kStrong;
  return Regime::kVeryStrong;
}

void validate(const SystemConfig& config) {
  if (config.M < 1 || config.N < 1) throw InvalidConfig("antenna counts must be positive");
  if (config.alpha < 0) throw InvalidConfig("alpha must be nonnegative");
  if (config.beta < 0) throw InvalidConfig("beta must be nonnegative");
  if (config.M <= config.N) {
    throw PerfectCsitRegime("perfect-CSIT regime (M <= N) out of scope");
  }
}

SystemConfig clamp_beta(SystemConfig config) {
  if (config.beta > config.alpha) config.beta = config.alpha;
  return config;
}

Rational branch_expression(int index, const SystemConfig& c) {
  const Rational n(c.N);
  const Rational nh(c.nhat());
  const Rational& a = c.alpha;
  const Rational& b = c.beta;
  switch (index) {
    case 0: return 2 * n * (1 - a) + 2 * nh * b;
    case 1: return 2 * n * a + 2 * nh * positive_part(1 - 2 * a + b);
    case 2: return rmin(2 * n * a + 2 * nh * positive_part(1 - 2 * a + b), 2 * n - n * a + nh * b);
    case 3: return rmin(2 * n, n * a + nh * positive_part(1 - a + b));
    case 4: return 2 * n;
    default: throw OutOfRange("branch index must be in 0..4");
  }
}

GdofResult sum_gdof(const SystemConfig& input) {
  validate(input);
  const SystemConfig c = clamp_beta(input);

  GdofResult out;
  out.clamped = input.beta > input.alpha;
  out.beta_used = c.beta;
  out.regime = classify(c.alpha);

  const Rational n(c.N);
  const Rational nh(c.nhat());
  const Rational& a = c.alpha;
  const Rational& b = c.beta;

  switch (out.regime) {
    case Regime::kWeak:
    case Regime::kModerate:
      out.sum_gdof = branch_expression(out.regime == Regime::kWeak ? 0 : 1, c);
      out.active_branch = Branch::kSingle;
      break;
    case Regime::kMixed: {
      const Rational left = 2 * n * a + 2 * nh * positive_part(1 - 2 * a + b);
      const Rational right = 2 * n - n * a + nh * b;
      out.sum_gdof = rmin(left, right);
      out.active_branch = left <= right ? Branch::kMinLeft : Branch::kMinRight;
      break;
    }
    case Regime::kStrong: {
      const Rational cap = 2 * n;
      const Rational other = n * a + nh * positive_part(1 - a + b);
      out.sum_gdof = rmin(cap, other);
      out.active_branch = cap <= other ? Branch::kTrivialCap : Branch::kMinRight;
      break;
    }
    case Regime::kVeryStrong:
      out.sum_gdof = 2 * n;
      out.active_branch = Branch::kTrivialCap;
      break;
  }

  if (a <= kOne) out.bound_low = outer_bound_low(c);
  if (a > kTwoThirds) out.bound_high = outer_bound_high(c);

  if (out.sum_gdof < n || out.sum_gdof > 2 * n) {
    throw InvariantViolation("sum GDoF " + to_string(out.sum_gdof) + " outside [N, 2N]");
  }
  return out;
}

Rational outer_bound_low(const SystemConfig& input) {
  validate(input);
  const SystemConfig c = clamp_beta(input);
  if (c.alpha > kOne) throw OutOfRange("outer_bound_low requires alpha <= 1");
  const Rational n(c.N);
  const Rational nh(c.nhat());
  if (c.alpha <= kHalf) return 2 * n * (1 - c.alpha) + 2 * nh * c.beta;
  return 2 * n * c.alpha + 2 * nh * positive_part(1 - 2 * c.alpha + c.beta);
}

Rational outer_bound_high(const SystemConfig& input) {
  validate(input);
  const SystemConfig c = clamp_beta(input);
  if (c.alpha <= kTwoThirds) throw OutOfRange("outer_bound_high requires alpha > 2/3");
  const Rational n(c.N);
  const Rational nh(c.nhat());
  if (c.alpha <= kOne) return 2 * n - n * c.alpha + nh * c.beta;
  if (c.alpha <= kTwo) return rmin(2 * n, n * c.alpha + nh * positive_part(1 - c.alpha + c.beta));
  return 2 * n;
}

Rational lemma1_bound(const SystemConfig& input, const Rational& gamma) {
  validate(input);
  if (gamma < 0 || gamma > kOne) throw OutOfRange("gamma must lie in [0, 1]");
  const SystemConfig c = clamp_beta(input);
  const Rational nh(c.nhat());
  const Rational rest(c.N - c.nhat());
  return nh * rmax(1 - c.alpha + c.beta, gamma) + rest * rmax(1 - c.alpha, gamma);
}

}  // namespace gdof
