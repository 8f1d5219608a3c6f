#include "gdof/scheme.hpp"

#include "gdof/errors.hpp"

namespace gdof {

std::string_view layer_kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::kCommon: return "common";
    case LayerKind::kZeroForced: return "zero_forced";
    case LayerKind::kPrivate: return "private";
  }
  return "?";
}

std::vector<Layer> Scheme::layers_of(int user) const {
  std::vector<Layer> out;
  for (const auto& l : layers) {
    if (l.user == user) out.push_back(l);
  }
  return out;
}

std::vector<Layer> Scheme::layers_of(int user, LayerKind kind) const {
  std::vector<Layer> out;
  for (const auto& l : layers) {
    if (l.user == user && l.kind == kind) out.push_back(l);
  }
  return out;
}

bool in_sq(const SystemConfig& input) {
  validate(input);
  const SystemConfig c = clamp_beta(input);
  const Rational& a = c.alpha;
  if (a <= Rational(2, 3) || a > 1) throw OutOfRange("S_q is defined for 2/3 < alpha <= 1");
  const Rational n(c.N);
  const Rational nh(c.nhat());
  if (n * (3 * a - 2) > nh * (2 * a - 1)) return false;
  const Rational lower = n * (3 * a - 2) / nh;
  const Rational upper = n * (2 - 3 * a) / nh - 2 + 4 * a;
  return lower <= c.beta && c.beta <= upper;
}

namespace {

struct Plan {
  int commons = 0;
  Rational common_gdof{0};
  Rational common_eta{0};
  Rational zf_gdof{0};
  Rational zf_eta{0};
  int privates = 0;
  Rational private_gdof{0};
};

void emit(Scheme& s, const Plan& p) {
  const int nhat = s.config.nhat();
  for (int user = 1; user <= 2; ++user) {
    for (int j = 1; j <= p.commons; ++j) {
      s.layers.push_back({user, LayerKind::kCommon, j, p.common_eta, p.common_gdof});
    }
    for (int k = 1; k <= nhat; ++k) {
      s.layers.push_back({user, LayerKind::kZeroForced, k, p.zf_eta, p.zf_gdof});
    }
    for (int j = 1; j <= p.privates; ++j) {
      s.layers.push_back({user, LayerKind::kPrivate, j, s.config.alpha, p.private_gdof});
    }
  }
}

}  // namespace

Scheme synthesize(const SystemConfig& input) {
  validate(input);
  Scheme s;
  s.config = clamp_beta(input);
  s.regime = classify(s.config.alpha);

  const int N = s.config.N;
  const Rational n(N);
  const Rational nh(s.config.nhat());
  const Rational& a = s.config.alpha;
  const Rational& b = s.config.beta;

  Plan p;
  switch (s.regime) {
    case Regime::kWeak:
      // Zero-forced streams at P^(beta - alpha) carrying beta, private
      // streams at P^(-alpha) carrying 1 - alpha; no common message.
      p.zf_eta = a - b;
      p.zf_gdof = b;
      p.privates = N;
      p.private_gdof = 1 - a;
      break;
    case Regime::kModerate:
    case Regime::kMixed: {
      p.commons = N;
      p.common_eta = 0;
      p.zf_eta = a - b;
      p.zf_gdof = b;
      p.privates = N;
      p.private_gdof = 1 - a;
      bool first_argument = true;
      if (s.regime == Regime::kMixed) {
        first_argument = in_sq(s.config);
        s.sub_case = first_argument ? SubCase::kInSq : SubCase::kOutsideSq;
      }
      p.common_gdof = first_argument ? 2 * a - 1 - nh * rmin(2 * a - 1, b) / n
                                     : a / 2 - nh * b / (2 * n);
      break;
    }
    case Regime::kStrong:
    case Regime::kVeryStrong: {
      const Rational m = positive_part(b + 1 - a);
      p.commons = N;
      p.common_eta = 0;
      p.common_gdof = rmin(a / 2 - nh * m / (2 * n), 1 - nh * m / n);
      p.zf_eta = 1 - m;
      p.zf_gdof = m;
      break;
    }
  }
  emit(s, p);

  Rational total{0};
  for (const auto& l : s.layers) {
    if (l.stream_gdof < 0 || l.power_exponent < 0) {
      throw InvariantViolation("negative stream GDoF or power exponent in synthesized scheme");
    }
    total += l.stream_gdof;
  }
  s.per_user_gdof = total / 2;
  s.zero_forced_margin = positive_part(1 - p.zf_eta) - p.zf_gdof;

  const Rational target = sum_gdof(s.config).sum_gdof;
  if (2 * s.per_user_gdof != target) {
    throw InvariantViolation("scheme achieves " + to_string(2 * s.per_user_gdof) +
                             " but the sum GDoF is " + to_string(target));
  }
  return s;
}

MacReduction to_mac_instance(const Scheme& scheme, int receiver) {
  if (receiver != 1 && receiver != 2) throw OutOfRange("receiver must be 1 or 2");
  const int other = 3 - receiver;

  MacReduction out;
  auto take = [&](int user, LayerKind kind) {
    for (const auto& l : scheme.layers_of(user, kind)) {
      out.codewords.push_back(l);
      out.instance.eta.push_back(l.power_exponent);
      out.demand.push_back(l.stream_gdof);
    }
  };
  take(receiver, LayerKind::kCommon);
  take(receiver, LayerKind::kZeroForced);
  take(receiver, LayerKind::kPrivate);
  out.instance.M1 = static_cast<int>(out.codewords.size());
  take(other, LayerKind::kCommon);
  out.instance.M2 = static_cast<int>(out.codewords.size()) - out.instance.M1;

  // The interferer's private streams arrive at alpha - alpha = 0 and its
  // zero-forced streams at (alpha - beta - eta)^+, which is 0 for every
  // zero-forced stream that carries GDoF (the others can stay silent). All
  // noise exponents are therefore 0.
  out.instance.N = scheme.config.N;
  out.instance.alpha = scheme.config.alpha;
  out.instance.noise_exponents.assign(scheme.config.N, Rational(0));
  return out;
}

}  // namespace gdof
