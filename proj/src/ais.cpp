#include "gdof/ais.hpp"

#include "gdof/det_model.hpp"
#include "gdof/errors.hpp"
#include "gdof/parallel.hpp"
#include "gdof/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace gdof {

namespace {

constexpr std::int64_t kMaxEnumeration = 10'000'000;

Rational alphabet_exponent(const SystemConfig& c) { return rmax(Rational(1), c.alpha); }

double abs_det(const Eigen::MatrixXd& m) { return std::abs(m.fullPivLu().determinant()); }

void check_tiny(const AisSettings& s) {
  validate(s.config);
  if (s.config.M > 3 || s.config.N > 2) throw InvalidConfig("AIS verification supports M <= 3, N <= 2");
  if (s.fmax < 1.0) throw InvalidConfig("fmax must be at least 1");
  if (s.gamma < 0 || s.gamma > 1) throw OutOfRange("gamma must lie in [0, 1]");
  if (s.trials < 1 || s.pairs < 0) throw InvalidConfig("trials must be positive");
  if (s.P_grid.empty()) throw InvalidConfig("empty P grid");
  for (auto P : s.P_grid) {
    if (P < 1 || P > 256) throw InvalidConfig("AIS verification supports 1 <= P <= 256");
  }
  const double max_density = 1.0 / (2.0 * (s.delta2 - s.delta1));
  if (!(0.0 < s.delta1 && s.delta1 < s.delta2) || max_density > s.fmax) {
    throw InvalidConfig("coefficient law must satisfy 0 < delta1 < delta2 with density <= fmax");
  }
}

// Wilson score interval for k successes out of n.
std::pair<double, double> wilson(std::int64_t k, std::int64_t n, double z) {
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<std::int64_t> tops(const AlignmentModel& m, const std::vector<std::int64_t>& x,
                               std::size_t from, std::size_t count, std::int64_t divisor) {
  if (x.size() != static_cast<std::size_t>(m.config.M)) throw AlphabetViolation("input must have M entries");
  std::vector<std::int64_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto v = x[from + i];
    if (v < 0 || v > m.xmax) throw OutOfAlphabet("input symbol outside the alphabet");
    out.push_back(v / divisor);
  }
  return out;
}

std::vector<std::int64_t> random_input(Rng& rng, int M, std::int64_t xmax) {
  std::vector<std::int64_t> x(M);
  for (auto& v : x) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(xmax + 1)));
  return x;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

AlignmentModel make_alignment_model(const SystemConfig& config, std::int64_t P,
                                    const Rational& gamma, double delta1, double delta2,
                                    double fmax, std::uint64_t seed) {
  validate(config);
  if (fmax < 1.0) throw InvalidConfig("fmax must be at least 1");
  AlignmentModel m;
  m.config = clamp_beta(config);
  m.P = P;
  m.gamma = gamma;
  m.delta1 = delta1;
  m.delta2 = delta2;
  m.fmax = fmax;

  const Rational A = alphabet_exponent(m.config);
  m.xmax = pbar(P, A);
  m.div_alpha = pbar(P, A - m.config.alpha);
  m.div_alpha_minus_beta = pbar(P, A - (m.config.alpha - m.config.beta));
  m.div_one = pbar(P, A - 1);
  m.div_gamma = pbar(P, A - gamma);
  m.div_gamma_minus_beta = pbar(P, A - positive_part(gamma - m.config.beta));

  const int M = m.config.M;
  const int N = m.config.N;
  Rng rng(seed, 0x11a);
  auto draw = [&](int rows, int cols) {
    Eigen::MatrixXd out(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) out(r, c) = rng.signed_magnitude(delta1, delta2);
    }
    return out;
  };
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 10000) throw RejectionBudgetExceeded("interference coefficients rejected 1e4 times");
    m.h_interference = draw(N, N);
    if (abs_det(m.h_interference) >= delta1) break;
  }
  m.h_observed = draw(N, 2 * M);
  for (int j = m.config.nhat(); j < N; ++j) m.h_observed.block(j, N, 1, M - N).setZero();
  return m;
}

Eigen::MatrixXd draw_bounded_coefficients(const AlignmentModel& model, std::uint64_t seed,
                                          std::uint64_t stream) {
  Rng rng(seed, stream);
  const int N = model.config.N;
  const int B = model.config.M - N;
  Eigen::MatrixXd g(N, B);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < B; ++c) g(r, c) = rng.signed_magnitude(model.delta1, model.delta2);
  }
  return g;
}

std::vector<std::int64_t> interference_image(const AlignmentModel& model, const Eigen::MatrixXd& g,
                                             const std::vector<std::int64_t>& x2) {
  const int M = model.config.M;
  const int N = model.config.N;
  const auto xa = tops(model, x2, 0, N, model.div_alpha);
  const auto xb = tops(model, x2, N, M - N, model.div_alpha_minus_beta);
  std::vector<std::int64_t> u(N, 0);
  for (int j = 0; j < N; ++j) {
    std::int64_t v = 0;
    for (int i = 0; i < N; ++i) v += floor_toward_zero(model.h_interference(j, i) * static_cast<double>(xa[i]));
    for (int i = 0; i < M - N; ++i) v += floor_toward_zero(g(j, i) * static_cast<double>(xb[i]));
    u[j] = v;
  }
  return u;
}

std::vector<std::int64_t> observed_image(const AlignmentModel& model,
                                         const std::vector<std::int64_t>& x1,
                                         const std::vector<std::int64_t>& x2) {
  const int M = model.config.M;
  const int N = model.config.N;
  std::vector<std::int64_t> args = tops(model, x2, 0, M, model.div_one);
  const auto x1a = tops(model, x1, 0, N, model.div_gamma);
  const auto x1b = tops(model, x1, N, M - N, model.div_gamma_minus_beta);
  args.insert(args.end(), x1a.begin(), x1a.end());
  args.insert(args.end(), x1b.begin(), x1b.end());
  std::vector<std::int64_t> u(N, 0);
  for (int j = 0; j < N; ++j) {
    const Eigen::RowVectorXd row = model.h_observed.row(j);
    u[j] = lincomb(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())), args);
  }
  return u;
}

std::int64_t alignment_spread(const AlignmentModel& model, const std::vector<std::int64_t>& e2,
                              const std::vector<std::int64_t>& f2) {
  const int M = model.config.M;
  const int N = model.config.N;
  const auto eb = tops(model, e2, N, M - N, model.div_alpha_minus_beta);
  const auto fb = tops(model, f2, N, M - N, model.div_alpha_minus_beta);
  std::int64_t spread = 0;
  for (std::size_t j = 0; j < eb.size(); ++j) {
    const auto d = eb[j] - fb[j];
    spread = std::max(spread, d < 0 ? -d : d);
  }
  return spread;
}

double alignment_probability_bound(const AlignmentModel& model, std::int64_t spread) {
  if (spread == 0) return 1.0;
  const double factor = 2.0 * model.config.M * model.fmax / static_cast<double>(spread);
  return std::pow(factor, model.config.N);
}

std::vector<std::int64_t> aligned_set_sizes(const AlignmentModel& model, const Eigen::MatrixXd& g,
                                            const std::vector<std::vector<std::int64_t>>& reps) {
  std::vector<std::vector<std::int64_t>> images;
  images.reserve(reps.size());
  for (const auto& x2 : reps) images.push_back(interference_image(model, g, x2));
  std::map<std::vector<std::int64_t>, std::int64_t> counts;
  for (const auto& u : images) ++counts[u];
  std::vector<std::int64_t> sizes;
  sizes.reserve(reps.size());
  for (const auto& u : images) sizes.push_back(counts[u]);
  return sizes;
}

double expected_set_size_bound(const AlignmentModel& model) {
  const int M = model.config.M;
  const int N = model.config.N;
  const int nh = model.config.nhat();
  const double a = to_double(model.config.alpha);
  const double b = to_double(model.config.beta);
  const double g = to_double(model.gamma);
  const double d1 = model.delta1;
  const double d2 = model.delta2;
  const double pbar = std::sqrt(static_cast<double>(model.P));

  double nfact = 1.0;
  for (int i = 2; i <= N; ++i) nfact *= i;
  const double ck = M * nfact * std::pow(d2, N - 1) / d1;
  const double cl = (M - N) * nfact * std::pow(d2, N) / d1;

  double bound = 1.0;
  for (int i = 1; i <= N; ++i) {
    const double pcheck = i <= nh ? M * std::pow(pbar, 1.0 - a + b) : N * std::pow(pbar, 1.0 - a);
    const double delta = std::floor(2.0 * M + M * std::pow(pbar, g) * d2 + ck * pcheck * d2) + 1.0;
    const double harmonic = 2.0 + 2.0 * std::log(1.0 + 2.0 * M * d2 * pbar);
    bound *= 2.0 * delta + 1.0 + 2.0 * M * cl * model.fmax * pcheck * d2 * harmonic;
  }
  return bound;
}

AisReport verify_alignment_probability(const AisSettings& s) {
  check_tiny(s);
  AisReport report;
  report.config = clamp_beta(s.config);
  report.gamma = s.gamma;
  report.seed = s.seed;
  report.trials = s.trials;
  report.lemma1_coefficient = lemma1_bound(report.config, s.gamma);
  if (report.config.alpha == report.config.beta) {
    report.skipped = true;
    report.skip_reason = "beta = alpha: bounded-density terms see only zero symbols";
    return report;
  }

  for (std::size_t p = 0; p < s.P_grid.size(); ++p) {
    const auto model = make_alignment_model(s.config, s.P_grid[p], s.gamma, s.delta1, s.delta2,
                                            s.fmax, s.seed + p);
    const std::int64_t xmax = model.input_max();
    if (xmax == 0) continue;  // single-symbol alphabet, no distinct pairs

    // Pairs are drawn up front from their own stream so the sample does not
    // depend on the worker count.
    Rng pick(s.seed, 0x9a10 + p);
    std::vector<AisPairRecord> records(s.pairs);
    for (int id = 0; id < s.pairs; ++id) {
      auto& r = records[id];
      r.P = s.P_grid[p];
      r.pair_id = id;
      do {
        r.e2 = random_input(pick, s.config.M, xmax);
        r.f2 = random_input(pick, s.config.M, xmax);
      } while (r.e2 == r.f2);
    }

    parallel_for(records.size(), s.jobs, [&](std::size_t id) {
      auto& r = records[id];
      r.spread = alignment_spread(model, r.e2, r.f2);
      r.bound_p = alignment_probability_bound(model, r.spread);
      const std::uint64_t stream = (static_cast<std::uint64_t>(p + 1) << 40) | (id << 20);
      for (int t = 0; t < s.trials; ++t) {
        const auto g = draw_bounded_coefficients(model, s.seed, stream + t);
        if (interference_image(model, g, r.e2) == interference_image(model, g, r.f2)) ++r.aligned;
      }
      r.samples = s.trials;
      r.empirical_p = static_cast<double>(r.aligned) / static_cast<double>(r.samples);
      const auto [lo, hi] = wilson(r.aligned, r.samples, s.z);
      r.ci_half_width = 0.5 * (hi - lo);
      r.margin = r.bound_p - r.empirical_p;
      r.within_bound = lo <= r.bound_p;
    });
    report.pairs.insert(report.pairs.end(), records.begin(), records.end());
  }

  const auto ok = std::count_if(report.pairs.begin(), report.pairs.end(),
                                [](const AisPairRecord& r) { return r.within_bound; });
  report.pair_coverage =
      report.pairs.empty() ? 1.0 : static_cast<double>(ok) / static_cast<double>(report.pairs.size());
  return report;
}

AisReport verify_expected_set_size(const AisSettings& s) {
  check_tiny(s);
  AisReport report;
  report.config = clamp_beta(s.config);
  report.gamma = s.gamma;
  report.seed = s.seed;
  report.trials = s.trials;
  report.lemma1_coefficient = lemma1_bound(report.config, s.gamma);

  const int M = report.config.M;
  std::vector<double> log_pbar;
  std::vector<double> log_size;

  for (std::size_t p = 0; p < s.P_grid.size(); ++p) {
    const auto model = make_alignment_model(s.config, s.P_grid[p], s.gamma, s.delta1, s.delta2,
                                            s.fmax, s.seed + p);
    const std::int64_t base = model.input_max() + 1;
    std::int64_t total = 1;
    for (int i = 0; i < 2 * M; ++i) {
      total *= base;
      if (total > kMaxEnumeration) {
        throw InfeasibleEnumeration("input alphabet product exceeds 1e7");
      }
    }

    // One representative X_2 per distinct observed image (first in
    // enumeration order), which makes U a function of U'.
    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> reps_by_image;
    std::vector<std::int64_t> x1(M);
    std::vector<std::int64_t> x2(M);
    for (std::int64_t code = 0; code < total; ++code) {
      std::int64_t c = code;
      for (int i = 0; i < M; ++i, c /= base) x2[i] = c % base;
      for (int i = 0; i < M; ++i, c /= base) x1[i] = c % base;
      reps_by_image.try_emplace(observed_image(model, x1, x2), x2);
    }
    std::vector<std::vector<std::int64_t>> reps;
    reps.reserve(reps_by_image.size());
    for (auto& [image, rep] : reps_by_image) reps.push_back(rep);
    const std::size_t R = reps.size();

    const int entropy_draws = std::min(s.trials, 64);
    constexpr std::size_t kChunks = 64;
    std::vector<std::vector<std::int64_t>> sum(kChunks, std::vector<std::int64_t>(R, 0));
    std::vector<std::vector<std::int64_t>> sumsq(kChunks, std::vector<std::int64_t>(R, 0));
    std::vector<double> entropy(static_cast<std::size_t>(entropy_draws), 0.0);
    const std::uint64_t stream_base = (static_cast<std::uint64_t>(p + 1) << 40) | (1ULL << 39);

    parallel_for(kChunks, s.jobs, [&](std::size_t chunk) {
      for (int t = static_cast<int>(chunk); t < s.trials; t += static_cast<int>(kChunks)) {
        const auto g = draw_bounded_coefficients(model, s.seed, stream_base + t);
        const auto sizes = aligned_set_sizes(model, g, reps);
        for (std::size_t i = 0; i < R; ++i) {
          sum[chunk][i] += sizes[i];
          sumsq[chunk][i] += sizes[i] * sizes[i];
        }
        if (t < entropy_draws) {
          // Uniform over the representatives: H(U') = ln R; each U group of
          // size k has probability k / R and holds k representatives.
          double h_u = 0.0;
          for (std::size_t i = 0; i < R; ++i) {
            const double q = static_cast<double>(sizes[i]) / static_cast<double>(R);
            h_u -= std::log(q) / static_cast<double>(R);
          }
          entropy[t] = std::log(static_cast<double>(R)) - h_u;
        }
      }
    });

    AisSizeRecord rec;
    rec.P = s.P_grid[p];
    rec.pbar_one = pbar(rec.P, Rational(1));
    rec.representatives = static_cast<std::int64_t>(R);
    rec.samples = s.trials;
    double best = -1.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
      std::int64_t s1 = 0;
      std::int64_t s2 = 0;
      for (std::size_t c = 0; c < kChunks; ++c) {
        s1 += sum[c][i];
        s2 += sumsq[c][i];
      }
      const double n = static_cast<double>(s.trials);
      const double e = static_cast<double>(s1) / n;
      mean += e / static_cast<double>(R);
      if (e > best) {
        best = e;
        const double var = std::max(0.0, static_cast<double>(s2) / n - e * e);
        rec.max_ci_half_width = 1.96 * std::sqrt(var / n);
      }
    }
    rec.max_expected_size = best;
    rec.mean_expected_size = mean;
    rec.bound = expected_set_size_bound(model);
    rec.within_bound = rec.max_expected_size <= rec.bound;
    rec.entropy_draws = entropy_draws;
    rec.entropy_difference = std::accumulate(entropy.begin(), entropy.end(), 0.0) / entropy_draws;
    rec.lemma1_log_pbar = to_double(report.lemma1_coefficient) * std::log(static_cast<double>(rec.pbar_one));
    report.sizes.push_back(rec);

    log_pbar.push_back(std::log(static_cast<double>(rec.pbar_one)));
    log_size.push_back(std::log(rec.max_expected_size));
  }
  report.growth_exponent = log_pbar.size() >= 2 ? ols_slope(log_pbar, log_size) : 0.0;
  return report;
}

AisReport verify_ais(const AisSettings& s) {
  auto report = verify_alignment_probability(s);
  auto sizes = verify_expected_set_size(s);
  report.sizes = std::move(sizes.sizes);
  report.growth_exponent = sizes.growth_exponent;
  return report;
}

}  // namespace gdof
