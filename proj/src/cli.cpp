#include "gdof/cli.hpp"

#include "gdof/ais.hpp"
#include "gdof/errors.hpp"
#include "gdof/mac_check.hpp"
#include "gdof/parallel.hpp"
#include "gdof/scheme.hpp"
#include "gdof/serialize.hpp"
#include "gdof/slope.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gdof {

namespace {

std::vector<Rational> grid(const Rational& from, const Rational& to, const Rational& step) {
  if (step <= 0) throw InvalidConfig("step must be positive");
  std::vector<Rational> out;
  for (Rational v = from; v <= to; v += step) out.push_back(v);
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
  validate(SystemConfig{spec.M, spec.N, Rational(0), Rational(0)});
  std::vector<std::pair<Rational, Rational>> points;
  for (const Rational& a : grid(spec.alpha_from, spec.alpha_to, spec.alpha_step)) {
    switch (spec.beta_rule) {
      case BetaRule::kFixed: points.emplace_back(a, spec.beta); break;
      case BetaRule::kFraction: points.emplace_back(a, spec.beta * a); break;
      case BetaRule::kRange:
        for (const Rational& b : grid(spec.beta_from, spec.beta_to, spec.beta_step)) {
          points.emplace_back(a, b);
        }
        break;
    }
  }
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    const auto& [a, b] = points[i];
    rows[i] = SweepRow{a, b, sum_gdof(SystemConfig{spec.M, spec.N, a, b})};
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = csv_record({"alpha", "beta", "sum_gdof", "sum_gdof_exact", "regime", "branch"});
  for (const auto& r : rows) {
    out += csv_record({to_string(r.alpha), to_string(r.beta), to_decimal(r.result.sum_gdof),
                       to_string(r.result.sum_gdof), std::string(regime_name(r.result.regime)),
                       std::string(branch_name(r.result.active_branch))});
  }
  return out;
}

std::string sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  Json j;
  j["M"] = spec.M;
  j["N"] = spec.N;
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"alpha", to_string(r.alpha)},
                       {"beta", to_string(r.beta)},
                       {"sum_gdof", to_decimal(r.result.sum_gdof)},
                       {"sum_gdof_exact", to_string(r.result.sum_gdof)},
                       {"regime", std::string(regime_name(r.result.regime))},
                       {"branch", std::string(branch_name(r.result.active_branch))}});
  }
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

namespace {

struct Common {
  int M = 0;
  int N = 0;
  std::string alpha;
  std::string beta;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool json = false;
  std::string out;
};

void add_config(CLI::App* cmd, Common& c, bool required) {
  auto* m = cmd->add_option("--M", c.M, "transmit antennas per user");
  auto* n = cmd->add_option("--N", c.N, "receive antennas per user");
  auto* a = cmd->add_option("--alpha", c.alpha, "cross-link strength exponent, p/q");
  auto* b = cmd->add_option("--beta", c.beta, "CSIT quality exponent, p/q");
  if (required) {
    m->required();
    n->required();
    a->required();
    b->required();
  }
}

void add_io(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json, "emit JSON");
  cmd->add_option("--out", c.out, "write the report to this file");
}

void add_run(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

SystemConfig config_of(const Common& c) {
  return SystemConfig{c.M, c.N, parse_rational(c.alpha), parse_rational(c.beta)};
}

int emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidConfig("cannot open output file " + c.out);
  f << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sum-GDoF toolkit for the two-user MIMO interference channel with partial CSIT"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;

  auto* eval = app.add_subcommand("eval", "sum GDoF at one (M, N, alpha, beta)");
  add_config(eval, c, true);
  add_io(eval, c);

  SweepSpec sw;
  std::string a_from = "0", a_to = "1", a_step = "1/24";
  std::string b_fixed, b_fraction, b_from, b_to, b_step = "1/24";
  auto* sweep = app.add_subcommand("sweep", "sum GDoF over an alpha grid");
  sweep->add_option("--M", c.M)->required();
  sweep->add_option("--N", c.N)->required();
  sweep->add_option("--alpha-from", a_from);
  sweep->add_option("--alpha-to", a_to);
  sweep->add_option("--alpha-step", a_step);
  auto* bf = sweep->add_option("--beta", b_fixed, "fixed beta");
  auto* bfr = sweep->add_option("--beta-fraction", b_fraction, "beta = fraction * alpha");
  auto* bfrom = sweep->add_option("--beta-from", b_from, "beta range start");
  sweep->add_option("--beta-to", b_to);
  sweep->add_option("--beta-step", b_step);
  bf->excludes(bfr)->excludes(bfrom);
  bfr->excludes(bfrom);
  add_io(sweep, c);
  add_run(sweep, c);

  auto* scheme = app.add_subcommand("scheme", "layered achievable scheme");
  add_config(scheme, c, true);
  add_io(scheme, c);

  std::string mac_input = "-";
  auto* mac = app.add_subcommand("check-mac", "GDoF feasibility of a MAC instance (JSON input)");
  mac->add_option("--input", mac_input, "JSON file, or - for stdin");
  add_io(mac, c);

  std::vector<std::int64_t> ais_P;
  std::string gamma = "0";
  int trials = 10000;
  int pairs = 200;
  auto* ais = app.add_subcommand("verify-ais", "aligned-image-sets Monte Carlo check");
  add_config(ais, c, false);
  ais->add_option("--gamma", gamma, "observation level of the other user, p/q");
  ais->add_option("--P", ais_P, "power values (repeatable)");
  ais->add_option("--trials", trials)->check(CLI::PositiveNumber);
  ais->add_option("--pairs", pairs)->check(CLI::PositiveNumber);
  add_io(ais, c);
  add_run(ais, c);

  std::vector<double> slope_P;
  int slope_trials = 20;
  auto* slope = app.add_subcommand("slope", "finite-SNR sum-rate slope diagnostic");
  add_config(slope, c, true);
  slope->add_option("--P", slope_P, "power grid (repeatable)");
  slope->add_option("--trials", slope_trials)->check(CLI::PositiveNumber);
  add_io(slope, c);
  add_run(slope, c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*eval) {
      const SystemConfig cfg = config_of(c);
      const GdofResult r = sum_gdof(cfg);
      return emit(c, c.json ? to_json(cfg, r).dump(2) + "\n" : gdof_text(cfg, r), out);
    }
    if (*sweep) {
      sw.M = c.M;
      sw.N = c.N;
      sw.alpha_from = parse_rational(a_from);
      sw.alpha_to = parse_rational(a_to);
      sw.alpha_step = parse_rational(a_step);
      sw.seed = c.seed;
      sw.json = c.json;
      if (!b_fraction.empty()) {
        sw.beta_rule = BetaRule::kFraction;
        sw.beta = parse_rational(b_fraction);
      } else if (!b_from.empty()) {
        sw.beta_rule = BetaRule::kRange;
        sw.beta_from = parse_rational(b_from);
        sw.beta_to = parse_rational(b_to.empty() ? b_from : b_to);
        sw.beta_step = parse_rational(b_step);
      } else {
        sw.beta_rule = BetaRule::kFixed;
        sw.beta = b_fixed.empty() ? Rational(0) : parse_rational(b_fixed);
      }
      const auto rows = run_sweep(sw, c.jobs);
      return emit(c, c.json ? sweep_json(sw, rows) : sweep_csv(rows), out);
    }
    if (*scheme) {
      const Scheme s = synthesize(config_of(c));
      return emit(c, c.json ? to_json(s).dump(2) + "\n" : scheme_text(s), out);
    }
    if (*mac) {
      Json doc;
      try {
        if (mac_input == "-") {
          doc = Json::parse(std::cin);
        } else {
          std::ifstream f(mac_input);
          if (!f) throw InvalidConfig("cannot open " + mac_input);
          doc = Json::parse(f);
        }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
      }
      const MacRequest req = mac_request_from_json(doc);
      const MacVerdict v = feasible(req.instance, req.demand);
      emit(c, c.json ? to_json(v).dump(2) + "\n" : verdict_text(v), out);
      return v.ok ? kExitOk : kExitInvariant;
    }
    if (*ais) {
      AisSettings s;
      s.config = SystemConfig{c.M ? c.M : 2, c.N ? c.N : 1,
                              parse_rational(c.alpha.empty() ? "1" : c.alpha),
                              parse_rational(c.beta.empty() ? "1/2" : c.beta)};
      s.gamma = parse_rational(gamma);
      if (!ais_P.empty()) s.P_grid = ais_P;
      s.trials = trials;
      s.pairs = pairs;
      s.seed = c.seed;
      s.jobs = c.jobs;
      const AisReport r = verify_ais(s);
      emit(c, c.json ? to_json(r).dump(2) + "\n" : ais_csv(r), out);
      bool ok = r.pair_coverage >= 0.99;
      for (const auto& z : r.sizes) ok = ok && z.within_bound;
      return ok ? kExitOk : kExitInvariant;
    }
    if (*slope) {
      SlopeSettings s;
      if (!slope_P.empty()) s.P_grid = slope_P;
      s.trials = slope_trials;
      s.seed = c.seed;
      s.jobs = c.jobs;
      const SlopeReport r = slope_check(synthesize(config_of(c)), s);
      emit(c, c.json ? to_json(r).dump(2) + "\n" : slope_csv(r), out);
      return r.within_tolerance || r.monotone_toward_target ? kExitOk : kExitInvariant;
    }
  } catch (const PerfectCsitRegime& e) {
    err << e.what() << '\n';
    return kExitPerfectCsit;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const RejectionBudgetExceeded& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularMatrix& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NullSpaceDeficient& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace gdof
