#include "gdof/serialize.hpp"

#include "gdof/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace gdof {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_record(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  throw ParseError("expected a \"p/q\" string or an integer");
}

Json to_json(const SystemConfig& c) {
  return Json{{"M", c.M}, {"N", c.N}, {"alpha", to_string(c.alpha)}, {"beta", to_string(c.beta)}};
}

Json to_json(const SystemConfig& c, const GdofResult& r) {
  Json j;
  j["config"] = to_json(c);
  j["sum_gdof"] = to_string(r.sum_gdof);
  j["sum_gdof_decimal"] = to_decimal(r.sum_gdof);
  j["regime"] = std::string(regime_name(r.regime));
  j["branch"] = std::string(branch_name(r.active_branch));
  j["beta_used"] = to_string(r.beta_used);
  j["clamped"] = r.clamped;
  j["bound_low"] = r.bound_low ? Json(to_string(*r.bound_low)) : Json(nullptr);
  j["bound_high"] = r.bound_high ? Json(to_string(*r.bound_high)) : Json(nullptr);
  return j;
}

namespace {

std::string_view sub_case_name(SubCase s) {
  switch (s) {
    case SubCase::kNone: return "none";
    case SubCase::kInSq: return "a (in S_q)";
    case SubCase::kOutsideSq: return "b (outside S_q)";
  }
  return "?";
}

}  // namespace

Json to_json(const Scheme& s) {
  Json j;
  j["config"] = to_json(s.config);
  j["regime"] = std::string(regime_name(s.regime));
  j["sub_case"] = std::string(sub_case_name(s.sub_case));
  j["per_user_gdof"] = to_string(s.per_user_gdof);
  j["sum_gdof"] = to_string(2 * s.per_user_gdof);
  j["zero_forced_margin"] = to_string(s.zero_forced_margin);
  Json layers = Json::array();
  for (const auto& l : s.layers) {
    layers.push_back(Json{{"user", l.user},
                          {"kind", std::string(layer_kind_name(l.kind))},
                          {"stream", l.stream_index},
                          {"eta", to_string(l.power_exponent)},
                          {"gdof", to_string(l.stream_gdof)}});
  }
  j["layers"] = layers;
  return j;
}

Json to_json(const MacVerdict& v) {
  Json j;
  j["ok"] = v.ok;
  j["subsets_checked"] = v.subsets_checked;
  if (!v.ok) {
    j["violated_subset"] = v.violated_subset;
    j["lhs"] = to_string(v.lhs);
    j["rhs"] = to_string(v.rhs);
  }
  return j;
}

Json to_json(const AisReport& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["gamma"] = to_string(r.gamma);
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["skipped"] = r.skipped;
  if (r.skipped) j["skip_reason"] = r.skip_reason;
  j["pair_coverage"] = r.pair_coverage;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(Json{{"P", p.P},
                         {"pair_id", p.pair_id},
                         {"e2", p.e2},
                         {"f2", p.f2},
                         {"spread", p.spread},
                         {"aligned", p.aligned},
                         {"samples", p.samples},
                         {"empirical_p", p.empirical_p},
                         {"ci_half_width", p.ci_half_width},
                         {"bound_p", p.bound_p},
                         {"margin", p.margin},
                         {"within_bound", p.within_bound}});
  }
  j["pairs"] = pairs;
  Json sizes = Json::array();
  for (const auto& s : r.sizes) {
    sizes.push_back(Json{{"P", s.P},
                         {"pbar_one", s.pbar_one},
                         {"representatives", s.representatives},
                         {"samples", s.samples},
                         {"max_expected_size", s.max_expected_size},
                         {"max_ci_half_width", s.max_ci_half_width},
                         {"mean_expected_size", s.mean_expected_size},
                         {"bound", s.bound},
                         {"within_bound", s.within_bound},
                         {"entropy_difference", s.entropy_difference},
                         {"entropy_draws", s.entropy_draws},
                         {"lemma1_log_pbar", s.lemma1_log_pbar}});
  }
  j["sizes"] = sizes;
  j["lemma1_coefficient"] = to_string(r.lemma1_coefficient);
  j["growth_exponent"] = r.growth_exponent;
  return j;
}

Json to_json(const SlopeReport& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["target"] = to_string(r.target);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"P", row.P},
                        {"receiver", row.receiver},
                        {"sum_rate", row.sum_rate},
                        {"normalized_slope", row.normalized_slope}});
  }
  j["rows"] = rows;
  j["extrapolated_slope"] = r.extrapolated_slope;
  j["fit_slope"] = r.fit_slope;
  j["relative_error"] = r.relative_error;
  j["within_tolerance"] = r.within_tolerance;
  j["monotone_toward_target"] = r.monotone_toward_target;
  j["max_spectral_norm_U"] = r.max_spectral_norm_U;
  return j;
}

MacRequest mac_request_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("MAC instance must be a JSON object");
  MacRequest req;
  try {
    req.instance.M1 = doc.at("M1").get<int>();
    req.instance.M2 = doc.at("M2").get<int>();
    req.instance.N = doc.at("N").get<int>();
    req.instance.alpha = doc.contains("alpha") ? rational_from_json(doc.at("alpha")) : Rational(0);
    for (const auto& v : doc.at("eta")) req.instance.eta.push_back(rational_from_json(v));
    if (doc.contains("noise_exponents")) {
      for (const auto& v : doc.at("noise_exponents")) {
        req.instance.noise_exponents.push_back(rational_from_json(v));
      }
    } else {
      req.instance.noise_exponents.assign(req.instance.N, Rational(0));
    }
    for (const auto& v : doc.at("d")) req.demand.push_back(rational_from_json(v));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed MAC instance: ") + e.what());
  }
  return req;
}

std::string ais_csv(const AisReport& r) {
  std::string out = csv_record({"P", "pair_id", "empirical_p", "bound_p", "margin"});
  for (const auto& p : r.pairs) {
    out += csv_record({std::to_string(p.P), std::to_string(p.pair_id), format_double(p.empirical_p),
                       format_double(p.bound_p), format_double(p.margin)});
  }
  return out;
}

std::string slope_csv(const SlopeReport& r) {
  std::string out = csv_record({"P", "receiver", "sum_rate", "normalized_slope"});
  for (const auto& row : r.rows) {
    out += csv_record({format_double(row.P), std::to_string(row.receiver), format_double(row.sum_rate),
                       format_double(row.normalized_slope)});
  }
  return out;
}

std::string gdof_text(const SystemConfig& c, const GdofResult& r) {
  std::ostringstream os;
  os << "M " << c.M << "  N " << c.N << "  alpha " << to_string(c.alpha) << "  beta "
     << to_string(c.beta) << '\n';
  os << "sum_gdof " << to_string(r.sum_gdof) << " (" << to_decimal(r.sum_gdof) << ")\n";
  os << "regime " << regime_name(r.regime) << '\n';
  os << "branch " << branch_name(r.active_branch) << '\n';
  if (r.clamped) os << "beta clamped to " << to_string(r.beta_used) << '\n';
  if (r.bound_low) os << "bound_low " << to_string(*r.bound_low) << '\n';
  if (r.bound_high) os << "bound_high " << to_string(*r.bound_high) << '\n';
  return os.str();
}

std::string scheme_text(const Scheme& s) {
  std::ostringstream os;
  os << "regime " << regime_name(s.regime) << '\n';
  if (s.sub_case != SubCase::kNone) os << "sub-case " << sub_case_name(s.sub_case) << '\n';
  os << "per_user_gdof " << to_string(s.per_user_gdof) << "  sum_gdof " << to_string(2 * s.per_user_gdof)
     << '\n';
  os << "user  kind         stream  eta     gdof\n";
  for (const auto& l : s.layers) {
    std::string kind(layer_kind_name(l.kind));
    kind.resize(12, ' ');
    std::string eta = to_string(l.power_exponent);
    eta.resize(std::max<std::size_t>(eta.size(), 7), ' ');
    os << l.user << "     " << kind << ' ' << l.stream_index << "       " << eta << ' '
       << to_string(l.stream_gdof) << '\n';
  }
  return os.str();
}

std::string verdict_text(const MacVerdict& v) {
  std::ostringstream os;
  if (v.ok) {
    os << "ok (" << v.subsets_checked << " subsets checked)\n";
    return os.str();
  }
  os << "violated at S = {";
  for (std::size_t i = 0; i < v.violated_subset.size(); ++i) {
    os << (i ? ", " : "") << v.violated_subset[i];
  }
  os << "}: lhs " << to_string(v.lhs) << " > rhs " << to_string(v.rhs) << '\n';
  return os.str();
}

}  // namespace gdof
