#pragma once

#include "gdof/ais.hpp"
#include "gdof/gdof_core.hpp"
#include "gdof/mac_check.hpp"
#include "gdof/scheme.hpp"
#include "gdof/slope.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gdof {

// Insertion-ordered so that documents are byte-identical across runs.
using Json = nlohmann::ordered_json;

/// One RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);
/// Joins fields with commas and terminates the record with LF.
std::string csv_record(const std::vector<std::string>& fields);
/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

Json to_json(const SystemConfig& config);
Json to_json(const SystemConfig& config, const GdofResult& result);
Json to_json(const Scheme& scheme);
Json to_json(const MacVerdict& verdict);
Json to_json(const AisReport& report);
Json to_json(const SlopeReport& report);

/// Parses {"M1", "M2", "N", "alpha", "eta", "noise_exponents", "d"}. Rational
/// fields are "p/q" strings or integers.
struct MacRequest {
  MacInstance instance;
  std::vector<Rational> demand;
};
MacRequest mac_request_from_json(const Json& doc);

Rational rational_from_json(const Json& value);

/// Columns P, pair_id, empirical_p, bound_p, margin.
std::string ais_csv(const AisReport& report);
/// Columns P, receiver, sum_rate, normalized_slope.
std::string slope_csv(const SlopeReport& report);

std::string scheme_text(const Scheme& scheme);
std::string gdof_text(const SystemConfig& config, const GdofResult& result);
std::string verdict_text(const MacVerdict& verdict);

}  // namespace gdof
