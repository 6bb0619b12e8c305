#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weightlab/verify.hpp"

namespace weightlab {

// Config JSON: {id, check, variant, grid:{n,L,N}, alpha0, weight:{kind,gamma1,gamma2,scale},
// symbol:{id,s}, bmo:{id,c} | "sign", exponents:{p,eta,delta,epsilon},
// lambda_grid:{count,lo_pct,hi_pct}, test_set:{count,kinds,seed,min_scale}, family, gamma, b,
// refine, trend_limit}. Missing fields keep their defaults; unknown fields are rejected.
CheckConfig config_from_json_text(const std::string& text);
std::vector<CheckConfig> configs_from_json_text(const std::string& text);  // object, array or {"checks":[...]}
std::string config_to_json_text(const CheckConfig& config);  // canonical: sorted keys, no whitespace

std::string report_to_json_text(const CheckReport& report, int indent = 2);

// One line per (check, input, lambda); numbers at 17 significant digits.
std::string csv_header();
std::string csv_rows(const CheckReport& report);

std::string format_double(double v);  // %.17g, "inf"/"-inf"/"nan" for non-finite
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace weightlab
