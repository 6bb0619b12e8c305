#pragma once

#include <string>

#include "weightlab/verify.hpp"

namespace weightlab::detail {

// Applies the pin (when `pinned`), the refinement-trend limit, the finiteness
// and all-vacuous rules, then sets pass.
void finalize(CheckReport& report, const CheckConfig& config, bool pinned = true);

CheckReport start_report(const CheckConfig& config);

std::string fmt(double v);

TestSetSpec scaled_spec(const TestSetSpec& spec, const GridSpec& base);

}  // namespace weightlab::detail
