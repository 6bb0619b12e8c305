#pragma once

#include <string>

#include "weightlab/grid.hpp"
#include "weightlab/pdo.hpp"
#include "weightlab/weights.hpp"

namespace weightlab::cli {

// "power:g1:g2[:scale]" or "const:c"
Weight parse_weight(const std::string& spec);
// "riesz", "bessel:1", "band:4", ...
Symbol parse_symbol(const std::string& spec);
// "indicator:a:b", "gaussian:c:s", "bump:c:r", "trig:k", "const:c"
SampledFunction parse_function(const std::string& spec, const GridSpec& grid);

int main(int argc, char** argv);

}  // namespace weightlab::cli
