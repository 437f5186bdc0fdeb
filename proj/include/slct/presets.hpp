#pragma once

#include "slct/config.hpp"

#include <string>
#include <vector>

namespace slct {

/// Built-in case studies: the two- and three-body Lennard-Jones minima, the
/// three collinear three-body saddles, and the unit-triangle Schwarzschild
/// example. These double as the regression corpus for `validate`.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
AnalysisConfig preset_config(const std::string& name);

}  // namespace slct
