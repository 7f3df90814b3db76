#pragma once

#include <string>
#include <vector>

#include "albsim/sweep.hpp"

namespace albsim {

struct PresetInfo {
  std::string name;
  std::string description;
};

// The built-in experiment catalog. Each preset expands to a ready-to-run
// sweep (single-cell presets are plain scenarios).
const std::vector<PresetInfo>& preset_catalog();

// seeds <= 0 selects the default of five seeds.
SweepSpec preset(const std::string& name, int seeds = 0);

}  // namespace albsim
