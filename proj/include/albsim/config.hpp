#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "albsim/environment.hpp"
#include "albsim/rules.hpp"

namespace albsim {

struct GroupSpec {
  int size = 0;
  SelectionRule rule;
};

// `count` neighborhoods of `size` agents each, assigned as contiguous
// agent-index blocks in declaration order.
struct NeighborhoodSpec {
  int size = 0;
  int count = 1;
  bool communicating = false;
};

// A fully described scenario. Defaults reproduce the baseline setting:
// 100 agents, 5 resources with capacities {40,20,20,10,10}, job sizes
// uniform over the integers [50,150], load levels {0.1%, 0.3%, 1%}.
struct ScenarioConfig {
  std::string name = "run";
  int agents = 100;
  int resources = 5;
  CapacityScheduleSpec capacity;
  LoadProfileSpec load;
  JobSizeDistribution job_size;
  std::vector<GroupSpec> groups;                 // empty: all omega(0.3,4)
  std::vector<NeighborhoodSpec> neighborhoods;   // empty: one NCN per group
  std::uint64_t seed = 1;
  double warmup_weeks = 1.0;
  double measure_weeks = 4.0;

  std::uint64_t warmup_ticks() const;
  std::uint64_t total_ticks() const;
};

// Fills the group/neighborhood defaults and checks every schema constraint;
// throws ValidationError naming the offending field.
void validate_and_fill(ScenarioConfig& config);

// Parses the documented JSON schema (comments allowed). Whitespace-only
// input yields the default configuration.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config_file(const std::string& path);

}  // namespace albsim
