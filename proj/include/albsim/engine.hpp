#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "albsim/config.hpp"
#include "albsim/environment.hpp"
#include "albsim/metrics.hpp"
#include "albsim/rng.hpp"
#include "albsim/society.hpp"

namespace albsim {

struct Job {
  int resource = 0;
  double size = 0.0;
  double remaining = 0.0;
  std::uint64_t t_start = 0;
};

// An agent is engaged exactly while it carries a job.
struct AgentState {
  std::optional<Job> job;
  int group = 0;
  int neighborhood = 0;

  bool engaged() const { return job.has_value(); }
};

struct ResourceState {
  double capacity = 0.0;       // tokens per tick, current value
  std::vector<int> active;     // agent ids of the jobs being served
};

// Optional observation points; both may be empty.
struct RunHooks {
  std::function<void(int resource, int active_jobs, double share)> on_service;
  std::function<void(const CompletedJob&)> on_complete;
};

// One scenario run. Strictly sequential; all randomness flows through a
// single stream consumed in agent-index order, so a (config, seed) pair
// fixes the whole trajectory.
class Simulation {
public:
  Simulation(const ScenarioConfig& config, std::uint64_t seed,
             const RunHooks* hooks = nullptr);

  // Advances one tick: refresh environment, submissions (idle agents in
  // index order), equal-share service, completions, then the clock.
  void step();

  void run_to(std::uint64_t tick);
  RunReport run();  // full warmup + measurement horizon

  // Places a job directly, bypassing the submission lottery. The agent
  // must be idle. Used by drivers and tests.
  void submit_job(int agent, int resource, double size);

  std::uint64_t now() const { return tick_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  const std::vector<ResourceState>& resources() const { return resources_; }
  const EfficiencyEstimator& estimator(int agent) const {
    return estimators_[agent];
  }
  const Society& society() const { return society_; }
  bool zero_capacity_warning() const { return zero_capacity_warning_; }
  void set_hooks(const RunHooks* hooks) { hooks_ = hooks; }

  RunReport report() const;

private:
  void refresh_environment();
  void place_job(int agent, int resource, double size);

  ScenarioConfig config_;
  Environment env_;
  Society society_;
  std::vector<AgentState> agents_;
  std::vector<EfficiencyEstimator> estimators_;
  std::vector<ResourceState> resources_;
  std::vector<int> active_counts_;
  std::vector<std::string> group_labels_;
  MetricsAccumulator metrics_;
  Rng rng_;
  const RunHooks* hooks_ = nullptr;
  std::uint64_t tick_ = 0;
  std::uint64_t next_refresh_ = 0;
  double submit_probability_ = 0.0;
  bool zero_capacity_warning_ = false;
};

// Validates the configuration, runs it to completion and reports.
RunReport run_scenario(const ScenarioConfig& config, std::uint64_t seed,
                       const RunHooks* hooks = nullptr);

}  // namespace albsim
