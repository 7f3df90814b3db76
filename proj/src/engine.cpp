#include "albsim/engine.hpp"

#include <algorithm>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

std::vector<int> agent_groups(const Society& society) {
  std::vector<int> out(static_cast<std::size_t>(society.agents()));
  for (int a = 0; a < society.agents(); ++a) out[a] = society.group_of(a);
  return out;
}

std::vector<std::string> rule_labels(const ScenarioConfig& config) {
  std::vector<std::string> labels;
  labels.reserve(config.groups.size());
  for (const GroupSpec& g : config.groups) labels.push_back(g.rule.label());
  return labels;
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t seed,
                       const RunHooks* hooks)
    : config_(config),
      env_(config.load, config.capacity, derive_seed(seed, 2)),
      society_(Society::build(config)),
      agents_(static_cast<std::size_t>(config.agents)),
      estimators_(static_cast<std::size_t>(config.agents),
                  EfficiencyEstimator(static_cast<std::size_t>(config.resources))),
      resources_(static_cast<std::size_t>(config.resources)),
      active_counts_(static_cast<std::size_t>(config.resources), 0),
      group_labels_(rule_labels(config)),
      metrics_(config.groups.size(), agent_groups(society_),
               config.warmup_ticks()),
      rng_(derive_seed(seed, 1)),
      hooks_(hooks) {
  for (int a = 0; a < config.agents; ++a) {
    agents_[a].group = society_.group_of(a);
    agents_[a].neighborhood = society_.neighborhood_of(a);
  }
  refresh_environment();
}

void Simulation::refresh_environment() {
  env_.prepare(tick_);
  submit_probability_ = env_.load_at(tick_);
  for (std::size_t r = 0; r < resources_.size(); ++r)
    resources_[r].capacity = env_.capacity_at(static_cast<int>(r), tick_);
  next_refresh_ = (tick_ / kTicksPerHour + 1) * kTicksPerHour;
}

void Simulation::place_job(int agent, int resource, double size) {
  agents_[agent].job = Job{resource, size, size, tick_};
  resources_[resource].active.push_back(agent);
  active_counts_[resource] += 1;
}

void Simulation::submit_job(int agent, int resource, double size) {
  if (agents_[agent].engaged())
    throw ContractViolation("agent already has an outstanding job");
  if (size <= 0.0) throw ContractViolation("job size must be positive");
  place_job(agent, resource, size);
}

void Simulation::step() {
  // (1) hour-boundary refresh of capacities and submission probability
  if (tick_ >= next_refresh_) refresh_environment();

  // (2) submissions: every idle agent draws exactly one uniform number
  const int agent_count = static_cast<int>(agents_.size());
  for (int a = 0; a < agent_count; ++a) {
    if (agents_[a].engaged()) continue;
    if (rng_.uniform() >= submit_probability_) continue;
    const double size = static_cast<double>(config_.job_size.sample(rng_));
    const int resource =
        select_for_agent(society_, a, estimators_, active_counts_, rng_);
    place_job(a, resource, size);
  }

  // (3) service: each resource splits its capacity equally; jobs submitted
  // this tick are already in the active set
  for (std::size_t r = 0; r < resources_.size(); ++r) {
    ResourceState& res = resources_[r];
    const std::size_t k = res.active.size();
    if (k == 0) continue;
    if (res.capacity <= 0.0) {
      zero_capacity_warning_ = true;
      continue;
    }
    const double share = res.capacity / static_cast<double>(k);
    for (int a : res.active) agents_[a].job->remaining -= share;
    if (hooks_ && hooks_->on_service)
      hooks_->on_service(static_cast<int>(r), static_cast<int>(k), share);
  }

  // (4) completions, scanned in agent-index order; a job finished during
  // tick t stops at t+1, so every job lasts at least one tick
  for (int a = 0; a < agent_count; ++a) {
    AgentState& agent = agents_[a];
    if (!agent.engaged() || agent.job->remaining > 0.0) continue;
    const Job job = *agent.job;
    agent.job.reset();

    std::vector<int>& active = resources_[job.resource].active;
    *std::find(active.begin(), active.end(), a) = active.back();
    active.pop_back();  // order within the set is irrelevant
    active_counts_[job.resource] -= 1;

    const CompletedJob done{a, job.resource, job.size, job.t_start, tick_ + 1};
    update_estimator(estimators_[a],
                     Feedback{done.resource, done.t_start, done.t_stop, done.size},
                     society_.rule_of(a).omega.w);
    metrics_.record(done);
    if (hooks_ && hooks_->on_complete) hooks_->on_complete(done);
  }

  // (5)
  ++tick_;
}

void Simulation::run_to(std::uint64_t tick) {
  while (tick_ < tick) step();
}

RunReport Simulation::run() {
  run_to(config_.total_ticks());
  return report();
}

RunReport Simulation::report() const {
  return metrics_.report(group_labels_);
}

RunReport run_scenario(const ScenarioConfig& config, std::uint64_t seed,
                       const RunHooks* hooks) {
  ScenarioConfig validated = config;
  validate_and_fill(validated);
  Simulation sim(validated, seed, hooks);
  return sim.run();
}

}  // namespace albsim
