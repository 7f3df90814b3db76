#include "albsim/society.hpp"

#include "albsim/errors.hpp"

namespace albsim {

Society Society::build(const ScenarioConfig& config) {
  Society society;
  society.group_of_.resize(static_cast<std::size_t>(config.agents));
  society.neighborhood_of_.resize(static_cast<std::size_t>(config.agents));

  int agent = 0;
  for (std::size_t g = 0; g < config.groups.size(); ++g) {
    const GroupSpec& spec = config.groups[g];
    society.groups_.push_back(
        PopulationGroup{static_cast<int>(g), agent, spec.size, spec.rule});
    for (int k = 0; k < spec.size; ++k)
      society.group_of_[agent++] = static_cast<int>(g);
  }

  agent = 0;
  for (const NeighborhoodSpec& spec : config.neighborhoods) {
    for (int b = 0; b < spec.count; ++b) {
      Neighborhood nb;
      nb.id = static_cast<int>(society.neighborhoods_.size());
      nb.communicating = spec.communicating;
      nb.members.reserve(static_cast<std::size_t>(spec.size));
      for (int k = 0; k < spec.size; ++k) {
        society.neighborhood_of_[agent] = nb.id;
        nb.members.push_back(agent++);
      }
      society.neighborhoods_.push_back(std::move(nb));
    }
  }
  return society;
}

EfficiencyEstimator neighborhood_estimator(
    std::span<const EfficiencyEstimator> all_estimators,
    std::span<const int> members) {
  if (members.empty())
    throw ContractViolation("neighborhood estimator requires members");
  const std::size_t m = all_estimators[members.front()].size();
  EfficiencyEstimator view(m);
  for (std::size_t r = 0; r < m; ++r) {
    double sum = 0.0;
    std::uint64_t tried_members = 0;
    std::uint64_t total_jobs = 0;
    for (int member : members) {
      const EfficiencyEstimator& est = all_estimators[member];
      if (est.jd[r] > 0) {
        sum += est.ee[r];
        ++tried_members;
      }
      total_jobs += est.jd[r];
    }
    // A resource is untried for the neighborhood only if no member tried it;
    // members that never tried it do not dilute the average.
    view.ee[r] = tried_members > 0 ? sum / static_cast<double>(tried_members) : 0.0;
    view.jd[r] = total_jobs;
  }
  return view;
}

int select_for_agent(const Society& society, int agent,
                     std::span<const EfficiencyEstimator> estimators,
                     std::span<const int> resource_active_jobs, Rng& rng) {
  const SelectionRule& rule = society.rule_of(agent);
  switch (rule.kind) {
    case RuleKind::static_resource:
      return rule.resource;
    case RuleKind::load_querying:
      return load_query_select(resource_active_jobs, rng);
    case RuleKind::omega:
    case RuleKind::bcsr:
      break;
  }

  const Neighborhood& nb = society.neighborhoods()[society.neighborhood_of(agent)];
  if (nb.communicating) {
    const EfficiencyEstimator view = neighborhood_estimator(estimators, nb.members);
    return rule.kind == RuleKind::omega ? omega_select(view, rule.omega.n, rng)
                                        : bcsr_select(view, rng);
  }
  const EfficiencyEstimator& own = estimators[agent];
  return rule.kind == RuleKind::omega ? omega_select(own, rule.omega.n, rng)
                                      : bcsr_select(own, rng);
}

}  // namespace albsim
