#pragma once

#include <span>
#include <vector>

#include "albsim/config.hpp"
#include "albsim/rules.hpp"

namespace albsim {

struct PopulationGroup {
  int id = 0;
  int first_agent = 0;
  int size = 0;
  SelectionRule rule;
};

struct Neighborhood {
  int id = 0;
  bool communicating = false;
  std::vector<int> members;  // agent indices, contiguous by construction
};

// Immutable partition of the agent population into rule-sharing groups and
// communication neighborhoods. Memberships never change during a run.
class Society {
public:
  static Society build(const ScenarioConfig& config);

  int agents() const { return static_cast<int>(group_of_.size()); }
  const std::vector<PopulationGroup>& groups() const { return groups_; }
  const std::vector<Neighborhood>& neighborhoods() const { return neighborhoods_; }

  int group_of(int agent) const { return group_of_[agent]; }
  int neighborhood_of(int agent) const { return neighborhood_of_[agent]; }
  const SelectionRule& rule_of(int agent) const {
    return groups_[group_of_[agent]].rule;
  }

private:
  std::vector<PopulationGroup> groups_;
  std::vector<Neighborhood> neighborhoods_;
  std::vector<int> group_of_;
  std::vector<int> neighborhood_of_;
};

// Aggregated decision-time view over member estimators: per resource, the
// mean ee over members that tried it and the summed jd. Recomputed on every
// call; members themselves are never modified.
EfficiencyEstimator neighborhood_estimator(
    std::span<const EfficiencyEstimator> all_estimators,
    std::span<const int> members);

// Resource choice for a submitting agent. Members of a communicating
// neighborhood decide on the neighborhood estimator; everyone else uses
// their own. Static and load-querying rules ignore estimators entirely.
int select_for_agent(const Society& society, int agent,
                     std::span<const EfficiencyEstimator> estimators,
                     std::span<const int> resource_active_jobs, Rng& rng);

}  // namespace albsim
