#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "albsim/rng.hpp"

namespace albsim {

// Learning state of a single agent: per-resource estimated time-per-token
// (ee) and per-resource completed-job counts (jd). Entries of ee are
// meaningful only where jd > 0.
struct EfficiencyEstimator {
  std::vector<double> ee;
  std::vector<std::uint64_t> jd;

  EfficiencyEstimator() = default;
  explicit EfficiencyEstimator(std::size_t resources)
      : ee(resources, 0.0), jd(resources, 0) {}

  std::size_t size() const { return ee.size(); }
  bool tried(std::size_t r) const { return jd[r] > 0; }
  bool any_tried() const;

  // Arithmetic mean of ee over resources with jd > 0. Contract: at least
  // one resource tried.
  double mean_tried_ee() const;
};

// Completion feedback as the engine delivers it to a rule.
struct Feedback {
  int resource = 0;
  std::uint64_t t_start = 0;
  std::uint64_t t_stop = 0;
  double size = 0.0;
};

struct OmegaParams {
  double w = 0.3;  // history-weighting constant, in [0, 1]
  double n = 4.0;  // selection-bias exponent, > 0
};

enum class RuleKind { omega, bcsr, static_resource, load_querying };

// A resource-selection rule as it appears in scenario configuration:
//   omega(w=<real>, n=<real>) | bcsr | static(<resource>) | load_querying
struct SelectionRule {
  RuleKind kind = RuleKind::omega;
  OmegaParams omega;   // omega: w and n; bcsr: only w is used for updates
  int resource = -1;   // static_resource target

  bool uses_estimator() const {
    return kind == RuleKind::omega || kind == RuleKind::bcsr;
  }

  std::string label() const;
  static SelectionRule parse(const std::string& spec);
};

// ee(R) := W*T + (1-W)*ee(R) with T = (t_stop - t_start)/S and
// W = w + (1-w)/jd(R), where jd(R) is incremented before W is computed
// (so the first completion on a resource overwrites ee entirely).
void update_estimator(EfficiencyEstimator& est, const Feedback& feedback,
                      double w);

// Normalized selection probabilities: pd'(R) = ee(R)^-n for tried
// resources, mean-of-tried^-n for untried ones. Evaluated in log space so
// extreme exponents neither overflow nor underflow.
std::vector<double> omega_weights(const EfficiencyEstimator& est, double n);

// Samples a resource from omega_weights; uniform if nothing tried yet.
int omega_select(const EfficiencyEstimator& est, double n, Rng& rng);

// Picks the resource with the lowest estimated time-per-token; untried
// resources count as the mean of tried ones; ties break uniformly.
int bcsr_select(const EfficiencyEstimator& est, Rng& rng);

// Picks the first resource with the fewest running jobs (ties resolve to
// the lowest index, i.e. the strongest resource under the usual ordering).
int load_query_select(std::span<const int> active_jobs, Rng& rng);

// Expands a configuration vector (agents per resource) into a per-agent
// resource assignment: the first c_0 agents use resource 0, and so on.
std::vector<int> static_assignment(std::span<const int> configuration,
                                   int agents);

}  // namespace albsim
