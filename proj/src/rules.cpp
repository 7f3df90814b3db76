#include "albsim/rules.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <utility>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

// Shortest clean rendering of a parameter value ("0.3", "4", "20").
std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ValidationError("rule", "malformed " + what + " value '" + text + "'");
  return v;
}

// Parses "key=value, key=value" pairs from inside a rule's parentheses.
std::vector<std::pair<std::string, std::string>> parse_args(
    const std::string& inner) {
  std::vector<std::pair<std::string, std::string>> args;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    std::size_t comma = inner.find(',', pos);
    if (comma == std::string::npos) comma = inner.size();
    const std::string item = trim(inner.substr(pos, comma - pos));
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw ValidationError("rule", "expected key=value, got '" + item + "'");
      args.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    pos = comma + 1;
  }
  return args;
}

}  // namespace

bool EfficiencyEstimator::any_tried() const {
  return std::any_of(jd.begin(), jd.end(),
                     [](std::uint64_t c) { return c > 0; });
}

double EfficiencyEstimator::mean_tried_ee() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < ee.size(); ++r) {
    if (jd[r] > 0) {
      sum += ee[r];
      ++count;
    }
  }
  if (count == 0)
    throw ContractViolation("mean_tried_ee requires at least one tried resource");
  return sum / static_cast<double>(count);
}

void update_estimator(EfficiencyEstimator& est, const Feedback& feedback,
                      double w) {
  if (feedback.size <= 0.0)
    throw ContractViolation("feedback job size must be positive");
  if (feedback.t_stop <= feedback.t_start)
    throw ContractViolation("feedback duration must be positive");
  const double t = static_cast<double>(feedback.t_stop - feedback.t_start) /
                   feedback.size;
  std::uint64_t& count = est.jd[feedback.resource];
  count += 1;  // incremented first, so the first feedback gets W = 1
  const double weight = w + (1.0 - w) / static_cast<double>(count);
  est.ee[feedback.resource] =
      weight * t + (1.0 - weight) * est.ee[feedback.resource];
}

std::vector<double> omega_weights(const EfficiencyEstimator& est, double n) {
  if (n <= 0.0)
    throw ContractViolation("selection-bias exponent must be positive");
  const std::size_t m = est.size();
  const double untried_value = est.mean_tried_ee();

  std::vector<double> weights(m);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < m; ++r) {
    const double value = est.tried(r) ? est.ee[r] : untried_value;
    if (value <= 0.0)
      throw ContractViolation("estimated time-per-token must be positive");
    weights[r] = -n * std::log(value);
    max_log = std::max(max_log, weights[r]);
  }
  // Shift by the max before exponentiating; the shift cancels under
  // normalization and keeps every weight finite.
  double sum = 0.0;
  for (double& lw : weights) {
    lw = std::exp(lw - max_log);
    sum += lw;
  }
  for (double& lw : weights) lw /= sum;
  return weights;
}

int omega_select(const EfficiencyEstimator& est, double n, Rng& rng) {
  if (!est.any_tried())
    return static_cast<int>(rng.pick(est.size()));
  const std::vector<double> pd = omega_weights(est, n);
  return static_cast<int>(rng.categorical(pd));
}

int bcsr_select(const EfficiencyEstimator& est, Rng& rng) {
  if (!est.any_tried())
    return static_cast<int>(rng.pick(est.size()));
  const double untried_value = est.mean_tried_ee();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> ties;
  for (std::size_t r = 0; r < est.size(); ++r) {
    const double value = est.tried(r) ? est.ee[r] : untried_value;
    if (value < best) {
      best = value;
      ties.assign(1, static_cast<int>(r));
    } else if (value == best) {
      ties.push_back(static_cast<int>(r));
    }
  }
  return ties.size() == 1 ? ties[0] : ties[rng.pick(ties.size())];
}

int load_query_select(std::span<const int> active_jobs, Rng&) {
  // First minimum: with resources conventionally listed in decreasing
  // capacity order, a tie on "how busy" resolves toward the strongest
  // resource. A uniform tie-break would scatter jobs over weak resources
  // whenever the system is idle and ruin the rule's benchmark quality.
  std::size_t best = 0;
  for (std::size_t r = 1; r < active_jobs.size(); ++r)
    if (active_jobs[r] < active_jobs[best]) best = r;
  return static_cast<int>(best);
}

std::vector<int> static_assignment(std::span<const int> configuration,
                                   int agents) {
  long long sum = 0;
  for (int c : configuration) {
    if (c < 0)
      throw ValidationError("configuration",
                            "entries must be non-negative");
    sum += c;
  }
  if (sum != agents)
    throw ValidationError(
        "configuration", "entries sum to " + std::to_string(sum) +
                             ", expected " + std::to_string(agents));
  std::vector<int> assignment;
  assignment.reserve(static_cast<std::size_t>(agents));
  for (std::size_t r = 0; r < configuration.size(); ++r)
    assignment.insert(assignment.end(), configuration[r], static_cast<int>(r));
  return assignment;
}

std::string SelectionRule::label() const {
  switch (kind) {
    case RuleKind::omega:
      return "omega(w=" + format_number(omega.w) +
             ",n=" + format_number(omega.n) + ")";
    case RuleKind::bcsr:
      return omega.w == 0.3 ? "bcsr" : "bcsr(w=" + format_number(omega.w) + ")";
    case RuleKind::static_resource:
      return "static(" + std::to_string(resource) + ")";
    case RuleKind::load_querying:
      return "load_querying";
  }
  return "?";
}

SelectionRule SelectionRule::parse(const std::string& spec) {
  const std::string s = trim(spec);
  SelectionRule rule;

  auto inner_of = [&](std::size_t open) {
    if (s.back() != ')')
      throw ValidationError("rule", "missing ')' in '" + spec + "'");
    return s.substr(open + 1, s.size() - open - 2);
  };

  if (s == "load_querying") {
    rule.kind = RuleKind::load_querying;
    return rule;
  }
  if (s == "bcsr") {
    rule.kind = RuleKind::bcsr;
    return rule;
  }
  if (s.rfind("bcsr(", 0) == 0) {
    rule.kind = RuleKind::bcsr;
    for (const auto& [key, value] : parse_args(inner_of(4))) {
      if (key == "w")
        rule.omega.w = parse_real(value, "w");
      else
        throw ValidationError("rule", "unknown bcsr argument '" + key + "'");
    }
  } else if (s.rfind("static(", 0) == 0) {
    rule.kind = RuleKind::static_resource;
    const std::string inner = trim(inner_of(6));
    char* end = nullptr;
    const long r = std::strtol(inner.c_str(), &end, 10);
    if (inner.empty() || end != inner.c_str() + inner.size())
      throw ValidationError("rule", "malformed resource index '" + inner + "'");
    rule.resource = static_cast<int>(r);
  } else if (s.rfind("omega(", 0) == 0) {
    rule.kind = RuleKind::omega;
    bool have_w = false, have_n = false;
    for (const auto& [key, value] : parse_args(inner_of(5))) {
      if (key == "w") {
        rule.omega.w = parse_real(value, "w");
        have_w = true;
      } else if (key == "n") {
        rule.omega.n = parse_real(value, "n");
        have_n = true;
      } else {
        throw ValidationError("rule", "unknown omega argument '" + key + "'");
      }
    }
    if (!have_w || !have_n)
      throw ValidationError("rule", "omega requires both w and n");
  } else {
    throw ValidationError("rule", "unknown selection rule '" + spec + "'");
  }

  if (rule.uses_estimator()) {
    if (rule.omega.w < 0.0 || rule.omega.w > 1.0)
      throw ValidationError("rule", "w must lie in [0, 1]");
    if (rule.kind == RuleKind::omega && rule.omega.n <= 0.0)
      throw ValidationError("rule", "n must be positive");
  }
  if (rule.kind == RuleKind::static_resource && rule.resource < 0)
    throw ValidationError("rule", "resource index must be non-negative");
  return rule;
}

}  // namespace albsim
