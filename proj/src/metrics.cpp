#include "albsim/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

double population_std(double sum, double sum_sq, std::uint64_t count) {
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  return std::sqrt(variance > 0.0 ? variance : 0.0);
}

std::string fixed3(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

// Quotes a CSV field only when it needs it (commas or quotes).
std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

double time_per_token(const CompletedJob& job) {
  if (job.t_stop <= job.t_start)
    throw ContractViolation("time_per_token requires a completed job");
  return static_cast<double>(job.t_stop - job.t_start) / job.size;
}

MetricsAccumulator::MetricsAccumulator(std::size_t group_count,
                                       std::span<const int> agent_group,
                                       std::uint64_t warmup_cutoff_tick)
    : groups_(group_count),
      agents_(agent_group.size()),
      agent_group_(agent_group.begin(), agent_group.end()),
      cutoff_(warmup_cutoff_tick) {}

void MetricsAccumulator::record(const CompletedJob& job) {
  if (job.t_stop <= cutoff_) return;
  const double t = time_per_token(job);
  Sums& group = groups_[agent_group_[job.agent]];
  group.count += 1;
  group.sum += t;
  group.sum_sq += t * t;
  global_.count += 1;
  global_.sum += t;
  global_.sum_sq += t * t;
  Sums& agent = agents_[job.agent];
  agent.count += 1;
  agent.sum += t;
}

RunReport MetricsAccumulator::report(
    std::span<const std::string> group_labels) const {
  RunReport out;
  out.groups.resize(groups_.size());

  auto fill = [](GroupStats& stats, const Sums& sums) {
    stats.jobs = sums.count;
    if (sums.count == 0) return;
    stats.empty = false;
    stats.mean_x1000 = 1000.0 * sums.sum / static_cast<double>(sums.count);
    stats.std_x1000 = 1000.0 * population_std(sums.sum, sums.sum_sq, sums.count);
  };

  // per-agent means, grouped for the secondary (fairness) statistics
  std::vector<double> agent_sum(groups_.size() + 1, 0.0);
  std::vector<double> agent_sum_sq(groups_.size() + 1, 0.0);
  std::vector<std::uint64_t> agent_count(groups_.size() + 1, 0);
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    if (agents_[a].count == 0) continue;
    const double mean = agents_[a].sum / static_cast<double>(agents_[a].count);
    const std::size_t g = static_cast<std::size_t>(agent_group_[a]);
    agent_sum[g] += mean;
    agent_sum_sq[g] += mean * mean;
    agent_count[g] += 1;
    agent_sum.back() += mean;
    agent_sum_sq.back() += mean * mean;
    agent_count.back() += 1;
  }
  auto fill_agents = [&](GroupStats& stats, std::size_t slot) {
    if (agent_count[slot] == 0) return;
    stats.agent_mean_x1000 =
        1000.0 * agent_sum[slot] / static_cast<double>(agent_count[slot]);
    stats.agent_std_x1000 = 1000.0 * population_std(agent_sum[slot],
                                                    agent_sum_sq[slot],
                                                    agent_count[slot]);
  };

  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (g < group_labels.size()) out.groups[g].rule = group_labels[g];
    fill(out.groups[g], groups_[g]);
    fill_agents(out.groups[g], g);
  }
  fill(out.global, global_);
  fill_agents(out.global, groups_.size());
  out.empty = global_.count == 0;
  return out;
}

std::string csv_header() {
  return "scenario,seed,group,rule,jobs_completed,mean_tpt_x1000,"
         "std_tpt_x1000,agent_mean_tpt_x1000,agent_std_tpt_x1000\n";
}

namespace {

void append_row(std::string& out, const std::string& scenario,
                const std::string& seed_field, const std::string& group,
                const std::string& rule, const GroupStats& stats) {
  out += csv_field(scenario);
  out += ',';
  out += seed_field;
  out += ',';
  out += group;
  out += ',';
  out += csv_field(rule);
  out += ',';
  out += std::to_string(stats.jobs);
  out += ',';
  if (!stats.empty) {
    out += fixed3(stats.mean_x1000);
    out += ',';
    out += fixed3(stats.std_x1000);
    out += ',';
    out += fixed3(stats.agent_mean_x1000);
    out += ',';
    out += fixed3(stats.agent_std_x1000);
  } else {
    out += ",,,";  // no numeric means for an empty group
  }
  out += '\n';
}

}  // namespace

void append_csv_rows(std::string& out, const std::string& scenario,
                     const std::string& seed_field, const RunReport& report) {
  for (std::size_t g = 0; g < report.groups.size(); ++g)
    append_row(out, scenario, seed_field, std::to_string(g),
               report.groups[g].rule, report.groups[g]);
  append_row(out, scenario, seed_field, "__global__", "", report.global);
}

}  // namespace albsim
