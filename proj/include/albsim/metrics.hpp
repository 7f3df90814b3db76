#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace albsim {

struct CompletedJob {
  int agent = 0;
  int resource = 0;
  double size = 0.0;
  std::uint64_t t_start = 0;
  std::uint64_t t_stop = 0;

  bool operator==(const CompletedJob&) const = default;
};

// T = (t_stop - t_start) / S for a completed job.
double time_per_token(const CompletedJob& job);

// Statistics for one group (or the global population). Time-per-token
// figures are reported scaled by 1000; deviations are population standard
// deviations. The agent_* pair describes the spread of per-agent means.
struct GroupStats {
  std::string rule;
  std::uint64_t jobs = 0;
  double mean_x1000 = 0.0;
  double std_x1000 = 0.0;
  double agent_mean_x1000 = 0.0;
  double agent_std_x1000 = 0.0;
  bool empty = true;
};

struct RunReport {
  std::vector<GroupStats> groups;
  GroupStats global;
  bool empty = true;
};

// Streaming per-group and per-agent sums of time-per-token. Only jobs
// completing after the warmup cutoff are recorded.
class MetricsAccumulator {
public:
  MetricsAccumulator(std::size_t group_count, std::span<const int> agent_group,
                     std::uint64_t warmup_cutoff_tick);

  void record(const CompletedJob& job);

  std::uint64_t recorded() const { return global_.count; }
  std::uint64_t warmup_cutoff() const { return cutoff_; }

  RunReport report(std::span<const std::string> group_labels) const;

private:
  struct Sums {
    std::uint64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
  };

  std::vector<Sums> groups_;
  Sums global_;
  std::vector<Sums> agents_;  // sum_sq unused per agent
  std::vector<int> agent_group_;
  std::uint64_t cutoff_;
};

// CSV schema shared by single runs and sweeps; one row per group plus a
// __global__ row per run. Values are printed with three decimal places.
std::string csv_header();
void append_csv_rows(std::string& out, const std::string& scenario,
                     const std::string& seed_field, const RunReport& report);

}  // namespace albsim
