#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "albsim/rng.hpp"

namespace albsim {

// One tick is one second; changes to load and capacity happen only at hour
// and day boundaries respectively.
inline constexpr std::uint64_t kTicksPerHour = 3600;
inline constexpr std::uint64_t kTicksPerDay = 86400;
inline constexpr std::uint64_t kTicksPerWeek = 604800;
inline constexpr int kHoursPerWeek = 168;
inline constexpr int kHoursPerDay = 24;
inline constexpr int kWeekdays = 5;

enum class LoadKind { fixed, pattern, random };
enum class LoadLevel { lo, hi, peak };
enum class CapacityKind { fixed, rotating };

// Per-tick submission probabilities for the three load regimes.
struct LoadLevels {
  double lo = 0.001;
  double hi = 0.003;
  double peak = 0.01;

  double value(LoadLevel level) const {
    switch (level) {
      case LoadLevel::lo: return lo;
      case LoadLevel::hi: return hi;
      case LoadLevel::peak: return peak;
    }
    return lo;
  }
};

struct LoadProfileSpec {
  LoadKind kind = LoadKind::fixed;
  LoadLevel fixed_level = LoadLevel::hi;
  LoadLevels levels;
};

struct CapacityScheduleSpec {
  CapacityKind kind = CapacityKind::fixed;
  std::vector<double> values{40, 20, 20, 10, 10};  // tokens per tick
};

struct JobSizeDistribution {
  int low = 50;
  int high = 150;

  int sample(Rng& rng) const {
    return static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(low),
                                            static_cast<std::uint32_t>(high)));
  }
};

using WeekLabels = std::array<LoadLevel, kHoursPerWeek>;
using RotationMatrix = std::array<std::array<double, 5>, 5>;  // [weekday][resource]

// Weekday hours 8-17 carry the high load; two of the week's fifty
// high-load hours, drawn uniformly without replacement, are relabeled
// peak. Everything else is low.
WeekLabels gen_pattern_week(Rng& rng);

// Uniformly random permutation of the same hourly multiset
// (118 low / 48 high / 2 peak) over the 168 slots.
WeekLabels gen_random_week(Rng& rng);

// Weekday capacity rotation: a uniformly sampled 5x5 Latin square over the
// five capacity slots, so each resource sees 40 once, 20 twice and 10 twice
// across the five weekdays, and each weekday assigns the full multiset.
// `base` must hold the multiset {40, 20, 20, 10, 10}.
RotationMatrix gen_capacity_rotation(std::span<const double> base, Rng& rng);

// Materializes week tables on demand and answers point queries. prepare()
// must be called with non-decreasing ticks; it regenerates the weekly draws
// whenever a week boundary is crossed.
class Environment {
public:
  Environment(const LoadProfileSpec& load, const CapacityScheduleSpec& capacity,
              std::uint64_t env_seed);

  void prepare(std::uint64_t tick);

  // Hour-constant submission probability.
  double load_at(std::uint64_t tick) const;

  // Day-constant tokens-per-tick for one resource.
  double capacity_at(int resource, std::uint64_t tick) const;

  const LoadProfileSpec& load_spec() const { return load_; }

private:
  LoadProfileSpec load_;
  CapacityScheduleSpec capacity_;
  Rng rng_;
  std::int64_t materialized_week_ = -1;
  WeekLabels labels_{};
  RotationMatrix rotation_{};
};

}  // namespace albsim
