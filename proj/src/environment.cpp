#include "albsim/environment.hpp"

#include <algorithm>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

constexpr int kHighBlockStart = 8;   // weekday high-load block: hours [8, 18)
constexpr int kHighBlockHours = 10;

void shuffle_tail(std::span<int> values, Rng& rng) {
  // Fisher-Yates, consuming one draw per swap position.
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.pick(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace

WeekLabels gen_pattern_week(Rng& rng) {
  WeekLabels week;
  week.fill(LoadLevel::lo);
  for (int day = 0; day < kWeekdays; ++day) {
    const int base = day * kHoursPerDay + kHighBlockStart;
    for (int h = 0; h < kHighBlockHours; ++h)
      week[base + h] = LoadLevel::hi;
  }
  // two of the week's fifty high-load hours become peak hours
  const int block_hours = kWeekdays * kHighBlockHours;
  const int first = static_cast<int>(rng.pick(block_hours));
  int second = static_cast<int>(rng.pick(block_hours - 1));
  if (second >= first) ++second;
  const auto slot = [](int k) {
    return (k / kHighBlockHours) * kHoursPerDay + kHighBlockStart +
           k % kHighBlockHours;
  };
  week[slot(first)] = LoadLevel::peak;
  week[slot(second)] = LoadLevel::peak;
  return week;
}

WeekLabels gen_random_week(Rng& rng) {
  std::array<int, kHoursPerWeek> slots{};
  int i = 0;
  for (; i < 118; ++i) slots[i] = 0;
  for (; i < 166; ++i) slots[i] = 1;
  for (; i < kHoursPerWeek; ++i) slots[i] = 2;
  shuffle_tail(slots, rng);
  WeekLabels week;
  for (int h = 0; h < kHoursPerWeek; ++h) {
    week[h] = slots[h] == 0   ? LoadLevel::lo
              : slots[h] == 1 ? LoadLevel::hi
                              : LoadLevel::peak;
  }
  return week;
}

RotationMatrix gen_capacity_rotation(std::span<const double> base, Rng& rng) {
  if (base.size() != 5)
    throw ValidationError("capacity.values",
                          "capacity rotation requires exactly 5 resources");
  std::array<double, 5> sorted{};
  std::copy(base.begin(), base.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted != std::array<double, 5>{40, 20, 20, 10, 10})
    throw ValidationError("capacity.values",
                          "capacity rotation requires the multiset "
                          "{40, 20, 20, 10, 10}");

  // Rejection-sample a uniform 5x5 Latin square over five distinguishable
  // slots: draw independent uniform row permutations and restart on the
  // first column clash. Restarting keeps the accepted square uniform.
  std::array<std::array<int, 5>, 5> square{};
  for (bool accepted = false; !accepted;) {
    accepted = true;
    for (int row = 0; row < 5 && accepted; ++row) {
      std::array<int, 5> perm{0, 1, 2, 3, 4};
      shuffle_tail(perm, rng);
      for (int col = 0; col < 5; ++col) {
        for (int prev = 0; prev < row; ++prev) {
          if (square[prev][col] == perm[col]) {
            accepted = false;
            break;
          }
        }
        if (!accepted) break;
        square[row][col] = perm[col];
      }
    }
  }

  RotationMatrix rotation{};
  for (int day = 0; day < 5; ++day)
    for (int r = 0; r < 5; ++r)
      rotation[day][r] = sorted[square[day][r]];
  return rotation;
}

Environment::Environment(const LoadProfileSpec& load,
                         const CapacityScheduleSpec& capacity,
                         std::uint64_t env_seed)
    : load_(load), capacity_(capacity), rng_(env_seed) {
  labels_.fill(load.kind == LoadKind::fixed ? load.fixed_level : LoadLevel::lo);
}

void Environment::prepare(std::uint64_t tick) {
  const auto week = static_cast<std::int64_t>(tick / kTicksPerWeek);
  if (week == materialized_week_) return;
  // Fresh draws each week, in a fixed order: load labels, then rotation.
  if (load_.kind == LoadKind::pattern)
    labels_ = gen_pattern_week(rng_);
  else if (load_.kind == LoadKind::random)
    labels_ = gen_random_week(rng_);
  if (capacity_.kind == CapacityKind::rotating)
    rotation_ = gen_capacity_rotation(capacity_.values, rng_);
  materialized_week_ = week;
}

double Environment::load_at(std::uint64_t tick) const {
  if (load_.kind == LoadKind::fixed)
    return load_.levels.value(load_.fixed_level);
  const auto hour_of_week =
      static_cast<int>((tick / kTicksPerHour) % kHoursPerWeek);
  return load_.levels.value(labels_[hour_of_week]);
}

double Environment::capacity_at(int resource, std::uint64_t tick) const {
  if (capacity_.kind == CapacityKind::fixed)
    return capacity_.values[resource];
  const auto day_of_week = static_cast<int>((tick / kTicksPerDay) % 7);
  if (day_of_week >= kWeekdays)  // weekends keep the base assignment
    return capacity_.values[resource];
  return rotation_[day_of_week][resource];
}

}  // namespace albsim
