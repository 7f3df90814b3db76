#include "albsim/sweep.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "albsim/engine.hpp"
#include "albsim/errors.hpp"

namespace albsim {

namespace {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

double parse_value(const std::string& text, const std::string& axis) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw ValidationError("axis", "malformed value '" + text + "' in axis " + axis);
  return v;
}

// Applies one (param, value) pair to a configuration.
void apply_param(ScenarioConfig& config, const std::string& param, double value) {
  std::string base = param;
  int group = -1;  // -1: every estimator-based group
  std::size_t digits = 0;
  while (digits < param.size() &&
         std::isdigit(static_cast<unsigned char>(param[param.size() - 1 - digits])))
    ++digits;
  if (digits > 0) {
    base = param.substr(0, param.size() - digits);
    group = std::atoi(param.c_str() + param.size() - digits) - 1;  // 1-based
    if (group < 0 || group >= static_cast<int>(config.groups.size()))
      throw ValidationError("axis", "axis '" + param + "' names a missing group");
  }
  if (base != "w" && base != "n")
    throw ValidationError("axis", "unknown sweep parameter '" + param + "'");

  bool touched = false;
  for (std::size_t g = 0; g < config.groups.size(); ++g) {
    if (group >= 0 && static_cast<int>(g) != group) continue;
    SelectionRule& rule = config.groups[g].rule;
    if (!rule.uses_estimator()) {
      if (group >= 0)
        throw ValidationError("axis", "group " + std::to_string(group + 1) +
                                          " has no parameter '" + base + "'");
      continue;
    }
    if (base == "n" && rule.kind != RuleKind::omega) {
      if (group >= 0)
        throw ValidationError("axis", "group " + std::to_string(group + 1) +
                                          " has no parameter n");
      continue;
    }
    if (base == "w")
      rule.omega.w = value;
    else
      rule.omega.n = value;
    touched = true;
  }
  if (!touched)
    throw ValidationError("axis",
                          "no group accepts sweep parameter '" + param + "'");
}

std::string seed_field(std::uint64_t seed) { return std::to_string(seed); }

}  // namespace

SweepAxis parse_axis(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("axis", "expected <param>=<values>, got '" + text + "'");
  SweepAxis axis;
  axis.param = text.substr(0, eq);
  const std::string values = text.substr(eq + 1);

  const std::size_t range = values.find("..");
  if (range != std::string::npos && values.find(',') == std::string::npos) {
    double step = 1.0;
    std::string hi_part = values.substr(range + 2);
    const std::size_t colon = hi_part.find(':');
    if (colon != std::string::npos) {
      step = parse_value(hi_part.substr(colon + 1), axis.param);
      hi_part = hi_part.substr(0, colon);
    }
    const double lo = parse_value(values.substr(0, range), axis.param);
    const double hi = parse_value(hi_part, axis.param);
    if (step <= 0.0 || hi < lo)
      throw ValidationError("axis", "bad range in axis '" + text + "'");
    for (double v = lo; v <= hi + 1e-12; v += step) axis.values.push_back(v);
  } else {
    std::size_t pos = 0;
    while (pos <= values.size()) {
      std::size_t comma = values.find(',', pos);
      if (comma == std::string::npos) comma = values.size();
      axis.values.push_back(parse_value(values.substr(pos, comma - pos), axis.param));
      pos = comma + 1;
    }
  }
  if (axis.values.empty())
    throw ValidationError("axis", "axis '" + text + "' has no values");
  return axis;
}

std::vector<SweepAxis> parse_axes(const std::string& text) {
  std::vector<SweepAxis> axes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos) semi = text.size();
    if (semi > pos) axes.push_back(parse_axis(text.substr(pos, semi - pos)));
    pos = semi + 1;
  }
  return axes;
}

std::vector<SweepCell> expand_axes(const ScenarioConfig& base,
                                   std::span<const SweepAxis> axes) {
  std::vector<SweepCell> cells;
  std::vector<std::size_t> index(axes.size(), 0);
  for (;;) {
    SweepCell cell;
    cell.config = base;
    std::string name;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const double value = axes[i].values[index[i]];
      apply_param(cell.config, axes[i].param, value);
      if (!name.empty()) name += ';';
      name += axes[i].param + "=" + format_number(value);
    }
    cell.name = name.empty() ? base.name : name;
    validate_and_fill(cell.config);
    cells.push_back(std::move(cell));

    // odometer increment, last axis fastest
    std::size_t i = axes.size();
    for (; i > 0; --i) {
      if (++index[i - 1] < axes[i - 1].values.size()) break;
      index[i - 1] = 0;
    }
    if (i == 0) break;
  }
  return cells;
}

std::vector<std::uint64_t> default_seeds(int count) {
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= count; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  return seeds;
}

std::vector<CellRun> run_sweep(const SweepSpec& spec, unsigned threads) {
  std::vector<CellRun> runs;
  runs.reserve(spec.cells.size() * spec.seeds.size());
  for (std::size_t c = 0; c < spec.cells.size(); ++c)
    for (std::uint64_t seed : spec.seeds)
      runs.push_back(CellRun{c, seed, {}});

  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::string first_error;
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= runs.size() || failed.load()) break;
      CellRun& run = runs[i];
      try {
        run.report = run_scenario(spec.cells[run.cell].config, run.seed);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true))
          first_error = "cell '" + spec.cells[run.cell].name + "': " + e.what();
      }
    }
  };

  if (threads <= 1 || runs.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const unsigned worker_count =
        std::min<std::size_t>(threads, runs.size());
    pool.reserve(worker_count);
    for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  if (failed.load()) throw std::runtime_error(first_error);
  return runs;
}

std::string sweep_csv(const SweepSpec& spec, std::span<const CellRun> runs) {
  std::string out = csv_header();
  auto scenario_of = [&](std::size_t cell) {
    const std::string& cell_name = spec.cells[cell].name;
    if (spec.name.empty() || cell_name == spec.name) return cell_name;
    return spec.name + "/" + cell_name;
  };

  for (const CellRun& run : runs)
    append_csv_rows(out, scenario_of(run.cell), seed_field(run.seed), run.report);

  if (spec.seeds.size() < 2) return out;

  // seed-averaged summary block, one report per cell
  for (std::size_t c = 0; c < spec.cells.size(); ++c) {
    RunReport average;
    std::size_t contributing = 0;
    double jobs_global = 0.0;
    std::vector<double> jobs_groups;
    for (const CellRun& run : runs) {
      if (run.cell != c || run.report.empty) continue;
      if (contributing == 0) {
        average = run.report;
        jobs_groups.resize(run.report.groups.size(), 0.0);
        average.global.mean_x1000 = 0.0;
        average.global.std_x1000 = 0.0;
        average.global.agent_mean_x1000 = 0.0;
        average.global.agent_std_x1000 = 0.0;
        for (GroupStats& g : average.groups) {
          g.mean_x1000 = 0.0;
          g.std_x1000 = 0.0;
          g.agent_mean_x1000 = 0.0;
          g.agent_std_x1000 = 0.0;
        }
      }
      ++contributing;
      jobs_global += static_cast<double>(run.report.global.jobs);
      average.global.mean_x1000 += run.report.global.mean_x1000;
      average.global.std_x1000 += run.report.global.std_x1000;
      average.global.agent_mean_x1000 += run.report.global.agent_mean_x1000;
      average.global.agent_std_x1000 += run.report.global.agent_std_x1000;
      for (std::size_t g = 0; g < run.report.groups.size(); ++g) {
        jobs_groups[g] += static_cast<double>(run.report.groups[g].jobs);
        average.groups[g].mean_x1000 += run.report.groups[g].mean_x1000;
        average.groups[g].std_x1000 += run.report.groups[g].std_x1000;
        average.groups[g].agent_mean_x1000 += run.report.groups[g].agent_mean_x1000;
        average.groups[g].agent_std_x1000 += run.report.groups[g].agent_std_x1000;
      }
    }
    if (contributing == 0) continue;
    const double k = static_cast<double>(contributing);
    average.global.mean_x1000 /= k;
    average.global.std_x1000 /= k;
    average.global.agent_mean_x1000 /= k;
    average.global.agent_std_x1000 /= k;
    average.global.jobs =
        static_cast<std::uint64_t>(std::llround(jobs_global / k));
    for (std::size_t g = 0; g < average.groups.size(); ++g) {
      average.groups[g].mean_x1000 /= k;
      average.groups[g].std_x1000 /= k;
      average.groups[g].agent_mean_x1000 /= k;
      average.groups[g].agent_std_x1000 /= k;
      average.groups[g].jobs =
          static_cast<std::uint64_t>(std::llround(jobs_groups[g] / k));
    }
    append_csv_rows(out, scenario_of(c), "avg", average);
  }
  return out;
}

std::string run_sweep_csv(const SweepSpec& spec, unsigned threads) {
  const std::vector<CellRun> runs = run_sweep(spec, threads);
  return sweep_csv(spec, runs);
}

}  // namespace albsim
