#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "albsim/config.hpp"
#include "albsim/metrics.hpp"

namespace albsim {

// One value axis of a parameter sweep. `param` is "w" or "n" (applied to
// every estimator-based group) or "w<k>"/"n<k>" for 1-based group k only.
struct SweepAxis {
  std::string param;
  std::vector<double> values;
};

struct SweepCell {
  std::string name;
  ScenarioConfig config;
};

// A finite experiment plan: the cell x seed cross product, enumerated in
// declaration order.
struct SweepSpec {
  std::string name;
  std::vector<SweepCell> cells;
  std::vector<std::uint64_t> seeds;
};

// "w=0.1,0.3,0.5" or "n=2..10" (integer range, optional ":step").
SweepAxis parse_axis(const std::string& text);

// Semicolon-separated list of axis definitions.
std::vector<SweepAxis> parse_axes(const std::string& text);

// Cross product of the axes applied to a validated base configuration.
std::vector<SweepCell> expand_axes(const ScenarioConfig& base,
                                   std::span<const SweepAxis> axes);

std::vector<std::uint64_t> default_seeds(int count);

struct CellRun {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  RunReport report;
};

// Runs every (cell, seed) combination. Cells are independent; with
// threads > 1 they execute concurrently, and the result order (and hence
// the CSV bytes) is identical either way. A failing cell aborts the sweep
// with its identifier.
std::vector<CellRun> run_sweep(const SweepSpec& spec, unsigned threads = 1);

// Detail rows per run plus, when the spec has several seeds, one
// seed-averaged summary block per cell.
std::string sweep_csv(const SweepSpec& spec, std::span<const CellRun> runs);

std::string run_sweep_csv(const SweepSpec& spec, unsigned threads = 1);

}  // namespace albsim
