#include "albsim/presets.hpp"

#include <cstdio>

#include "albsim/errors.hpp"

namespace albsim {

namespace {

constexpr int kDefaultSeeds = 5;

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

SelectionRule omega_rule(double w, double n) {
  SelectionRule rule;
  rule.kind = RuleKind::omega;
  rule.omega = OmegaParams{w, n};
  return rule;
}

ScenarioConfig base_config(LoadKind load_kind, LoadLevel level = LoadLevel::hi) {
  ScenarioConfig config;
  config.load.kind = load_kind;
  config.load.fixed_level = level;
  return config;
}

// Configuration vector -> static groups, skipping empty entries.
std::vector<GroupSpec> static_groups(const std::vector<int>& configuration) {
  std::vector<GroupSpec> groups;
  for (std::size_t r = 0; r < configuration.size(); ++r) {
    if (configuration[r] == 0) continue;
    SelectionRule rule;
    rule.kind = RuleKind::static_resource;
    rule.resource = static_cast<int>(r);
    groups.push_back(GroupSpec{configuration[r], rule});
  }
  return groups;
}

std::string vec_name(const std::vector<int>& configuration) {
  std::string name;
  for (int c : configuration) {
    if (!name.empty()) name += '-';
    name += std::to_string(c);
  }
  return name;
}

SweepCell static_cell(const std::string& label, LoadKind kind, LoadLevel level,
                      const std::vector<int>& configuration) {
  SweepCell cell;
  cell.name = label + "/" + vec_name(configuration);
  cell.config = base_config(kind, level);
  cell.config.groups = static_groups(configuration);
  validate_and_fill(cell.config);
  return cell;
}

std::vector<double> omega_n_grid() {
  return {2, 3, 4, 5, 6, 7, 8, 9, 10};
}

std::vector<SweepAxis> wn_axes() {
  return {SweepAxis{"w", {0.1, 0.3, 0.5}}, SweepAxis{"n", omega_n_grid()}};
}

SweepSpec make_fig1() {
  SweepSpec spec;
  spec.name = "fig1-static";
  spec.cells.push_back(
      static_cell("L_lo", LoadKind::fixed, LoadLevel::lo, {100, 0, 0, 0, 0}));
  spec.cells.push_back(
      static_cell("L_hi", LoadKind::fixed, LoadLevel::hi, {66, 16, 16, 1, 1}));
  spec.cells.push_back(static_cell("L_peak", LoadKind::fixed, LoadLevel::peak,
                                   {40, 20, 20, 10, 10}));
  return spec;
}

SweepSpec make_wn_sweep(const std::string& name, LoadKind load_kind,
                        CapacityKind capacity_kind) {
  SweepSpec spec;
  spec.name = name;
  ScenarioConfig base = base_config(load_kind);
  base.capacity.kind = capacity_kind;
  base.groups = {GroupSpec{100, omega_rule(0.3, 4)}};
  validate_and_fill(base);
  const auto axes = wn_axes();
  spec.cells = expand_axes(base, axes);
  return spec;
}

SweepSpec make_hetero_n2(const std::string& name, int size1, int size2) {
  SweepSpec spec;
  spec.name = name;
  ScenarioConfig base = base_config(LoadKind::random);
  base.groups = {GroupSpec{size1, omega_rule(0.3, 4)},
                 GroupSpec{size2, omega_rule(0.3, 4)}};
  validate_and_fill(base);
  const std::vector<SweepAxis> axes = {SweepAxis{"n2", omega_n_grid()}};
  spec.cells = expand_axes(base, axes);
  return spec;
}

SweepSpec make_fig7() {
  SweepSpec spec;
  spec.name = "fig7-hetero-w";
  ScenarioConfig base = base_config(LoadKind::random);
  base.groups = {GroupSpec{50, omega_rule(0.3, 4)},
                 GroupSpec{50, omega_rule(0.3, 4)}};
  validate_and_fill(base);
  const std::vector<SweepAxis> axes = {
      SweepAxis{"w2", {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9}}};
  spec.cells = expand_axes(base, axes);
  return spec;
}

SweepSpec make_fig8() {
  SweepSpec spec;
  spec.name = "fig8-minority-rules";
  const std::vector<std::pair<std::string, std::string>> minorities = {
      {"omega(0.3,20)", "omega(w=0.3, n=20)"},
      {"omega(0.1,4)", "omega(w=0.1, n=4)"},
      {"load_querying", "load_querying"},
      {"static(0)", "static(0)"},
  };
  for (const auto& [label, rule] : minorities) {
    SweepCell cell;
    cell.name = "minority=" + label;
    cell.config = base_config(LoadKind::random);
    cell.config.groups = {GroupSpec{90, omega_rule(0.3, 4)},
                          GroupSpec{10, SelectionRule::parse(rule)}};
    validate_and_fill(cell.config);
    spec.cells.push_back(std::move(cell));
  }
  return spec;
}

SweepSpec make_fig9() {
  SweepSpec spec;
  spec.name = "fig9-cn-sizes";
  // size 1 doubles as the non-communicating reference population
  const std::vector<int> sizes = {1, 2, 4, 5, 10, 20};
  for (int size : sizes) {
    for (double n : omega_n_grid()) {
      SweepCell cell;
      cell.name = "cn=" + std::to_string(size) + ";n=" + format_number(n);
      cell.config = base_config(LoadKind::random);
      cell.config.groups = {GroupSpec{100, omega_rule(0.3, n)}};
      cell.config.neighborhoods = {NeighborhoodSpec{size, 100 / size, true}};
      validate_and_fill(cell.config);
      spec.cells.push_back(std::move(cell));
    }
  }
  return spec;
}

SweepSpec make_fig10() {
  SweepSpec spec;
  spec.name = "fig10-cn-vs-ncn";
  for (double ncn_n : {4.0, 10.0}) {
    for (int cn_count : {1, 2, 5, 10}) {
      SweepCell cell;
      cell.name = "ncn-n=" + format_number(ncn_n) +
                  ";cns=" + std::to_string(cn_count);
      cell.config = base_config(LoadKind::random);
      cell.config.groups = {GroupSpec{80, omega_rule(0.3, ncn_n)},
                            GroupSpec{20, omega_rule(0.3, 4)}};
      cell.config.neighborhoods = {
          NeighborhoodSpec{80, 1, false},
          NeighborhoodSpec{20 / cn_count, cn_count, true}};
      validate_and_fill(cell.config);
      spec.cells.push_back(std::move(cell));
    }
  }
  return spec;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"fig1-static", "best static configurations under the three fixed loads"},
      {"fig2-fixed-load", "omega sweep (w in {0.1,0.3,0.5}, n in 2..10), fixed high load"},
      {"fig3-random-load", "omega sweep under the randomized weekly load"},
      {"fig4-rotating-capacity", "omega sweep with daily capacity rotation and random load"},
      {"fig5-hetero-50-50", "two 50-agent omega groups, n2 swept against n1=4"},
      {"fig6-hetero-90-10", "90/10 omega groups, minority n2 swept against n1=4"},
      {"fig7-hetero-w", "two 50-agent omega groups, w2 swept against w1=0.3"},
      {"fig8-minority-rules", "90 omega(0.3,4) agents vs four 10-agent minority rules"},
      {"fig9-cn-sizes", "fully communicating populations of neighborhood sizes 1..20"},
      {"fig10-cn-vs-ncn", "80-agent NCN group facing 20 communicating agents"},
  };
  return catalog;
}

SweepSpec preset(const std::string& name, int seeds) {
  SweepSpec spec;
  if (name == "fig1-static") {
    spec = make_fig1();
  } else if (name == "fig2-fixed-load") {
    spec = make_wn_sweep(name, LoadKind::fixed, CapacityKind::fixed);
  } else if (name == "fig3-random-load") {
    spec = make_wn_sweep(name, LoadKind::random, CapacityKind::fixed);
  } else if (name == "fig4-rotating-capacity") {
    spec = make_wn_sweep(name, LoadKind::random, CapacityKind::rotating);
  } else if (name == "fig5-hetero-50-50") {
    spec = make_hetero_n2(name, 50, 50);
  } else if (name == "fig6-hetero-90-10") {
    spec = make_hetero_n2(name, 90, 10);
  } else if (name == "fig7-hetero-w") {
    spec = make_fig7();
  } else if (name == "fig8-minority-rules") {
    spec = make_fig8();
  } else if (name == "fig9-cn-sizes") {
    spec = make_fig9();
  } else if (name == "fig10-cn-vs-ncn") {
    spec = make_fig10();
  } else {
    std::string known;
    for (const PresetInfo& info : preset_catalog()) {
      if (!known.empty()) known += ", ";
      known += info.name;
    }
    throw ValidationError("preset",
                          "unknown preset '" + name + "'; available: " + known);
  }
  spec.seeds = default_seeds(seeds > 0 ? seeds : kDefaultSeeds);
  return spec;
}

}  // namespace albsim
