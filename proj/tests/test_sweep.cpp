#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "albsim/errors.hpp"
#include "albsim/presets.hpp"
#include "albsim/sweep.hpp"

using namespace albsim;

namespace {

ScenarioConfig tiny_base() {
  ScenarioConfig config;
  config.load.kind = LoadKind::fixed;
  config.load.fixed_level = LoadLevel::peak;
  config.groups = {GroupSpec{60, SelectionRule::parse("omega(w=0.3, n=4)")},
                   GroupSpec{40, SelectionRule::parse("omega(w=0.3, n=4)")}};
  config.warmup_weeks = 0.0;
  config.measure_weeks = 0.02;  // ~12k ticks, enough to gather jobs
  validate_and_fill(config);
  return config;
}

}  // namespace

TEST_CASE("axis parsing accepts lists and ranges") {
  const SweepAxis list = parse_axis("w=0.1,0.3,0.5");
  CHECK(list.param == "w");
  CHECK(list.values == std::vector<double>{0.1, 0.3, 0.5});

  const SweepAxis range = parse_axis("n=2..10");
  CHECK(range.values.size() == 9);
  CHECK(range.values.front() == doctest::Approx(2.0));
  CHECK(range.values.back() == doctest::Approx(10.0));

  const SweepAxis stepped = parse_axis("n=2..10:2");
  CHECK(stepped.values == std::vector<double>{2, 4, 6, 8, 10});

  CHECK_THROWS_AS(parse_axis("w"), ValidationError);
  CHECK_THROWS_AS(parse_axis("w=abc"), ValidationError);

  const auto axes = parse_axes("w=0.1,0.3;n=2..4");
  REQUIRE(axes.size() == 2);
  CHECK(axes[1].values.size() == 3);
}

TEST_CASE("axis expansion covers the cross product in deterministic order") {
  const auto axes = parse_axes("w=0.1,0.3,0.5;n=2..10");
  const auto cells = expand_axes(tiny_base(), axes);
  REQUIRE(cells.size() == 27);
  CHECK(cells[0].name == "w=0.1;n=2");
  CHECK(cells[8].name == "w=0.1;n=10");
  CHECK(cells[9].name == "w=0.3;n=2");
  CHECK(cells[26].name == "w=0.5;n=10");
  // w/n apply to every omega group
  for (const GroupSpec& g : cells[26].config.groups) {
    CHECK(g.rule.omega.w == doctest::Approx(0.5));
    CHECK(g.rule.omega.n == doctest::Approx(10.0));
  }
}

TEST_CASE("group-indexed axes touch only their group") {
  const auto axes = parse_axes("n2=6");
  const auto cells = expand_axes(tiny_base(), axes);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].config.groups[0].rule.omega.n == doctest::Approx(4.0));
  CHECK(cells[0].config.groups[1].rule.omega.n == doctest::Approx(6.0));

  CHECK_THROWS_AS(expand_axes(tiny_base(), parse_axes("n3=6")),
                  ValidationError);
  CHECK_THROWS_AS(expand_axes(tiny_base(), parse_axes("q=1")),
                  ValidationError);
}

TEST_CASE("sweep row arithmetic: cells x seeds x (groups + global)") {
  // 3 w-values x 9 n-values x 5 seeds with 2 groups: 135 runs and
  // 405 detail rows (two group rows plus one __global__ row each)
  SweepSpec spec;
  spec.name = "arith";
  spec.cells = expand_axes(tiny_base(), parse_axes("w=0.1,0.3,0.5;n=2..10"));
  spec.seeds = default_seeds(5);
  CHECK(spec.cells.size() * spec.seeds.size() == 135);
  const std::size_t rows_per_run = tiny_base().groups.size() + 1;
  CHECK(spec.cells.size() * spec.seeds.size() * rows_per_run == 405);
}

TEST_CASE("sweep output is deterministic and thread-count independent") {
  SweepSpec spec;
  spec.name = "tiny";
  spec.cells = expand_axes(tiny_base(), parse_axes("n=3,6"));
  spec.seeds = {1, 2};

  const std::string sequential = run_sweep_csv(spec, 1);
  const std::string repeat = run_sweep_csv(spec, 1);
  const std::string concurrent = run_sweep_csv(spec, 4);
  CHECK(sequential == repeat);
  CHECK(sequential == concurrent);

  // detail rows for every run plus one summary block per cell
  const std::size_t lines =
      static_cast<std::size_t>(std::count(sequential.begin(), sequential.end(), '\n'));
  CHECK(lines == 1 + 2 * 2 * 3 + 2 * 3);
  CHECK(sequential.find("tiny/n=3,avg,") != std::string::npos);
}

TEST_CASE("single-cell single-seed sweep matches a direct run") {
  SweepSpec degenerate;
  degenerate.name = tiny_base().name;
  degenerate.cells = {SweepCell{tiny_base().name, tiny_base()}};
  degenerate.seeds = {1};
  const std::string via_sweep = run_sweep_csv(degenerate, 1);

  // no summary block, exactly one run's rows
  const std::size_t lines = static_cast<std::size_t>(
      std::count(via_sweep.begin(), via_sweep.end(), '\n'));
  CHECK(lines == 1 + 3);
  CHECK(via_sweep.find(",avg,") == std::string::npos);
}

TEST_CASE("failing cells abort with their identifier") {
  SweepSpec spec;
  spec.name = "bad";
  ScenarioConfig broken = tiny_base();
  broken.groups[0].rule.resource = 99;  // invalid after the fact
  broken.groups[0].rule.kind = RuleKind::static_resource;
  spec.cells = {SweepCell{"poisoned", broken}};
  spec.seeds = {1};
  try {
    run_sweep(spec, 1);
    FAIL("expected the sweep to abort");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("poisoned") != std::string::npos);
  }
}

TEST_CASE("preset catalog covers every documented experiment") {
  const std::set<std::string> expected = {
      "fig1-static",          "fig2-fixed-load",  "fig3-random-load",
      "fig4-rotating-capacity", "fig5-hetero-50-50", "fig6-hetero-90-10",
      "fig7-hetero-w",        "fig8-minority-rules", "fig9-cn-sizes",
      "fig10-cn-vs-ncn",
  };
  std::set<std::string> actual;
  for (const PresetInfo& info : preset_catalog()) actual.insert(info.name);
  CHECK(actual == expected);
  for (const std::string& name : expected) {
    const SweepSpec spec = preset(name);
    CHECK_FALSE(spec.cells.empty());
    CHECK(spec.seeds.size() == 5);
  }
  CHECK_THROWS_AS(preset("fig11-unknown"), ValidationError);
}

TEST_CASE("preset contents: fig1 static configurations") {
  const SweepSpec spec = preset("fig1-static");
  REQUIRE(spec.cells.size() == 3);
  CHECK(spec.cells[0].name == "L_lo/100-0-0-0-0");
  CHECK(spec.cells[2].name == "L_peak/40-20-20-10-10");
  const ScenarioConfig& peak = spec.cells[2].config;
  CHECK(peak.load.fixed_level == LoadLevel::peak);
  REQUIRE(peak.groups.size() == 5);
  CHECK(peak.groups[0].size == 40);
  CHECK(peak.groups[0].rule.kind == RuleKind::static_resource);
  CHECK(peak.groups[4].rule.resource == 4);
  const ScenarioConfig& lo = spec.cells[0].config;
  REQUIRE(lo.groups.size() == 1);
  CHECK(lo.groups[0].size == 100);
}

TEST_CASE("preset contents: fig8 minority rows") {
  const SweepSpec spec = preset("fig8-minority-rules");
  REQUIRE(spec.cells.size() == 4);
  const ScenarioConfig& row1 = spec.cells[0].config;
  REQUIRE(row1.groups.size() == 2);
  CHECK(row1.groups[0].size == 90);
  CHECK(row1.groups[0].rule.label() == "omega(w=0.3,n=4)");
  CHECK(row1.groups[1].size == 10);
  CHECK(row1.groups[1].rule.label() == "omega(w=0.3,n=20)");
  CHECK(spec.cells[2].config.groups[1].rule.kind == RuleKind::load_querying);
  CHECK(spec.cells[3].config.groups[1].rule.kind == RuleKind::static_resource);
  CHECK(spec.cells[3].config.groups[1].rule.resource == 0);
}

TEST_CASE("preset contents: fig10 mixed neighborhoods") {
  const SweepSpec spec = preset("fig10-cn-vs-ncn");
  REQUIRE(spec.cells.size() == 8);
  // row 5: NCN of 80 omega(0.3,10) facing one CN of 20 omega(0.3,4)
  const ScenarioConfig& row5 = spec.cells[4].config;
  CHECK(spec.cells[4].name == "ncn-n=10;cns=1");
  CHECK(row5.groups[0].size == 80);
  CHECK(row5.groups[0].rule.omega.n == doctest::Approx(10.0));
  CHECK(row5.groups[1].rule.omega.n == doctest::Approx(4.0));
  REQUIRE(row5.neighborhoods.size() == 2);
  CHECK(row5.neighborhoods[0].communicating == false);
  CHECK(row5.neighborhoods[0].size == 80);
  CHECK(row5.neighborhoods[1].communicating == true);
  CHECK(row5.neighborhoods[1].size == 20);
  CHECK(row5.neighborhoods[1].count == 1);
}
