#include "albsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "albsim/errors.hpp"

namespace albsim {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* key) {
          return item.key() == key;
        }) == allowed.end()) {
      throw ValidationError(where.empty() ? item.key() : where + "." + item.key(),
                            "unknown configuration key");
    }
  }
}

template <typename T>
T get_as(const json& object, const std::string& path) {
  try {
    return object.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(path, "value has the wrong type");
  }
}

LoadKind parse_load_kind(const std::string& s) {
  if (s == "fixed") return LoadKind::fixed;
  if (s == "pattern") return LoadKind::pattern;
  if (s == "random") return LoadKind::random;
  throw ValidationError("load.kind", "expected fixed|pattern|random, got '" + s + "'");
}

LoadLevel parse_load_level(const std::string& s) {
  if (s == "lo") return LoadLevel::lo;
  if (s == "hi") return LoadLevel::hi;
  if (s == "peak") return LoadLevel::peak;
  throw ValidationError("load.fixed_level", "expected lo|hi|peak, got '" + s + "'");
}

CapacityKind parse_capacity_kind(const std::string& s) {
  if (s == "fixed") return CapacityKind::fixed;
  if (s == "rotating") return CapacityKind::rotating;
  throw ValidationError("capacity.kind", "expected fixed|rotating, got '" + s + "'");
}

void parse_load(const json& j, LoadProfileSpec& load) {
  reject_unknown_keys(j, "load", {"kind", "fixed_level", "levels"});
  if (j.contains("kind"))
    load.kind = parse_load_kind(get_as<std::string>(j.at("kind"), "load.kind"));
  if (j.contains("fixed_level"))
    load.fixed_level =
        parse_load_level(get_as<std::string>(j.at("fixed_level"), "load.fixed_level"));
  if (j.contains("levels")) {
    const auto levels =
        get_as<std::vector<double>>(j.at("levels"), "load.levels");
    if (levels.size() != 3)
      throw ValidationError("load.levels", "expected three probabilities [lo, hi, peak]");
    load.levels = LoadLevels{levels[0], levels[1], levels[2]};
  }
}

void parse_capacity(const json& j, CapacityScheduleSpec& capacity) {
  reject_unknown_keys(j, "capacity", {"kind", "values"});
  if (j.contains("kind"))
    capacity.kind =
        parse_capacity_kind(get_as<std::string>(j.at("kind"), "capacity.kind"));
  if (j.contains("values"))
    capacity.values =
        get_as<std::vector<double>>(j.at("values"), "capacity.values");
}

void parse_groups(const json& j, std::vector<GroupSpec>& groups) {
  if (!j.is_array())
    throw ValidationError("groups", "expected a list of {size, rule} objects");
  groups.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "groups[" + std::to_string(i) + "]";
    const json& g = j[i];
    if (!g.is_object() || !g.contains("size") || !g.contains("rule"))
      throw ValidationError(where, "expected {size, rule}");
    reject_unknown_keys(g, where, {"size", "rule"});
    GroupSpec spec;
    spec.size = get_as<int>(g.at("size"), where + ".size");
    spec.rule = SelectionRule::parse(get_as<std::string>(g.at("rule"), where + ".rule"));
    groups.push_back(std::move(spec));
  }
}

void parse_neighborhoods(const json& j, std::vector<NeighborhoodSpec>& out) {
  if (!j.is_array())
    throw ValidationError("neighborhoods",
                          "expected a list of {size, count, communicating} objects");
  out.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "neighborhoods[" + std::to_string(i) + "]";
    const json& nb = j[i];
    if (!nb.is_object() || !nb.contains("size"))
      throw ValidationError(where, "expected {size, count, communicating}");
    reject_unknown_keys(nb, where, {"size", "count", "communicating"});
    NeighborhoodSpec spec;
    spec.size = get_as<int>(nb.at("size"), where + ".size");
    if (nb.contains("count"))
      spec.count = get_as<int>(nb.at("count"), where + ".count");
    if (nb.contains("communicating"))
      spec.communicating =
          get_as<bool>(nb.at("communicating"), where + ".communicating");
    out.push_back(spec);
  }
}

bool whitespace_only(const std::string& text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

}  // namespace

std::uint64_t ScenarioConfig::warmup_ticks() const {
  return static_cast<std::uint64_t>(
      std::llround(warmup_weeks * static_cast<double>(kTicksPerWeek)));
}

std::uint64_t ScenarioConfig::total_ticks() const {
  return static_cast<std::uint64_t>(std::llround(
      (warmup_weeks + measure_weeks) * static_cast<double>(kTicksPerWeek)));
}

void validate_and_fill(ScenarioConfig& config) {
  if (config.agents < 1)
    throw ValidationError("agents", "must be at least 1");
  if (config.resources < 1)
    throw ValidationError("resources", "must be at least 1");

  if (config.capacity.values.size() != static_cast<std::size_t>(config.resources))
    throw ValidationError("capacity.values",
                          "expected " + std::to_string(config.resources) +
                              " entries, got " +
                              std::to_string(config.capacity.values.size()));
  for (double c : config.capacity.values)
    if (!(c > 0.0))
      throw ValidationError("capacity.values", "capacities must be positive");
  if (config.capacity.kind == CapacityKind::rotating) {
    if (config.resources != 5)
      throw ValidationError("capacity.kind",
                            "rotating capacities require exactly 5 resources");
    std::vector<double> sorted = config.capacity.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted != std::vector<double>{40, 20, 20, 10, 10})
      throw ValidationError("capacity.values",
                            "rotating capacities require the multiset "
                            "{40, 20, 20, 10, 10}");
  }

  const LoadLevels& levels = config.load.levels;
  if (!(0.0 <= levels.lo && levels.lo < levels.hi && levels.hi < levels.peak &&
        levels.peak <= 1.0))
    throw ValidationError("load.levels",
                          "levels must satisfy 0 <= lo < hi < peak <= 1");

  if (config.job_size.low < 1 || config.job_size.low > config.job_size.high)
    throw ValidationError("job_size", "requires 1 <= low <= high");

  if (config.warmup_weeks < 0.0)
    throw ValidationError("warmup_weeks", "must be non-negative");
  if (config.measure_weeks < 0.0)
    throw ValidationError("measure_weeks", "must be non-negative");

  if (config.groups.empty())
    config.groups.push_back(
        GroupSpec{config.agents, SelectionRule::parse("omega(w=0.3, n=4)")});
  long long group_sum = 0;
  for (std::size_t i = 0; i < config.groups.size(); ++i) {
    const GroupSpec& g = config.groups[i];
    if (g.size < 1)
      throw ValidationError("groups[" + std::to_string(i) + "].size",
                            "must be at least 1");
    if (g.rule.kind == RuleKind::static_resource &&
        g.rule.resource >= config.resources)
      throw ValidationError("groups[" + std::to_string(i) + "].rule",
                            "static resource index out of range");
    group_sum += g.size;
  }
  if (group_sum != config.agents)
    throw ValidationError("groups",
                          "sizes sum to " + std::to_string(group_sum) +
                              ", expected agents=" + std::to_string(config.agents));

  if (config.neighborhoods.empty()) {
    for (const GroupSpec& g : config.groups)
      config.neighborhoods.push_back(NeighborhoodSpec{g.size, 1, false});
  }
  long long nb_sum = 0;
  for (std::size_t i = 0; i < config.neighborhoods.size(); ++i) {
    const NeighborhoodSpec& nb = config.neighborhoods[i];
    if (nb.size < 1 || nb.count < 1)
      throw ValidationError("neighborhoods[" + std::to_string(i) + "]",
                            "size and count must be at least 1");
    nb_sum += static_cast<long long>(nb.size) * nb.count;
  }
  if (nb_sum != config.agents)
    throw ValidationError("neighborhoods",
                          "sizes cover " + std::to_string(nb_sum) +
                              " agents, expected " + std::to_string(config.agents));
  // Each neighborhood block must fall inside a single group (one rule per
  // neighborhood); both partitions are contiguous, so endpoints decide.
  std::vector<int> group_of(static_cast<std::size_t>(config.agents));
  int agent = 0;
  for (std::size_t g = 0; g < config.groups.size(); ++g)
    for (int k = 0; k < config.groups[g].size; ++k)
      group_of[agent++] = static_cast<int>(g);
  agent = 0;
  for (std::size_t i = 0; i < config.neighborhoods.size(); ++i) {
    const NeighborhoodSpec& nb = config.neighborhoods[i];
    for (int b = 0; b < nb.count; ++b) {
      if (group_of[agent] != group_of[agent + nb.size - 1])
        throw ValidationError("neighborhoods[" + std::to_string(i) + "]",
                              "a neighborhood block spans two groups");
      agent += nb.size;
    }
  }
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  if (whitespace_only(text)) {
    validate_and_fill(config);
    return config;
  }

  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("parse error: ") + e.what());
  }
  if (!j.is_object())
    throw ValidationError("config", "top level must be an object");

  reject_unknown_keys(j, "",
                      {"name", "agents", "resources", "capacity", "load",
                       "job_size", "groups", "neighborhoods", "seed",
                       "warmup_weeks", "measure_weeks"});

  if (j.contains("name")) config.name = get_as<std::string>(j.at("name"), "name");
  if (j.contains("agents")) config.agents = get_as<int>(j.at("agents"), "agents");
  if (j.contains("resources"))
    config.resources = get_as<int>(j.at("resources"), "resources");
  if (j.contains("capacity")) parse_capacity(j.at("capacity"), config.capacity);
  if (j.contains("load")) parse_load(j.at("load"), config.load);
  if (j.contains("job_size")) {
    const json& js = j.at("job_size");
    reject_unknown_keys(js, "job_size", {"low", "high"});
    if (js.contains("low"))
      config.job_size.low = get_as<int>(js.at("low"), "job_size.low");
    if (js.contains("high"))
      config.job_size.high = get_as<int>(js.at("high"), "job_size.high");
  }
  if (j.contains("groups")) parse_groups(j.at("groups"), config.groups);
  if (j.contains("neighborhoods"))
    parse_neighborhoods(j.at("neighborhoods"), config.neighborhoods);
  if (j.contains("seed"))
    config.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("warmup_weeks"))
    config.warmup_weeks = get_as<double>(j.at("warmup_weeks"), "warmup_weeks");
  if (j.contains("measure_weeks"))
    config.measure_weeks = get_as<double>(j.at("measure_weeks"), "measure_weeks");

  validate_and_fill(config);
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("config", "cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  ScenarioConfig config = parse_config(text);
  if (config.name == "run") {
    // unnamed scenarios inherit the file stem
    std::size_t slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    if (!stem.empty()) config.name = stem;
  }
  return config;
}

}  // namespace albsim
