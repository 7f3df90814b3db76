// Command-line front end for the albsim shared library. Talks to the core
// exclusively through the C API in albsim/albsim.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "albsim/albsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int exit_code(albsim_status status) {
  switch (status) {
    case ALBSIM_OK: return kExitOk;
    case ALBSIM_ERR_VALIDATION: return kExitValidation;
    case ALBSIM_ERR_RUNTIME: return kExitRuntime;
  }
  return kExitRuntime;
}

int fail(albsim_status status) {
  std::cerr << "error: " << albsim_last_error() << "\n";
  return exit_code(status);
}

int write_output(const char* csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitRuntime;
  }
  out << csv;
  return kExitOk;
}

struct ConfigHandle {
  albsim_config* ptr = nullptr;
  ~ConfigHandle() { albsim_config_close(ptr); }
};

struct CsvHandle {
  char* ptr = nullptr;
  ~CsvHandle() { albsim_free(ptr); }
};

std::string join_axes(const std::vector<std::string>& axes) {
  std::string joined;
  for (const std::string& axis : axes) {
    if (!joined.empty()) joined += ';';
    joined += axis;
  }
  return joined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"albsim — multi-agent adaptive load-balancing simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset_name;
  std::vector<std::string> axes;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint32_t seeds = 0;
  std::uint32_t threads = 0;

  CLI::App* run = app.add_subcommand("run", "run one scenario configuration");
  run->add_option("--config", config_path, "scenario configuration file")
      ->required();
  run->add_option("--seed", seed, "seed override (defaults to the config's)")
      ->each([&](const std::string&) { seed_given = true; });
  run->add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI::App* preset = app.add_subcommand("preset", "run a catalog experiment");
  preset->add_option("name", preset_name, "preset name (see list-presets)")
      ->required();
  preset->add_option("--seeds", seeds, "number of seeds (default 5)");
  preset->add_option("--threads", threads, "worker threads (default: all cores)");
  preset->add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over a config");
  sweep->add_option("--config", config_path, "base scenario configuration file")
      ->required();
  sweep->add_option("--axis", axes,
                    "axis, e.g. w=0.1,0.3,0.5 or n=2..10 (repeatable)");
  sweep->add_option("--seeds", seeds, "number of seeds (default 5)");
  sweep->add_option("--threads", threads, "worker threads (default: all cores)");
  sweep->add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI::App* list = app.add_subcommand("list-presets", "list catalog experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (list->parsed()) {
    CsvHandle names;
    if (albsim_status s = albsim_preset_names(&names.ptr)) return fail(s);
    std::cout << names.ptr;
    return kExitOk;
  }

  if (preset->parsed()) {
    CsvHandle csv;
    if (albsim_status s =
            albsim_preset_csv(preset_name.c_str(), seeds, threads, &csv.ptr))
      return fail(s);
    return write_output(csv.ptr, out_path);
  }

  ConfigHandle config;
  if (albsim_status s = albsim_config_open(config_path.c_str(), &config.ptr))
    return fail(s);

  if (run->parsed()) {
    const std::uint64_t effective_seed =
        seed_given ? seed : albsim_config_seed(config.ptr);
    CsvHandle csv;
    if (albsim_status s = albsim_run_csv(config.ptr, effective_seed, &csv.ptr))
      return fail(s);
    return write_output(csv.ptr, out_path);
  }

  // sweep
  const std::string joined = join_axes(axes);
  CsvHandle csv;
  if (albsim_status s = albsim_sweep_csv(config.ptr, joined.c_str(), seeds,
                                         threads, &csv.ptr))
    return fail(s);
  return write_output(csv.ptr, out_path);
}
