#include "albsim/albsim.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

#include "albsim/config.hpp"
#include "albsim/engine.hpp"
#include "albsim/errors.hpp"
#include "albsim/presets.hpp"
#include "albsim/sweep.hpp"

struct albsim_config {
  albsim::ScenarioConfig config;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

unsigned resolve_threads(uint32_t threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs `body`, translating exceptions into status codes + g_last_error.
template <typename Fn>
albsim_status guarded(Fn&& body) {
  try {
    body();
    g_last_error.clear();
    return ALBSIM_OK;
  } catch (const albsim::ValidationError& e) {
    g_last_error = e.what();
    return ALBSIM_ERR_VALIDATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ALBSIM_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return ALBSIM_ERR_RUNTIME;
  }
}

albsim_status require(bool ok, const char* message) {
  if (ok) return ALBSIM_OK;
  g_last_error = message;
  return ALBSIM_ERR_VALIDATION;
}

}  // namespace

extern "C" {

albsim_status albsim_config_open(const char* path, albsim_config** out) {
  if (albsim_status s = require(path && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new albsim_config{albsim::load_config_file(path)};
  });
}

albsim_status albsim_config_parse(const char* text, albsim_config** out) {
  if (albsim_status s = require(text && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new albsim_config{albsim::parse_config(text)};
  });
}

void albsim_config_close(albsim_config* config) { delete config; }

uint64_t albsim_config_seed(const albsim_config* config) {
  return config ? config->config.seed : 0;
}

albsim_status albsim_run_csv(const albsim_config* config, uint64_t seed,
                             char** csv_out) {
  if (albsim_status s = require(config && csv_out, "null argument")) return s;
  *csv_out = nullptr;
  return guarded([&] {
    albsim::SweepSpec spec;
    spec.name = config->config.name;
    spec.cells.push_back(albsim::SweepCell{config->config.name, config->config});
    spec.seeds = {seed};
    *csv_out = dup_string(albsim::run_sweep_csv(spec, 1));
  });
}

albsim_status albsim_preset_csv(const char* name, uint32_t seeds,
                                uint32_t threads, char** csv_out) {
  if (albsim_status s = require(name && csv_out, "null argument")) return s;
  *csv_out = nullptr;
  return guarded([&] {
    const albsim::SweepSpec spec =
        albsim::preset(name, static_cast<int>(seeds));
    *csv_out = dup_string(
        albsim::run_sweep_csv(spec, resolve_threads(threads)));
  });
}

albsim_status albsim_sweep_csv(const albsim_config* config, const char* axes,
                               uint32_t seeds, uint32_t threads,
                               char** csv_out) {
  if (albsim_status s = require(config && csv_out, "null argument")) return s;
  *csv_out = nullptr;
  return guarded([&] {
    albsim::SweepSpec spec;
    spec.name = config->config.name;
    const std::vector<albsim::SweepAxis> axis_list =
        albsim::parse_axes(axes ? axes : "");
    spec.cells = albsim::expand_axes(config->config, axis_list);
    spec.seeds = albsim::default_seeds(seeds > 0 ? static_cast<int>(seeds) : 5);
    *csv_out = dup_string(
        albsim::run_sweep_csv(spec, resolve_threads(threads)));
  });
}

albsim_status albsim_preset_names(char** out) {
  if (albsim_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    std::string text;
    for (const albsim::PresetInfo& info : albsim::preset_catalog())
      text += info.name + "\t" + info.description + "\n";
    *out = dup_string(text);
  });
}

void albsim_free(char* text) { std::free(text); }

const char* albsim_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
