#pragma once

#include <optional>
#include <string>

#include "model/params.hpp"
#include "sim/generate.hpp"
#include "util/time.hpp"

namespace bnsurv::io {

// Everything a run needs beyond the streams themselves. A config file sets
// any subset as "key value" lines; command-line flags override file values.
struct RunConfig {
    std::string params_path;
    std::string census_path;
    std::string centroids_path;  // optional; fills the model's centroid table
    std::string weather_path;    // optional; needed to sample scenarios

    std::optional<model::Variant> variant;    // overrides the params file
    std::optional<double> p_release;          // overrides the params file prior
    int cadence_per_hour = 1;
    std::uint64_t resync_interval = 10000;
    std::uint64_t seed = 1;
    int utc_offset_minutes = 0;  // fixed offset defining calendar midnights

    std::optional<UtcTime> start;  // monitoring / generation window
    std::optional<UtcTime> end;

    sim::SimParams sim;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// Applies one "key value" assignment; the file parser and flag overrides
// share this dispatch. context names the source for error messages.
void set_run_config_kv(RunConfig& c, const std::string& key, const std::string& val,
                       const std::string& context);

void validate_run_config(const RunConfig& c);

// Loads the parameter file and folds in the config's overrides and the
// centroid table. The result is ready to build a model from.
model::PersonModelParams load_model_params(const RunConfig& c);

}  // namespace bnsurv::io
