#pragma once

#include <string>
#include <vector>

#include "sim/plume.hpp"
#include "util/rng.hpp"

namespace bnsurv::sim {

// Scenario file: one "key value" pair per line, '#' comments.
// Keys: release_zip, height_ft, amount, release_datetime, wind_direction_deg,
// wind_speed_mph, stability_class.
std::string serialize_scenario(const ReleaseScenario& s);
ReleaseScenario parse_scenario(const std::string& text);
ReleaseScenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const ReleaseScenario& s);

// One historical weather observation; releases draw their meteorology from a
// uniformly sampled row.
struct WeatherRow {
    UtcTime date;
    double wind_direction_deg = 0.0;
    double wind_speed_mph = 5.0;
    Stability stability = Stability::D;
};

// CSV with header date,wind_direction,wind_speed,stability_class
std::vector<WeatherRow> load_weather(const std::string& path);
void write_weather(const std::string& path, const std::vector<WeatherRow>& rows);

const WeatherRow& sample_weather(const std::vector<WeatherRow>& rows, Rng& rng);

}  // namespace bnsurv::sim
