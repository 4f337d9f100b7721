#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model/params.hpp"
#include "model/person.hpp"
#include "sim/scenario.hpp"
#include "spatial/exposure.hpp"

namespace bnsurv::io {

// Knobs for the synthetic region generator. The defaults describe a 10x10
// grid of zips around Pittsburgh plus the catch-all zip, 1.4M residents.
struct SynthConfig {
    int grid_zips = 100;
    std::int64_t population = 1400000;
    double other_fraction = 0.05;  // share of residents in the catch-all zip
    int age_deciles = 9;
    double center_lat = 40.44;
    double center_lon = -80.0;
    double spacing_miles = 2.0;
    int weather_rows = 60;
    model::Variant variant = model::Variant::Spatial;
    std::uint64_t seed = 1;
};

struct SynthOutput {
    model::PersonModelParams params;
    std::vector<model::CensusCell> census;
    std::vector<spatial::ZipCentroid> centroids;
    std::vector<sim::WeatherRow> weather;
};

// Deterministic for a given config. Census counts are produced first
// (largest-remainder rounding, every cell occupied) and the model's
// demographic tables are then read back off the counts, so the parameter
// file and the census describe the same population exactly.
SynthOutput synth_population(const SynthConfig& cfg);

// Writes model.params, census.csv, zips.csv, weather.csv under out_dir.
// Returns the four paths in that order.
std::vector<std::string> write_synth(const SynthOutput& out, const std::string& out_dir);

}  // namespace bnsurv::io
