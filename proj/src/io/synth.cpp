#include "io/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "io/census.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/time.hpp"

namespace bnsurv::io {

namespace {

constexpr double kMilesPerDegree = 3958.7613 * 3.14159265358979323846 / 180.0;

std::vector<std::string> make_zip_names(int grid_zips) {
    std::vector<std::string> zips;
    zips.reserve(static_cast<std::size_t>(grid_zips) + 1);
    for (int i = 0; i < grid_zips; ++i) zips.push_back(std::to_string(15201 + i));
    zips.push_back(spatial::kCatchAllZip);
    return zips;
}

std::vector<spatial::ZipCentroid> make_grid(const SynthConfig& cfg,
                                            const std::vector<std::string>& zips) {
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cfg.grid_zips))));
    int rows = (cfg.grid_zips + cols - 1) / cols;
    double dlat = cfg.spacing_miles / kMilesPerDegree;
    double dlon = cfg.spacing_miles /
                  (kMilesPerDegree * std::cos(cfg.center_lat * 3.14159265358979323846 / 180.0));
    std::vector<spatial::ZipCentroid> out;
    out.reserve(static_cast<std::size_t>(cfg.grid_zips));
    for (int i = 0; i < cfg.grid_zips; ++i) {
        int r = i / cols, c = i % cols;
        out.push_back({zips[static_cast<std::size_t>(i)],
                       cfg.center_lat + (r - (rows - 1) / 2.0) * dlat,
                       cfg.center_lon + (c - (cols - 1) / 2.0) * dlon});
    }
    return out;
}

// Integer counts with the exact requested total: floor everything, then hand
// the shortfall to the largest fractional parts. Ties break on index so the
// result is deterministic.
std::vector<std::int64_t> largest_remainder(const std::vector<double>& targets,
                                            std::int64_t total) {
    std::vector<std::int64_t> counts(targets.size());
    std::vector<std::pair<double, std::size_t>> frac;
    frac.reserve(targets.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        double f = std::floor(targets[i]);
        counts[i] = static_cast<std::int64_t>(f);
        assigned += counts[i];
        frac.push_back({targets[i] - f, i});
    }
    std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::int64_t shortfall = total - assigned;
    if (shortfall < 0 || shortfall > static_cast<std::int64_t>(targets.size()))
        fail(ErrorCode::Internal, "rounding shortfall out of range");
    for (std::int64_t i = 0; i < shortfall; ++i) ++counts[frac[static_cast<std::size_t>(i)].second];
    return counts;
}

}  // namespace

SynthOutput synth_population(const SynthConfig& cfg) {
    if (cfg.grid_zips < 1) fail(ErrorCode::InvalidArgument, "grid_zips must be positive");
    if (cfg.population < 1) fail(ErrorCode::InvalidArgument, "population must be positive");
    if (cfg.other_fraction < 0.0 || cfg.other_fraction >= 1.0)
        fail(ErrorCode::InvalidArgument, "other_fraction must lie in [0, 1)");
    if (cfg.age_deciles < 1) fail(ErrorCode::InvalidArgument, "age_deciles must be positive");

    Rng rng(cfg.seed);
    SynthOutput out;
    auto zips = make_zip_names(cfg.grid_zips);
    const std::size_t nz = zips.size();
    const std::size_t na = static_cast<std::size_t>(cfg.age_deciles);
    out.centroids = make_grid(cfg, zips);

    // Zip population shares: lognormal spread across the grid, the fixed
    // catch-all share for the last entry.
    std::vector<double> zip_share(nz);
    double grid_total = 0.0;
    for (std::size_t z = 0; z + 1 < nz; ++z) {
        zip_share[z] = std::exp(rng.normal(0.0, 0.5));
        grid_total += zip_share[z];
    }
    for (std::size_t z = 0; z + 1 < nz; ++z)
        zip_share[z] *= (1.0 - cfg.other_fraction) / grid_total;
    zip_share[nz - 1] = cfg.other_fraction > 0.0 ? cfg.other_fraction
                                                 : 1.0 / static_cast<double>(cfg.population);

    // Age profile tapers toward the oldest deciles; each zip jitters it.
    std::vector<double> age_base(na);
    for (std::size_t a = 0; a < na; ++a)
        age_base[a] = na == 1 ? 1.0
                              : 1.25 - 0.75 * static_cast<double>(a) / static_cast<double>(na - 1);
    std::vector<double> targets(nz * na * 2);
    for (std::size_t z = 0; z < nz; ++z) {
        std::vector<double> age_share(na);
        double s = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            age_share[a] = age_base[a] * std::exp(rng.normal(0.0, 0.15));
            s += age_share[a];
        }
        double female = rng.uniform(0.48, 0.52);
        for (std::size_t a = 0; a < na; ++a) {
            double cell = static_cast<double>(cfg.population) * zip_share[z] * age_share[a] / s;
            targets[(z * na + a) * 2 + 0] = cell * female;
            targets[(z * na + a) * 2 + 1] = cell * (1.0 - female);
        }
    }
    auto counts = largest_remainder(targets, cfg.population);

    // Keep every cell occupied so no demographic combination has zero mass;
    // borrow from the largest cell, which can spare it.
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) continue;
        std::size_t big = static_cast<std::size_t>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        if (counts[big] < 2) fail(ErrorCode::InvalidArgument, "population too small for region");
        --counts[big];
        ++counts[i];
    }

    out.census.reserve(counts.size());
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t g = 0; g < 2; ++g)
                out.census.push_back({static_cast<int>(z), static_cast<int>(a),
                                      static_cast<int>(g), counts[(z * na + a) * 2 + g]});

    // Model demographics are read back off the rounded counts so the census
    // and the parameter file agree exactly.
    auto& p = out.params;
    p = model::default_params(zips, cfg.variant);
    p.age_deciles = cfg.age_deciles;
    std::vector<std::int64_t> zip_count(nz, 0);
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t g = 0; g < 2; ++g) zip_count[z] += counts[(z * na + a) * 2 + g];
    p.zip_prior.resize(nz);
    p.age_given_zip.assign(nz, std::vector<double>(na));
    p.gender_given_zip.assign(nz, std::vector<double>(2));
    for (std::size_t z = 0; z < nz; ++z) {
        p.zip_prior[z] = static_cast<double>(zip_count[z]) / static_cast<double>(cfg.population);
        std::int64_t female = 0;
        for (std::size_t a = 0; a < na; ++a) {
            std::int64_t row = counts[(z * na + a) * 2] + counts[(z * na + a) * 2 + 1];
            p.age_given_zip[z][a] =
                static_cast<double>(row) / static_cast<double>(zip_count[z]);
            female += counts[(z * na + a) * 2];
        }
        p.gender_given_zip[z][0] =
            static_cast<double>(female) / static_cast<double>(zip_count[z]);
        p.gender_given_zip[z][1] = 1.0 - p.gender_given_zip[z][0];
    }
    p.priors.location_given_release.assign(nz, 1.0 / static_cast<double>(nz));
    p.centroids = spatial::CentroidMap(out.centroids);
    model::validate_params(p);

    out.weather.reserve(static_cast<std::size_t>(cfg.weather_rows));
    UtcTime day0 = parse_time("2026-03-01T00:00:00Z");
    for (int i = 0; i < cfg.weather_rows; ++i) {
        sim::WeatherRow w;
        w.date = day0.plus_days(i);
        w.wind_direction_deg = std::min(rng.uniform(0.0, 360.0), 359.99);
        w.wind_speed_mph = rng.uniform(3.0, 12.0);
        double u = rng.uniform();
        w.stability = u < 0.25 ? sim::Stability::C
                               : (u < 0.75 ? sim::Stability::D : sim::Stability::E);
        out.weather.push_back(w);
    }
    return out;
}

std::vector<std::string> write_synth(const SynthOutput& out, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string params_path = out_dir + "/model.params";
    std::string census_path = out_dir + "/census.csv";
    std::string zips_path = out_dir + "/zips.csv";
    std::string weather_path = out_dir + "/weather.csv";
    model::save_params(params_path, out.params);
    write_census(census_path, out.params, out.census);
    spatial::write_centroids(zips_path, out.centroids);
    sim::write_weather(weather_path, out.weather);
    return {params_path, census_path, zips_path, weather_path};
}

}  // namespace bnsurv::io
