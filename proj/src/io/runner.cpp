#include "io/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "engine/table.hpp"
#include "io/census.hpp"
#include "util/error.hpp"

namespace bnsurv::io {

namespace {

UtcTime floor_hour(UtcTime t) {
    std::int64_t r = t.seconds % 3600;
    if (r < 0) r += 3600;
    return UtcTime{t.seconds - r};
}

std::string case_context(const std::string& path, std::size_t index, const sim::SimCase& c) {
    // header occupies line 1
    return path + " line " + std::to_string(index + 2) + " (case at " + format_time(c.time) + ")";
}

}  // namespace

std::vector<TraceRow> run_monitor(const RunConfig& config, const std::string& stream_path,
                                  const std::string& trace_path,
                                  std::function<void(const std::string&)> warn) {
    model::PersonModelParams params = load_model_params(config);
    if (config.census_path.empty()) fail(ErrorCode::InvalidArgument, "monitor needs a census");
    model::PersonModel m(params, params.variant);

    std::vector<std::string> census_warnings;
    auto census = parse_census(config.census_path, params, &census_warnings);
    if (warn)
        for (const auto& w : census_warnings) warn(w);

    auto cases = read_case_stream(stream_path);
    UtcTime start, end;
    if (config.start)
        start = *config.start;
    else if (!cases.empty())
        start = floor_hour(cases.front().time);
    else
        fail(ErrorCode::InvalidArgument, "empty stream and no start time configured");
    if (config.end)
        end = *config.end;
    else if (!cases.empty())
        end = floor_hour(cases.back().time).plus_hours(1);
    else
        fail(ErrorCode::InvalidArgument, "empty stream and no end time configured");
    if (!(start < end)) fail(ErrorCode::InvalidArgument, "monitor window is empty");

    engine::EquivalenceClassTable table =
        engine::make_table(m, census, census_total(census),
                           civil_day(start, config.utc_offset_minutes), config.resync_interval);
    engine::HypothesisSpace hyp = engine::make_hypothesis_space(m, {});

    const std::int64_t step = 3600 / config.cadence_per_hour;
    const bool spatial = params.variant == model::Variant::Spatial;
    std::size_t ci = 0;
    std::size_t warned = 0;
    std::vector<TraceRow> rows;

    auto forward_warnings = [&] {
        const auto& ws = table.warnings();
        for (; warned < ws.size(); ++warned)
            if (warn) warn(ws[warned]);
    };

    auto apply_case = [&](const sim::SimCase& c, std::size_t index) {
        int zip = params.zip_index(c.zip);
        if (zip < 0)
            fail(ErrorCode::UnknownZip, case_context(stream_path, index, c) + ": zip '" + c.zip + "'");
        if (c.age < 0 || c.age >= params.age_deciles)
            fail(ErrorCode::InvalidArgument,
                 case_context(stream_path, index, c) + ": age decile out of range");
        std::int64_t day = civil_day(c.time, config.utc_offset_minutes);
        if (day > table.current_day()) table.advance_day(day);
        model::PersonEvidence e{zip, c.age, c.gender, model::AdmissionDay::Today,
                                c.respiratory ? model::RespObs::True : model::RespObs::False};
        try {
            table.apply_case_arrival(e);
        } catch (const Error& err) {
            fail(err.code(), case_context(stream_path, index, c) + ": " + err.what());
        }
        forward_warnings();
    };

    for (UtcTime t = UtcTime{start.seconds + step}; t <= end; t = t.plus_seconds(step)) {
        while (ci < cases.size() && cases[ci].time <= t) {
            apply_case(cases[ci], ci);
            ++ci;
        }
        std::int64_t day = civil_day(t, config.utc_offset_minutes);
        if (day > table.current_day()) table.advance_day(day);

        engine::PosteriorResult r = engine::outbreak_posterior(table, hyp);
        TraceRow row;
        row.time = t;
        row.p_release = r.p_release;
        row.log_lik_yes = r.log_lik_release;
        row.log_lik_no = r.log_lik_no_release;
        if (r.map_location >= 0) {
            row.map_location = params.zips[r.map_location];
            row.map_time = model::release_time_name(r.map_time);
            if (spatial && r.map_angle >= 0) row.map_angle = spatial::kAngleNames[r.map_angle];
        }
        rows.push_back(std::move(row));
    }
    forward_warnings();

    if (!trace_path.empty()) write_trace(trace_path, rows);
    return rows;
}

namespace {

sim::ReleaseScenario pick_scenario(const RunConfig& config,
                                   const model::PersonModelParams& params,
                                   const std::vector<sim::ZipPopulation>& population,
                                   UtcTime start, Rng& rng) {
    if (config.weather_path.empty())
        fail(ErrorCode::InvalidArgument, "sampling a scenario needs a weather table");
    auto weather = sim::load_weather(config.weather_path);
    // one day into the window, so the stream holds some pre-release background
    return sim::sample_release(params.centroids, population, weather, start.plus_hours(24),
                               config.sim, rng);
}

void write_one_stream(const RunConfig& config, const model::PersonModelParams& params,
                      const model::PersonModel& m,
                      const std::vector<model::CensusCell>& census,
                      sim::ReleaseScenario scenario, double amount, const std::string& out_path,
                      Rng& rng) {
    if (amount >= 0.0) scenario.amount = amount;
    sim::validate_scenario(scenario);
    UtcTime start = *config.start, end = *config.end;
    auto population = sim::population_by_zip(params, census);
    auto background = sim::generate_background(params, census, start, end, rng);
    auto outbreak = sim::generate_outbreak(scenario, population, params.centroids, config.sim, rng);
    std::erase_if(outbreak,
                  [&](const sim::SimCase& c) { return c.time < start || !(c.time < end); });
    sim::complete_cases(outbreak, m, rng);
    auto merged = sim::inject(background, outbreak);
    write_case_stream(out_path, merged);
    save_scenario(out_path + ".scenario", scenario);
}

}  // namespace

void run_simulate(const RunConfig& config, const std::string& scenario_path, double amount,
                  const std::string& out_path) {
    model::PersonModelParams params = load_model_params(config);
    if (config.census_path.empty()) fail(ErrorCode::InvalidArgument, "simulate needs a census");
    if (!config.start || !config.end)
        fail(ErrorCode::InvalidArgument, "simulate needs an explicit start and end");
    if (params.centroids.empty())
        fail(ErrorCode::InvalidArgument, "simulate needs zip centroids for the plume");
    model::PersonModel m(params, params.variant);
    auto census = parse_census(config.census_path, params);
    Rng rng(config.seed);
    sim::ReleaseScenario scenario;
    if (scenario_path.empty()) {
        auto population = sim::population_by_zip(params, census);
        scenario = pick_scenario(config, params, population, *config.start, rng);
    } else {
        scenario = sim::load_scenario(scenario_path);
    }
    write_one_stream(config, params, m, census, scenario, amount, out_path, rng);
}

std::vector<std::string> run_simulate_batch(const RunConfig& config, int count, double amount,
                                            const std::string& out_dir) {
    if (count < 1) fail(ErrorCode::InvalidArgument, "batch count must be positive");
    model::PersonModelParams params = load_model_params(config);
    if (config.census_path.empty()) fail(ErrorCode::InvalidArgument, "simulate needs a census");
    if (!config.start || !config.end)
        fail(ErrorCode::InvalidArgument, "simulate needs an explicit start and end");
    if (params.centroids.empty())
        fail(ErrorCode::InvalidArgument, "simulate needs zip centroids for the plume");
    model::PersonModel m(params, params.variant);
    auto census = parse_census(config.census_path, params);
    auto population = sim::population_by_zip(params, census);
    std::filesystem::create_directories(out_dir);

    std::set<std::string> used;
    std::vector<std::string> paths;
    Rng scenario_rng(config.seed);
    for (int i = 0; i < count; ++i) {
        sim::ReleaseScenario scenario;
        int tries = 0;
        do {
            if (++tries > 100 * count + 100)
                fail(ErrorCode::InvalidArgument,
                     "cannot find " + std::to_string(count) + " distinct release zips");
            scenario = pick_scenario(config, params, population, *config.start, scenario_rng);
        } while (used.count(scenario.release_zip));
        used.insert(scenario.release_zip);

        char name[32];
        std::snprintf(name, sizeof(name), "stream_%03d.cases", i);
        std::string out_path = out_dir + "/" + name;
        Rng rng = Rng(config.seed).fork(static_cast<std::uint64_t>(i) + 1);
        write_one_stream(config, params, m, census, scenario, amount, out_path, rng);
        paths.push_back(out_path);
    }
    return paths;
}

std::vector<eval::AmocPoint> run_amoc(const std::vector<std::string>& trace_paths,
                                      const std::vector<UtcTime>& times,
                                      const std::string& out_path) {
    if (trace_paths.empty()) fail(ErrorCode::InvalidArgument, "no trace files");
    if (!times.empty() && times.size() != trace_paths.size())
        fail(ErrorCode::InvalidArgument, "release time count does not match trace count");
    std::vector<std::pair<eval::PosteriorTrace, UtcTime>> pairs;
    pairs.reserve(trace_paths.size());
    for (std::size_t i = 0; i < trace_paths.size(); ++i) {
        auto rows = read_trace(trace_paths[i]);
        UtcTime release = times.empty()
                              ? sim::load_scenario(trace_paths[i] + ".scenario").release_time
                              : times[i];
        pairs.emplace_back(to_posterior_trace(rows), release);
    }
    auto points = eval::compute_amoc(pairs);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) fail(ErrorCode::IoError, "cannot open " + out_path + " for writing");
        out << eval::serialize_amoc(points);
        if (!out) fail(ErrorCode::IoError, "failed writing " + out_path);
    }
    return points;
}

}  // namespace bnsurv::io
