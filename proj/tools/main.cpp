#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bnsurv.h"

namespace {

// Run-config overrides collected from flags, handed to the library as
// key=value strings applied on top of the config file.
struct Overrides {
    std::vector<std::string> kv;
    std::vector<const char*> ptrs;

    const char* const* data() {
        ptrs.clear();
        for (const auto& s : kv) ptrs.push_back(s.c_str());
        return ptrs.data();
    }
    size_t size() const { return kv.size(); }
};

void add_config_flags(CLI::App* cmd, const std::shared_ptr<Overrides>& ov) {
    auto add = [cmd, ov](const std::string& flag, const std::string& key,
                         const std::string& desc) {
        cmd->add_option_function<std::string>(
            flag, [ov, key](const std::string& v) { ov->kv.push_back(key + "=" + v); }, desc);
    };
    add("--params", "params", "network parameter file");
    add("--census", "census", "census CSV");
    add("--centroids", "centroids", "zip centroid CSV");
    add("--weather", "weather", "weather CSV");
    add("--variant", "variant", "spatial or nonspatial (overrides the parameter file)");
    add("--p-release", "p_release", "release prior override, in (0, 1)");
    add("--cadence-per-hour", "cadence_per_hour", "posterior emissions per hour (default 1)");
    add("--resync-interval", "resync_interval", "moves between accumulator rebuilds");
    add("--seed", "seed", "random seed for simulation");
    add("--utc-offset-minutes", "utc_offset_minutes", "offset defining calendar midnights");
    add("--start", "start", "window start, ISO-8601 UTC");
    add("--end", "end", "window end, ISO-8601 UTC");
    add("--dose-k", "dose_k", "dose-response coefficient");
    add("--delay-mean-min-h", "delay_mean_min_h", "incubation mean floor, hours");
    add("--delay-mean-scale-h", "delay_mean_scale_h", "incubation mean dose scale, hours");
    add("--delay-c-ref", "delay_c_ref", "concentration at which incubation halves");
    add("--height-median-ft", "height_median_ft", "sampled release height median, feet");
    add("--height-sigma", "height_sigma", "sampled release height log sd");
}

void warn_to_stderr(const char* msg, void*) { std::fprintf(stderr, "warning: %s\n", msg); }

int finish(int status) {
    if (status == BNSURV_OK) return 0;
    std::fprintf(stderr, "error (%s): %s\n", bnsurv_status_name(status), bnsurv_last_error());
    return bnsurv_status_is_validation(status) ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian outbreak monitoring over emergency-department case streams"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth-population",
                                     "generate a synthetic region: parameters, census, "
                                     "centroids, and weather");
    std::string synth_dir;
    int synth_zips = 0, synth_ages = 0, synth_weather = 0;
    std::int64_t synth_pop = 0;
    double synth_other = -1.0;
    std::uint64_t synth_seed = 1;
    std::string synth_variant;
    synth->add_option("--out-dir", synth_dir, "output directory")->required();
    synth->add_option("--zips", synth_zips, "grid zip count (default 100)");
    synth->add_option("--population", synth_pop, "total residents (default 1400000)");
    synth->add_option("--other-fraction", synth_other,
                      "population share of the catch-all zip (default 0.05)");
    synth->add_option("--ages", synth_ages, "age decile count (default 9)");
    synth->add_option("--weather-rows", synth_weather, "weather table rows (default 60)");
    synth->add_option("--seed", synth_seed, "random seed");
    synth->add_option("--variant", synth_variant, "spatial (default) or nonspatial");

    auto* sim = app.add_subcommand("simulate", "write a merged background+outbreak case stream");
    auto sim_ov = std::make_shared<Overrides>();
    add_config_flags(sim, sim_ov);
    std::string sim_config, sim_scenario, sim_out, sim_out_dir;
    double sim_amount = -1.0;
    int sim_batch = 0;
    sim->add_option("--config", sim_config, "run config file");
    sim->add_option("--scenario", sim_scenario,
                    "release scenario file; omitted, one is sampled from the weather table");
    sim->add_option("--amount", sim_amount, "release amount override (nonnegative)");
    sim->add_option("--batch", sim_batch, "write this many streams with distinct locations");
    sim->add_option("--out", sim_out, "output stream path (single run)");
    sim->add_option("--out-dir", sim_out_dir, "output directory (batch run)");

    auto* mon = app.add_subcommand("monitor", "replay a case stream and emit posteriors");
    auto mon_ov = std::make_shared<Overrides>();
    add_config_flags(mon, mon_ov);
    std::string mon_config, mon_stream, mon_out;
    mon->add_option("--config", mon_config, "run config file");
    mon->add_option("--stream", mon_stream, "case stream CSV")->required();
    mon->add_option("--out", mon_out, "trace CSV path (omit to run without writing)");

    auto* amoc = app.add_subcommand("amoc", "summarize traces as an activity-monitor curve");
    std::vector<std::string> amoc_traces, amoc_times;
    std::string amoc_out;
    amoc->add_option("traces", amoc_traces, "posterior trace CSVs")->required();
    amoc->add_option("--release-time", amoc_times,
                     "release instant per trace; omitted, scenario sidecars are read");
    amoc->add_option("--out", amoc_out, "AMOC CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (synth->parsed()) {
        return finish(bnsurv_synth_population(
            synth_dir.c_str(), synth_zips, synth_pop, synth_other, synth_ages, synth_weather,
            synth_seed, synth_variant.empty() ? nullptr : synth_variant.c_str()));
    }
    if (sim->parsed()) {
        if (sim_batch > 0) {
            if (sim_out_dir.empty()) {
                std::fprintf(stderr, "error: --batch needs --out-dir\n");
                return 1;
            }
            return finish(bnsurv_run_simulate_batch(sim_config.c_str(), sim_ov->data(),
                                                    sim_ov->size(), sim_batch, sim_amount,
                                                    sim_out_dir.c_str()));
        }
        if (sim_out.empty()) {
            std::fprintf(stderr, "error: simulate needs --out\n");
            return 1;
        }
        return finish(bnsurv_run_simulate(sim_config.c_str(), sim_ov->data(), sim_ov->size(),
                                          sim_scenario.empty() ? nullptr : sim_scenario.c_str(),
                                          sim_amount, sim_out.c_str()));
    }
    if (mon->parsed()) {
        return finish(bnsurv_run_monitor(mon_config.c_str(), mon_ov->data(), mon_ov->size(),
                                         mon_stream.c_str(),
                                         mon_out.empty() ? nullptr : mon_out.c_str(),
                                         warn_to_stderr, nullptr));
    }
    if (amoc->parsed()) {
        std::vector<const char*> traces, times;
        for (const auto& t : amoc_traces) traces.push_back(t.c_str());
        for (const auto& t : amoc_times) times.push_back(t.c_str());
        if (!times.empty() && times.size() != traces.size()) {
            std::fprintf(stderr, "error: need one --release-time per trace\n");
            return 1;
        }
        return finish(bnsurv_run_amoc(traces.data(), traces.size(),
                                      times.empty() ? nullptr : times.data(),
                                      amoc_out.c_str()));
    }
    return 1;
}
