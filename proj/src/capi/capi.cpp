#include "bnsurv.h"

#include <exception>
#include <string>
#include <vector>

#include "engine/table.hpp"
#include "io/census.hpp"
#include "io/runconfig.hpp"
#include "io/runner.hpp"
#include "io/synth.hpp"
#include "model/params.hpp"
#include "model/person.hpp"
#include "util/error.hpp"
#include "util/time.hpp"

using namespace bnsurv;

namespace {

thread_local std::string g_last_error;

int status_of(ErrorCode code) { return static_cast<int>(code) + 1; }

template <typename F>
int guarded(F&& body) {
    try {
        body();
        return BNSURV_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BNSURV_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return BNSURV_E_INTERNAL;
    }
}

std::vector<std::pair<std::string, std::string>> split_overrides(const char* const* kv,
                                                                 size_t n) {
    std::vector<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < n; ++i) {
        std::string s = kv[i] ? kv[i] : "";
        auto eq = s.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidArgument, "override '" + s + "' is not key=value");
        out.push_back({s.substr(0, eq), s.substr(eq + 1)});
    }
    return out;
}

io::RunConfig load_config_with_overrides(const char* config_path, const char* const* overrides,
                                         size_t n_overrides) {
    io::RunConfig c;
    if (config_path && *config_path) c = io::load_run_config(config_path);
    for (auto& [key, val] : split_overrides(overrides, n_overrides))
        io::set_run_config_kv(c, key, val, "override " + key);
    return c;
}

}  // namespace

struct bnsurv_model {
    model::PersonModelParams params;
    model::PersonModel person;
};

struct bnsurv_monitor {
    bnsurv_model* model;  // not owned
    engine::EquivalenceClassTable table;
    engine::HypothesisSpace hypotheses;
    int utc_offset_minutes;
};

extern "C" {

const char* bnsurv_version(void) { return "1.0.0"; }

const char* bnsurv_last_error(void) { return g_last_error.c_str(); }

const char* bnsurv_status_name(int status) {
    if (status == BNSURV_OK) return "ok";
    if (status < 1 || status > status_of(ErrorCode::Internal)) return "unknown";
    return error_code_name(static_cast<ErrorCode>(status - 1));
}

int bnsurv_status_is_validation(int status) {
    return status != BNSURV_OK && status != BNSURV_E_INTERNAL ? 1 : 0;
}

int bnsurv_model_open(const char* params_path, const char* centroids_path,
                      const char* variant, double p_release, bnsurv_model** out) {
    return guarded([&] {
        if (!params_path || !out) fail(ErrorCode::InvalidArgument, "null argument");
        io::RunConfig c;
        c.params_path = params_path;
        if (centroids_path) c.centroids_path = centroids_path;
        if (variant && *variant) c.variant = model::variant_from_name(variant);
        if (p_release > 0.0) c.p_release = p_release;
        auto params = io::load_model_params(c);
        auto* m = new bnsurv_model{params, model::build_person_model(params, params.variant)};
        *out = m;
    });
}

void bnsurv_model_free(bnsurv_model* m) { delete m; }

int bnsurv_model_num_zips(const bnsurv_model* m) {
    return static_cast<int>(m->params.zips.size());
}

int bnsurv_model_num_ages(const bnsurv_model* m) { return m->params.age_deciles; }

int bnsurv_model_num_configs(const bnsurv_model* m) {
    return static_cast<int>(m->person.configs().size());
}

int64_t bnsurv_model_class_space(const bnsurv_model* m) {
    return static_cast<int64_t>(m->person.class_space_size());
}

const char* bnsurv_model_variant(const bnsurv_model* m) {
    return model::variant_name(m->params.variant);
}

const char* bnsurv_model_zip(const bnsurv_model* m, int index) {
    if (index < 0 || static_cast<size_t>(index) >= m->params.zips.size()) return nullptr;
    return m->params.zips[static_cast<size_t>(index)].c_str();
}

int bnsurv_monitor_create(bnsurv_model* m, const char* census_path, const char* start_time,
                          int utc_offset_minutes, uint64_t resync_interval,
                          bnsurv_monitor** out) {
    return guarded([&] {
        if (!m || !census_path || !start_time || !out)
            fail(ErrorCode::InvalidArgument, "null argument");
        UtcTime start = parse_time(start_time);
        auto census = io::parse_census(census_path, m->params);
        auto table = engine::make_table(m->person, census, io::census_total(census),
                                        civil_day(start, utc_offset_minutes), resync_interval);
        auto hyp = engine::make_hypothesis_space(m->person, {});
        *out = new bnsurv_monitor{m, std::move(table), std::move(hyp), utc_offset_minutes};
    });
}

void bnsurv_monitor_free(bnsurv_monitor* h) { delete h; }

int bnsurv_monitor_apply_case(bnsurv_monitor* h, const char* time_iso, const char* zip,
                              int age_decile, const char* gender, int respiratory) {
    return guarded([&] {
        if (!h || !time_iso || !zip || !gender) fail(ErrorCode::InvalidArgument, "null argument");
        UtcTime t = parse_time(time_iso);
        std::int64_t day = civil_day(t, h->utc_offset_minutes);
        if (day > h->table.current_day()) h->table.advance_day(day);
        int zi = h->model->params.zip_index(zip);
        if (zi < 0) fail(ErrorCode::UnknownZip, std::string("unknown zip ") + zip);
        std::string g = gender;
        int gi;
        if (g == "female")
            gi = 0;
        else if (g == "male")
            gi = 1;
        else
            fail(ErrorCode::ParseError, "gender must be female or male");
        model::PersonEvidence ev;
        ev.zip = zi;
        ev.age = age_decile;
        ev.gender = gi;
        ev.admission = model::AdmissionDay::Today;
        ev.resp = respiratory ? model::RespObs::True : model::RespObs::False;
        h->table.apply_case_arrival(ev);
    });
}

int bnsurv_monitor_advance_to(bnsurv_monitor* h, const char* time_iso) {
    return guarded([&] {
        if (!h || !time_iso) fail(ErrorCode::InvalidArgument, "null argument");
        std::int64_t day = civil_day(parse_time(time_iso), h->utc_offset_minutes);
        if (day > h->table.current_day()) h->table.advance_day(day);
    });
}

int bnsurv_monitor_posterior(bnsurv_monitor* h, struct bnsurv_posterior* out) {
    return guarded([&] {
        if (!h || !out) fail(ErrorCode::InvalidArgument, "null argument");
        auto r = engine::outbreak_posterior(h->table, h->hypotheses);
        out->p_release = r.p_release;
        out->log_lik_release = r.log_lik_release;
        out->log_lik_no_release = r.log_lik_no_release;
        out->map_time = static_cast<int>(r.map_time);
        out->map_location = r.map_location;
        out->map_angle = r.map_angle;
    });
}

int64_t bnsurv_monitor_population(const bnsurv_monitor* h) {
    return static_cast<int64_t>(h->table.population());
}

int64_t bnsurv_monitor_day(const bnsurv_monitor* h) { return h->table.current_day(); }

size_t bnsurv_monitor_warning_count(const bnsurv_monitor* h) {
    return h->table.warnings().size();
}

const char* bnsurv_monitor_warning(const bnsurv_monitor* h, size_t index) {
    if (index >= h->table.warnings().size()) return nullptr;
    return h->table.warnings()[index].c_str();
}

int bnsurv_run_monitor(const char* config_path, const char* const* overrides,
                       size_t n_overrides, const char* stream_path, const char* trace_path,
                       bnsurv_warn_fn warn, void* warn_ctx) {
    return guarded([&] {
        if (!stream_path) fail(ErrorCode::InvalidArgument, "null stream path");
        auto c = load_config_with_overrides(config_path, overrides, n_overrides);
        auto forward = [&](const std::string& msg) {
            if (warn) warn(msg.c_str(), warn_ctx);
        };
        io::run_monitor(c, stream_path, trace_path ? trace_path : "", forward);
    });
}

int bnsurv_run_simulate(const char* config_path, const char* const* overrides,
                        size_t n_overrides, const char* scenario_path, double amount,
                        const char* out_path) {
    return guarded([&] {
        if (!out_path) fail(ErrorCode::InvalidArgument, "null output path");
        auto c = load_config_with_overrides(config_path, overrides, n_overrides);
        io::run_simulate(c, scenario_path ? scenario_path : "", amount, out_path);
    });
}

int bnsurv_run_simulate_batch(const char* config_path, const char* const* overrides,
                              size_t n_overrides, int count, double amount,
                              const char* out_dir) {
    return guarded([&] {
        if (!out_dir) fail(ErrorCode::InvalidArgument, "null output dir");
        auto c = load_config_with_overrides(config_path, overrides, n_overrides);
        io::run_simulate_batch(c, count, amount, out_dir);
    });
}

int bnsurv_run_amoc(const char* const* trace_paths, size_t n_traces,
                    const char* const* release_times, const char* out_path) {
    return guarded([&] {
        if (!trace_paths || !out_path) fail(ErrorCode::InvalidArgument, "null argument");
        std::vector<std::string> paths;
        for (size_t i = 0; i < n_traces; ++i) paths.push_back(trace_paths[i]);
        std::vector<UtcTime> times;
        if (release_times)
            for (size_t i = 0; i < n_traces; ++i) times.push_back(parse_time(release_times[i]));
        io::run_amoc(paths, times, out_path);
    });
}

int bnsurv_synth_population(const char* out_dir, int grid_zips, int64_t population,
                            double other_fraction, int age_deciles, int weather_rows,
                            uint64_t seed, const char* variant) {
    return guarded([&] {
        if (!out_dir) fail(ErrorCode::InvalidArgument, "null output dir");
        io::SynthConfig cfg;
        if (grid_zips > 0) cfg.grid_zips = grid_zips;
        if (population > 0) cfg.population = population;
        if (other_fraction >= 0.0) cfg.other_fraction = other_fraction;
        if (age_deciles > 0) cfg.age_deciles = age_deciles;
        if (weather_rows > 0) cfg.weather_rows = weather_rows;
        cfg.seed = seed;
        if (variant && *variant) cfg.variant = model::variant_from_name(variant);
        io::write_synth(io::synth_population(cfg), out_dir);
    });
}

}  // extern "C"
