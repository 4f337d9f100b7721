#include "io/runconfig.hpp"

#include <fstream>
#include <sstream>

#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::io {

void set_run_config_kv(RunConfig& c, const std::string& key, const std::string& val,
                       const std::string& context) {
    if (key == "params") {
        c.params_path = val;
    } else if (key == "census") {
        c.census_path = val;
    } else if (key == "centroids") {
        c.centroids_path = val;
    } else if (key == "weather") {
        c.weather_path = val;
    } else if (key == "variant") {
        c.variant = model::variant_from_name(val);
    } else if (key == "p_release") {
        c.p_release = parse_double(val, key);
    } else if (key == "cadence_per_hour") {
        c.cadence_per_hour = static_cast<int>(parse_int(val, key));
    } else if (key == "resync_interval") {
        c.resync_interval = static_cast<std::uint64_t>(parse_int(val, key));
    } else if (key == "seed") {
        c.seed = static_cast<std::uint64_t>(parse_int(val, key));
    } else if (key == "utc_offset_minutes") {
        c.utc_offset_minutes = static_cast<int>(parse_int(val, key));
    } else if (key == "start") {
        c.start = parse_time(val);
    } else if (key == "end") {
        c.end = parse_time(val);
    } else if (key == "dose_k") {
        c.sim.dose_k = parse_double(val, key);
    } else if (key == "delay_mean_min_h") {
        c.sim.delay_mean_min_h = parse_double(val, key);
    } else if (key == "delay_mean_scale_h") {
        c.sim.delay_mean_scale_h = parse_double(val, key);
    } else if (key == "delay_c_ref") {
        c.sim.delay_c_ref = parse_double(val, key);
    } else if (key == "height_median_ft") {
        c.sim.height_median_ft = parse_double(val, key);
    } else if (key == "height_sigma") {
        c.sim.height_sigma = parse_double(val, key);
    } else {
        fail(ErrorCode::ParseError, context + ": unknown key '" + key + "'");
    }
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() != 2)
            fail(ErrorCode::ParseError,
                 "config line " + std::to_string(line_no) + ": expected 'key value'");
        set_run_config_kv(c, fields[0], fields[1], "config line " + std::to_string(line_no));
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

void validate_run_config(const RunConfig& c) {
    if (c.params_path.empty()) fail(ErrorCode::InvalidArgument, "config needs a params path");
    if (c.cadence_per_hour < 1)
        fail(ErrorCode::InvalidArgument, "cadence must be at least once per hour");
    if (3600 % c.cadence_per_hour != 0)
        fail(ErrorCode::InvalidArgument, "cadence must divide the hour evenly");
    if (c.p_release && (*c.p_release <= 0.0 || *c.p_release >= 1.0))
        fail(ErrorCode::InvalidArgument, "p_release override must be in (0, 1)");
    if (c.start && c.end && !(*c.start < *c.end))
        fail(ErrorCode::InvalidArgument, "start must be before end");
}

model::PersonModelParams load_model_params(const RunConfig& c) {
    validate_run_config(c);
    model::PersonModelParams params = model::load_params(c.params_path);
    if (c.variant) params.variant = *c.variant;
    if (c.p_release) params.priors.p_release = *c.p_release;
    if (!c.centroids_path.empty()) params.centroids = spatial::load_centroids(c.centroids_path);
    model::validate_params(params);
    return params;
}

}  // namespace bnsurv::io
