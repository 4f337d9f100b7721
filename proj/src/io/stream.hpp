#pragma once

#include <string>
#include <vector>

#include "eval/amoc.hpp"
#include "sim/generate.hpp"

namespace bnsurv::io {

// Case stream CSV: header timestamp,zip,age_decile,gender,respiratory with
// ISO-8601 timestamps, gender female/male, respiratory true/false. Rows must
// be sorted by timestamp.
std::vector<sim::SimCase> read_case_stream(const std::string& path);
void write_case_stream(const std::string& path, const std::vector<sim::SimCase>& cases);

// One monitor output row; the map_* columns are empty until the release
// likelihood is finite, and map_angle stays empty under the non-spatial model.
struct TraceRow {
    UtcTime time;
    double p_release = 0.0;
    double log_lik_yes = 0.0;
    double log_lik_no = 0.0;
    std::string map_location;
    std::string map_time;
    std::string map_angle;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

// Trace CSV: header timestamp,p_release,log_lik_yes,log_lik_no,map_location,
// map_time,map_angle.
std::vector<TraceRow> read_trace(const std::string& path);
void write_trace(const std::string& path, const std::vector<TraceRow>& rows);

eval::PosteriorTrace to_posterior_trace(const std::vector<TraceRow>& rows);

}  // namespace bnsurv::io
