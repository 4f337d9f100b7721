#pragma once

#include <string>
#include <utility>
#include <vector>

#include "util/time.hpp"

namespace bnsurv::eval {

struct TracePoint {
    UtcTime time;
    double p_release = 0.0;
};

// Hourly posterior samples, strictly increasing in time.
using PosteriorTrace = std::vector<TracePoint>;

void validate_trace(const PosteriorTrace& trace);

// Detection times are capped here: a run that never alarms scores the full
// six-day horizon.
inline constexpr double kDetectionCapHours = 144.0;

// Reference floor reported alongside curves; the simulator's incubation
// makes earlier detection impossible.
inline constexpr double kDetectionFloorHours = 24.0;

struct AmocPoint {
    double threshold = 0.0;
    double fp_fraction = 0.0;        // fraction of monitored hours above threshold
    double fp_per_week = 0.0;        // fp_fraction * 168
    double mean_detection_hours = 0.0;
    double ci_halfwidth_hours = 0.0;  // 0 when only one trace contributed

    friend bool operator==(const AmocPoint&, const AmocPoint&) = default;
};

// Hours from the release to the first strictly-above-threshold sample in
// [release, release + 144h]; 144 when none. The trace must cover that whole
// window or InsufficientCoverage is raised.
double detection_time(const PosteriorTrace& trace, UtcTime release_time, double threshold);

// Fraction of samples in [window_start, window_end) strictly above the
// threshold; EmptyWindow when no samples land in the window.
double false_positive_rate(const PosteriorTrace& trace, double threshold, UtcTime window_start,
                           UtcTime window_end);

// 1.96 * sample standard deviation / sqrt(n); TooFewSamples for n < 2.
double ci_halfwidth(const std::vector<double>& detection_times);

// One curve over all traces: thresholds are every distinct posterior value
// plus 0 and 1; detection times average across traces, false-positive hours
// pool across traces (each trace's window runs from its start to its release
// + 24h). Points come out in increasing false-positive order.
std::vector<AmocPoint> compute_amoc(
    const std::vector<std::pair<PosteriorTrace, UtcTime>>& traces);

// CSV with header threshold,fp_fraction,fp_per_week,mean_detection_hours,
// ci_halfwidth_hours; a leading comment carries the cap and floor constants.
std::string serialize_amoc(const std::vector<AmocPoint>& points);
std::vector<AmocPoint> parse_amoc(const std::string& text);

}  // namespace bnsurv::eval
