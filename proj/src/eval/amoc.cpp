#include "eval/amoc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::eval {

void validate_trace(const PosteriorTrace& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].p_release < 0.0 || trace[i].p_release > 1.0 ||
            std::isnan(trace[i].p_release))
            fail(ErrorCode::InvalidArgument, "posterior outside [0, 1] in trace");
        if (i > 0 && trace[i].time <= trace[i - 1].time)
            fail(ErrorCode::UnsortedInput, "trace timestamps must strictly increase");
    }
}

double detection_time(const PosteriorTrace& trace, UtcTime release_time, double threshold) {
    validate_trace(trace);
    UtcTime horizon = release_time.plus_hours(static_cast<std::int64_t>(kDetectionCapHours));
    if (trace.empty() || trace.front().time > release_time || trace.back().time < horizon)
        fail(ErrorCode::InsufficientCoverage,
             "trace does not cover the release-to-horizon window");
    for (const auto& p : trace) {
        if (p.time < release_time) continue;
        if (p.time > horizon) break;
        if (p.p_release > threshold) return p.time.hours_since(release_time);
    }
    return kDetectionCapHours;
}

double false_positive_rate(const PosteriorTrace& trace, double threshold, UtcTime window_start,
                           UtcTime window_end) {
    validate_trace(trace);
    std::int64_t monitored = 0, exceeded = 0;
    for (const auto& p : trace) {
        if (p.time < window_start || p.time >= window_end) continue;
        ++monitored;
        if (p.p_release > threshold) ++exceeded;
    }
    if (monitored == 0) fail(ErrorCode::EmptyWindow, "no trace samples in the window");
    return static_cast<double>(exceeded) / static_cast<double>(monitored);
}

double ci_halfwidth(const std::vector<double>& detection_times) {
    std::size_t n = detection_times.size();
    if (n < 2) fail(ErrorCode::TooFewSamples, "confidence interval needs at least two samples");
    double mean = 0.0;
    for (double t : detection_times) mean += t;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double t : detection_times) ss += (t - mean) * (t - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

std::vector<AmocPoint> compute_amoc(
    const std::vector<std::pair<PosteriorTrace, UtcTime>>& traces) {
    if (traces.empty()) fail(ErrorCode::InvalidArgument, "no traces");
    std::set<double> values = {0.0, 1.0};
    for (const auto& [trace, release] : traces) {
        validate_trace(trace);
        for (const auto& p : trace) values.insert(p.p_release);
    }
    std::vector<AmocPoint> out;
    out.reserve(values.size());
    // Descending thresholds give non-decreasing false-positive rates, so the
    // curve comes out already ordered.
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        double threshold = *it;
        std::vector<double> times;
        times.reserve(traces.size());
        std::int64_t monitored = 0, exceeded = 0;
        for (const auto& [trace, release] : traces) {
            times.push_back(detection_time(trace, release, threshold));
            UtcTime window_end = release.plus_hours(24);
            for (const auto& p : trace) {
                if (p.time >= window_end) break;
                ++monitored;
                if (p.p_release > threshold) ++exceeded;
            }
        }
        AmocPoint point;
        point.threshold = threshold;
        point.fp_fraction =
            monitored == 0 ? 0.0
                           : static_cast<double>(exceeded) / static_cast<double>(monitored);
        point.fp_per_week = point.fp_fraction * 168.0;
        double mean = 0.0;
        for (double t : times) mean += t;
        point.mean_detection_hours = mean / static_cast<double>(times.size());
        point.ci_halfwidth_hours = times.size() >= 2 ? ci_halfwidth(times) : 0.0;
        out.push_back(point);
    }
    return out;
}

std::string serialize_amoc(const std::vector<AmocPoint>& points) {
    std::ostringstream out;
    out << "# detection_cap_hours=" << format_double(kDetectionCapHours)
        << " detection_floor_hours=" << format_double(kDetectionFloorHours) << "\n";
    out << "threshold,fp_fraction,fp_per_week,mean_detection_hours,ci_halfwidth_hours\n";
    for (const auto& p : points)
        out << format_double(p.threshold) << ',' << format_double(p.fp_fraction) << ','
            << format_double(p.fp_per_week) << ',' << format_double(p.mean_detection_hours)
            << ',' << format_double(p.ci_halfwidth_hours) << "\n";
    return out.str();
}

std::vector<AmocPoint> parse_amoc(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<AmocPoint> out;
    bool saw_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (!saw_header) {
            if (t != "threshold,fp_fraction,fp_per_week,mean_detection_hours,ci_halfwidth_hours")
                fail(ErrorCode::ParseError,
                     "line " + std::to_string(line_no) + ": unexpected curve header");
            saw_header = true;
            continue;
        }
        auto fields = split_char(t, ',');
        if (fields.size() != 5)
            fail(ErrorCode::ParseError,
                 "line " + std::to_string(line_no) + ": expected 5 fields");
        AmocPoint p;
        p.threshold = parse_double(fields[0], "line " + std::to_string(line_no));
        p.fp_fraction = parse_double(fields[1], "line " + std::to_string(line_no));
        p.fp_per_week = parse_double(fields[2], "line " + std::to_string(line_no));
        p.mean_detection_hours = parse_double(fields[3], "line " + std::to_string(line_no));
        p.ci_halfwidth_hours = parse_double(fields[4], "line " + std::to_string(line_no));
        out.push_back(p);
    }
    if (!saw_header) fail(ErrorCode::ParseError, "missing curve header");
    return out;
}

}  // namespace bnsurv::eval
