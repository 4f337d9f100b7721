#include "io/stream.hpp"

#include <fstream>

#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::io {

std::vector<sim::SimCase> read_case_stream(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) != "timestamp,zip,age_decile,gender,respiratory")
        fail(ErrorCode::ParseError,
             path + ": expected header timestamp,zip,age_decile,gender,respiratory");
    std::vector<sim::SimCase> cases;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::string where = path + " line " + std::to_string(line_no);
        auto fields = split_char(line, ',');
        if (fields.size() != 5)
            fail(ErrorCode::ParseError,
                 where + ": expected 5 fields, got " + std::to_string(fields.size()));
        sim::SimCase c;
        c.time = parse_time(fields[0]);
        c.zip = fields[1];
        std::int64_t age = parse_int(fields[2], where);
        if (age < 0) fail(ErrorCode::ParseError, where + ": negative age decile");
        c.age = static_cast<int>(age);
        if (fields[3] == "female")
            c.gender = 0;
        else if (fields[3] == "male")
            c.gender = 1;
        else
            fail(ErrorCode::ParseError, where + ": gender must be female or male");
        if (fields[4] == "true")
            c.respiratory = true;
        else if (fields[4] == "false")
            c.respiratory = false;
        else
            fail(ErrorCode::ParseError, where + ": respiratory must be true or false");
        if (!cases.empty() && c.time < cases.back().time)
            fail(ErrorCode::UnsortedInput, where + ": timestamps must be non-decreasing");
        cases.push_back(std::move(c));
    }
    return cases;
}

void write_case_stream(const std::string& path, const std::vector<sim::SimCase>& cases) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << "timestamp,zip,age_decile,gender,respiratory\n";
    for (const auto& c : cases)
        out << format_time(c.time) << ',' << c.zip << ',' << c.age << ','
            << (c.gender == 0 ? "female" : "male") << ',' << (c.respiratory ? "true" : "false")
            << "\n";
    if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

std::vector<TraceRow> read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) !=
            "timestamp,p_release,log_lik_yes,log_lik_no,map_location,map_time,map_angle")
        fail(ErrorCode::ParseError, path + ": unexpected trace header");
    std::vector<TraceRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::string where = path + " line " + std::to_string(line_no);
        auto fields = split_char(line, ',');
        if (fields.size() != 7)
            fail(ErrorCode::ParseError,
                 where + ": expected 7 fields, got " + std::to_string(fields.size()));
        TraceRow r;
        r.time = parse_time(fields[0]);
        r.p_release = parse_double(fields[1], where);
        r.log_lik_yes = parse_double(fields[2], where);
        r.log_lik_no = parse_double(fields[3], where);
        r.map_location = fields[4];
        r.map_time = fields[5];
        r.map_angle = fields[6];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_trace(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << "timestamp,p_release,log_lik_yes,log_lik_no,map_location,map_time,map_angle\n";
    for (const auto& r : rows)
        out << format_time(r.time) << ',' << format_double(r.p_release) << ','
            << format_double(r.log_lik_yes) << ',' << format_double(r.log_lik_no) << ','
            << r.map_location << ',' << r.map_time << ',' << r.map_angle << "\n";
    if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

eval::PosteriorTrace to_posterior_trace(const std::vector<TraceRow>& rows) {
    eval::PosteriorTrace trace;
    trace.reserve(rows.size());
    for (const auto& r : rows) trace.push_back({r.time, r.p_release});
    return trace;
}

}  // namespace bnsurv::io
