#include "sim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "util/error.hpp"
#include "util/text.hpp"
#include "util/time.hpp"

namespace bnsurv::sim {

std::string serialize_scenario(const ReleaseScenario& s) {
    std::ostringstream out;
    out << "release_zip " << s.release_zip << "\n";
    out << "height_ft " << format_double(s.height_ft) << "\n";
    out << "amount " << format_double(s.amount) << "\n";
    out << "release_datetime " << format_time(s.release_time) << "\n";
    out << "wind_direction_deg " << format_double(s.wind_direction_deg) << "\n";
    out << "wind_speed_mph " << format_double(s.wind_speed_mph) << "\n";
    out << "stability_class " << stability_name(s.stability) << "\n";
    return out.str();
}

ReleaseScenario parse_scenario(const std::string& text) {
    ReleaseScenario s;
    bool saw_zip = false, saw_time = false;
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
                 "scenario line " + std::to_string(line_no) + ": expected 'key value'");
        const std::string& key = fields[0];
        const std::string& val = fields[1];
        if (key == "release_zip") {
            s.release_zip = val;
            saw_zip = true;
        } else if (key == "height_ft") {
            s.height_ft = parse_double(val, key);
        } else if (key == "amount") {
            s.amount = parse_double(val, key);
        } else if (key == "release_datetime") {
            s.release_time = parse_time(val);
            saw_time = true;
        } else if (key == "wind_direction_deg") {
            s.wind_direction_deg = parse_double(val, key);
        } else if (key == "wind_speed_mph") {
            s.wind_speed_mph = parse_double(val, key);
        } else if (key == "stability_class") {
            s.stability = stability_from_name(val);
        } else {
            fail(ErrorCode::ParseError,
                 "scenario line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (!saw_zip) fail(ErrorCode::ParseError, "scenario is missing release_zip");
    if (!saw_time) fail(ErrorCode::ParseError, "scenario is missing release_datetime");
    validate_scenario(s);
    return s;
}

ReleaseScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void save_scenario(const std::string& path, const ReleaseScenario& s) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << serialize_scenario(s);
    if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

std::vector<WeatherRow> load_weather(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "date,wind_direction,wind_speed,stability_class")
        fail(ErrorCode::ParseError,
             path + ": expected header date,wind_direction,wind_speed,stability_class");
    std::vector<WeatherRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_char(line, ',');
        if (fields.size() != 4)
            fail(ErrorCode::ParseError, path + " line " + std::to_string(line_no) +
                                            ": expected 4 fields, got " +
                                            std::to_string(fields.size()));
        WeatherRow r;
        r.date = parse_time(fields[0]);
        r.wind_direction_deg = parse_double(fields[1], path + " line " + std::to_string(line_no));
        r.wind_speed_mph = parse_double(fields[2], path + " line " + std::to_string(line_no));
        r.stability = stability_from_name(fields[3]);
        if (r.wind_direction_deg < 0.0 || r.wind_direction_deg >= 360.0 ||
            !(r.wind_speed_mph > 0.0))
            fail(ErrorCode::ParseError,
                 path + " line " + std::to_string(line_no) + ": wind out of range");
        rows.push_back(r);
    }
    if (rows.empty()) fail(ErrorCode::ParseError, path + ": no weather rows");
    return rows;
}

void write_weather(const std::string& path, const std::vector<WeatherRow>& rows) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << "date,wind_direction,wind_speed,stability_class\n";
    for (const auto& r : rows)
        out << format_time(r.date) << ',' << format_double(r.wind_direction_deg) << ','
            << format_double(r.wind_speed_mph) << ',' << stability_name(r.stability) << "\n";
    if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

const WeatherRow& sample_weather(const std::vector<WeatherRow>& rows, Rng& rng) {
    if (rows.empty()) fail(ErrorCode::InvalidArgument, "empty weather table");
    return rows[rng.below(rows.size())];
}

}  // namespace bnsurv::sim
