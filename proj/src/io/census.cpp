#include "io/census.hpp"

#include <fstream>
#include <map>

#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::io {

std::vector<model::CensusCell> parse_census(const std::string& path,
                                            const model::PersonModelParams& params,
                                            std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "zip,age_decile,gender,count")
        fail(ErrorCode::ParseError, path + ": expected header zip,age_decile,gender,count");
    std::map<std::tuple<int, int, int>, std::int64_t> merged;
    std::map<std::tuple<int, int, int>, int> first_line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::string where = path + " line " + std::to_string(line_no);
        auto fields = split_char(line, ',');
        if (fields.size() != 4)
            fail(ErrorCode::ParseError,
                 where + ": expected 4 fields, got " + std::to_string(fields.size()));
        int zip = params.zip_index(fields[0]);
        if (zip < 0) fail(ErrorCode::UnknownZip, where + ": zip '" + fields[0] + "'");
        std::int64_t age = parse_int(fields[1], where);
        if (age < 0 || age >= params.age_deciles)
            fail(ErrorCode::ParseError, where + ": age decile out of range");
        int gender;
        if (fields[2] == "female")
            gender = 0;
        else if (fields[2] == "male")
            gender = 1;
        else
            fail(ErrorCode::ParseError, where + ": gender must be female or male");
        std::int64_t count = parse_int(fields[3], where);
        if (count < 0) fail(ErrorCode::ParseError, where + ": negative count");
        auto cell = std::make_tuple(static_cast<int>(zip), static_cast<int>(age), gender);
        auto [it, inserted] = merged.emplace(cell, count);
        if (!inserted) {
            it->second += count;
            if (warnings)
                warnings->push_back(where + ": duplicate cell for " + fields[0] + "/" +
                                    fields[1] + "/" + fields[2] + ", counts summed (first at line " +
                                    std::to_string(first_line[cell]) + ")");
        } else {
            first_line[cell] = line_no;
        }
    }
    std::vector<model::CensusCell> out;
    out.reserve(merged.size());
    for (const auto& [cell, count] : merged)
        out.push_back({std::get<0>(cell), std::get<1>(cell), std::get<2>(cell), count});
    return out;
}

void write_census(const std::string& path, const model::PersonModelParams& params,
                  const std::vector<model::CensusCell>& cells) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << "zip,age_decile,gender,count\n";
    for (const auto& c : cells)
        out << params.zips[c.zip] << ',' << c.age << ',' << (c.gender == 0 ? "female" : "male")
            << ',' << c.count << "\n";
    if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

std::uint64_t census_total(const std::vector<model::CensusCell>& cells) {
    std::uint64_t total = 0;
    for (const auto& c : cells) total += static_cast<std::uint64_t>(c.count);
    return total;
}

}  // namespace bnsurv::io
