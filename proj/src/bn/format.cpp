#include "bn/format.hpp"

#include <ostream>
#include <sstream>

#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::bn {

using bnsurv::format_double;
using bnsurv::parse_double;
using bnsurv::split_ws;
using bnsurv::trim;

void serialize_sections(std::ostream& os, const std::vector<VariableSpec>& vars,
                        const std::vector<CptSpec>& cpts) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        os << "variable " << vars[i].name << "\n";
        os << "states";
        for (const auto& s : vars[i].states) os << ' ' << s;
        os << "\nparents";
        const CptSpec* spec = nullptr;
        for (const auto& c : cpts)
            if (c.child == vars[i].name) spec = &c;
        if (!spec) fail(ErrorCode::Internal, "no cpt for '" + vars[i].name + "' while serializing");
        for (const auto& p : spec->parents) os << ' ' << p;
        os << "\n";
        for (const auto& row : spec->rows) {
            os << "row";
            for (double v : row) os << ' ' << format_double(v);
            os << "\n";
        }
    }
}

std::string serialize_network(const Network& net) {
    std::vector<VariableSpec> vars = net.variables;
    std::vector<CptSpec> cpts;
    for (int v = 0; v < net.size(); ++v) {
        CptSpec spec;
        spec.child = net.variables[v].name;
        for (int p : net.parents[v]) spec.parents.push_back(net.variables[p].name);
        const Factor& f = net.cpts[v];
        std::size_t width = net.variables[v].states.size();
        std::size_t rows = f.values.size() / width;
        spec.rows.assign(rows, std::vector<double>(width));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t s = 0; s < width; ++s) spec.rows[r][s] = f.values[s * rows + r];
        cpts.push_back(std::move(spec));
    }
    std::ostringstream os;
    serialize_sections(os, vars, cpts);
    return os.str();
}

void parse_section_line(const std::string& line, int line_no,
                        std::vector<VariableSpec>& vars, std::vector<CptSpec>& cpts) {
    auto tokens = split_ws(line);
    const std::string& key = tokens[0];
    auto where = [&] { return " at line " + std::to_string(line_no); };
    if (key == "variable") {
        if (tokens.size() != 2)
            fail(ErrorCode::ParseError, "'variable' needs exactly one name" + where());
        vars.push_back({tokens[1], {}});
        cpts.push_back({tokens[1], {}, {}});
        return;
    }
    if (vars.empty())
        fail(ErrorCode::ParseError, "'" + key + "' before any 'variable'" + where());
    if (key == "states") {
        vars.back().states.assign(tokens.begin() + 1, tokens.end());
    } else if (key == "parents") {
        cpts.back().parents.assign(tokens.begin() + 1, tokens.end());
    } else if (key == "row") {
        std::vector<double> row;
        for (std::size_t i = 1; i < tokens.size(); ++i)
            row.push_back(parse_double(tokens[i], "row value" + where()));
        cpts.back().rows.push_back(std::move(row));
    } else {
        fail(ErrorCode::ParseError, "unknown directive '" + key + "'" + where());
    }
}

Network parse_network(const std::string& text) {
    std::vector<VariableSpec> vars;
    std::vector<CptSpec> cpts;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        parse_section_line(line, line_no, vars, cpts);
    }
    return build_network(vars, cpts);
}

}  // namespace bnsurv::bn
