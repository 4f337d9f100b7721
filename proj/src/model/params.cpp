#include "model/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "bn/format.hpp"
#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::model {

const char* variant_name(Variant v) {
    return v == Variant::Spatial ? "spatial" : "nonspatial";
}

Variant variant_from_name(const std::string& name) {
    if (name == "spatial") return Variant::Spatial;
    if (name == "nonspatial") return Variant::NonSpatial;
    fail(ErrorCode::InvalidArgument, "unknown variant '" + name + "'");
}

int PersonModelParams::zip_index(const std::string& zip) const {
    for (std::size_t i = 0; i < zips.size(); ++i)
        if (zips[i] == zip) return static_cast<int>(i);
    return -1;
}

namespace {

void check_dist(const std::vector<double>& v, std::size_t n, const std::string& what) {
    if (v.size() != n)
        fail(ErrorCode::CardinalityMismatch,
             what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
    double sum = 0.0;
    for (double x : v) {
        if (x < 0.0) fail(ErrorCode::RowNotNormalized, what + " has a negative entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        fail(ErrorCode::RowNotNormalized, what + " sums to " + std::to_string(sum));
}

void check_lag(const std::array<double, 3>& lag, const std::string& what) {
    double sum = 0.0;
    for (double x : lag) {
        if (x < 0.0) fail(ErrorCode::InvalidArgument, what + " has a negative entry");
        sum += x;
    }
    if (sum > 1.0 + 1e-9) fail(ErrorCode::InvalidArgument, what + " sums above 1");
}

std::vector<double> to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::vector<double> to_vec8(const std::array<double, 8>& a) {
    return std::vector<double>(a.begin(), a.end());
}

}  // namespace

void validate_params(const PersonModelParams& p) {
    if (p.zips.empty()) fail(ErrorCode::InvalidArgument, "zip list is empty");
    std::unordered_set<std::string> seen;
    for (const auto& z : p.zips)
        if (!seen.insert(z).second) fail(ErrorCode::InvalidArgument, "duplicate zip " + z);
    if (p.age_deciles < 2)
        fail(ErrorCode::InvalidArgument, "age_deciles must be at least 2");
    const std::size_t nz = p.zips.size();
    check_dist(p.zip_prior, nz, "home zip prior");
    if (p.age_given_zip.size() != nz)
        fail(ErrorCode::CardinalityMismatch, "age table needs one row per zip");
    for (std::size_t z = 0; z < nz; ++z)
        check_dist(p.age_given_zip[z], p.age_deciles, "age distribution for zip " + p.zips[z]);
    if (p.gender_given_zip.size() != nz)
        fail(ErrorCode::CardinalityMismatch, "gender table needs one row per zip");
    for (std::size_t z = 0; z < nz; ++z)
        check_dist(p.gender_given_zip[z], 2, "gender distribution for zip " + p.zips[z]);

    if (p.incidence_per_person_day < 0.0 || p.incidence_per_person_day > 1.0 / 3.0)
        fail(ErrorCode::InvalidArgument, "incidence_per_person_day out of range");
    if (p.resp_given_other < 0.0 || p.resp_given_other > 1.0)
        fail(ErrorCode::InvalidArgument, "resp_given_other out of range");
    if (p.attack_rate < 0.0 || p.attack_rate > 1.0)
        fail(ErrorCode::InvalidArgument, "attack_rate out of range");
    if (!p.incidence_age_factor.empty() &&
        p.incidence_age_factor.size() != static_cast<std::size_t>(p.age_deciles))
        fail(ErrorCode::CardinalityMismatch, "incidence_age_factor length must equal age_deciles");
    double max_factor = 1.0;
    for (double f : p.incidence_age_factor) {
        if (f < 0.0) fail(ErrorCode::InvalidArgument, "negative incidence_age_factor");
        max_factor = std::max(max_factor, f);
    }
    for (double f : p.incidence_gender_factor) {
        if (f < 0.0) fail(ErrorCode::InvalidArgument, "negative incidence_gender_factor");
        max_factor = std::max(max_factor, f);
    }
    if (3.0 * p.incidence_per_person_day * max_factor > 1.0)
        fail(ErrorCode::InvalidArgument, "incidence with factors exceeds a valid distribution");
    check_lag(p.other_adm_lag, "other_adm_lag");
    check_lag(p.anthrax_resp_lag, "anthrax_resp_lag");
    check_lag(p.anthrax_adm_lag, "anthrax_adm_lag");
    if (p.exposure.half_distance <= 0.0 || p.exposure.rect_width <= 0.0)
        fail(ErrorCode::InvalidArgument, "exposure distances must be positive");

    if (p.priors.p_release < 0.0 || p.priors.p_release > 1.0)
        fail(ErrorCode::InvalidArgument, "release prior out of range");
    check_dist(to_vec(p.priors.time_given_release), 3, "time prior");
    check_dist(p.priors.location_given_release, nz, "location prior");
    check_dist(to_vec8(p.priors.angle_given_release), 8, "angle prior");

    if (!p.global_vars.empty()) {
        bool found = false;
        for (const auto& v : p.global_vars)
            if (v.name == "anthrax_release") {
                found = true;
                if (v.states != std::vector<std::string>{"no", "yes"})
                    fail(ErrorCode::InvalidArgument,
                         "global anthrax_release must have states 'no yes'");
            }
        if (!found)
            fail(ErrorCode::InvalidArgument, "global section lacks anthrax_release");
    }
}

std::string serialize_params(const PersonModelParams& p) {
    std::ostringstream os;
    os << "variant " << variant_name(p.variant) << "\n";
    os << "age_deciles " << p.age_deciles << "\n";
    os << "zips";
    for (const auto& z : p.zips) os << ' ' << z;
    os << "\n";
    auto param = [&](const char* key, std::initializer_list<double> vals) {
        os << "param " << key;
        for (double v : vals) os << ' ' << format_double(v);
        os << "\n";
    };
    param("incidence_per_person_day", {p.incidence_per_person_day});
    param("resp_given_other", {p.resp_given_other});
    param("attack_rate", {p.attack_rate});
    param("other_adm_lag", {p.other_adm_lag[0], p.other_adm_lag[1], p.other_adm_lag[2]});
    param("anthrax_resp_lag",
          {p.anthrax_resp_lag[0], p.anthrax_resp_lag[1], p.anthrax_resp_lag[2]});
    param("anthrax_adm_lag", {p.anthrax_adm_lag[0], p.anthrax_adm_lag[1], p.anthrax_adm_lag[2]});
    param("half_distance", {p.exposure.half_distance});
    param("rect_width", {p.exposure.rect_width});
    if (!p.incidence_age_factor.empty()) {
        os << "param incidence_age_factor";
        for (double f : p.incidence_age_factor) os << ' ' << format_double(f);
        os << "\n";
    }
    param("incidence_gender_factor",
          {p.incidence_gender_factor[0], p.incidence_gender_factor[1]});
    os << "prior release " << format_double(p.priors.p_release) << "\n";
    os << "prior time";
    for (double v : p.priors.time_given_release) os << ' ' << format_double(v);
    os << "\nprior location";
    for (double v : p.priors.location_given_release) os << ' ' << format_double(v);
    os << "\nprior angle";
    for (double v : p.priors.angle_given_release) os << ' ' << format_double(v);
    os << "\n";

    std::vector<bn::VariableSpec> vars;
    std::vector<bn::CptSpec> cpts;
    vars.push_back({"home_zip", p.zips});
    cpts.push_back({"home_zip", {}, {p.zip_prior}});
    std::vector<std::string> age_states;
    for (int a = 0; a < p.age_deciles; ++a) age_states.push_back("d" + std::to_string(a));
    vars.push_back({"age_decile", age_states});
    cpts.push_back({"age_decile", {"home_zip"}, p.age_given_zip});
    vars.push_back({"gender", {"female", "male"}});
    cpts.push_back({"gender", {"home_zip"}, p.gender_given_zip});
    bn::serialize_sections(os, vars, cpts);

    if (!p.global_vars.empty()) {
        os << "begin global\n";
        bn::serialize_sections(os, p.global_vars, p.global_cpts);
        os << "end global\n";
    }
    return os.str();
}

PersonModelParams parse_params(const std::string& text) {
    PersonModelParams p;
    p.incidence_age_factor.clear();
    std::vector<bn::VariableSpec> vars;
    std::vector<bn::CptSpec> cpts;
    bool in_global = false;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    bool saw_variant = false;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        auto tokens = split_ws(line);
        const std::string& key = tokens[0];
        std::string ctx = "parameter file line " + std::to_string(line_no);
        auto need = [&](std::size_t n) {
            if (tokens.size() != n + 1)
                fail(ErrorCode::ParseError, ctx + ": '" + key + "' needs " + std::to_string(n) +
                                                " value(s)");
        };
        if (key == "begin") {
            need(1);
            if (tokens[1] != "global") fail(ErrorCode::ParseError, ctx + ": unknown block");
            in_global = true;
        } else if (key == "end") {
            need(1);
            if (!in_global) fail(ErrorCode::ParseError, ctx + ": 'end' outside a block");
            in_global = false;
        } else if (in_global) {
            bn::parse_section_line(line, line_no, p.global_vars, p.global_cpts);
        } else if (key == "variant") {
            need(1);
            p.variant = variant_from_name(tokens[1]);
            saw_variant = true;
        } else if (key == "age_deciles") {
            need(1);
            p.age_deciles = static_cast<int>(parse_int(tokens[1], ctx));
        } else if (key == "zips") {
            p.zips.assign(tokens.begin() + 1, tokens.end());
        } else if (key == "param") {
            if (tokens.size() < 3) fail(ErrorCode::ParseError, ctx + ": 'param' needs values");
            std::vector<double> vals;
            for (std::size_t i = 2; i < tokens.size(); ++i)
                vals.push_back(parse_double(tokens[i], ctx));
            const std::string& name = tokens[1];
            auto one = [&]() -> double {
                if (vals.size() != 1) fail(ErrorCode::ParseError, ctx + ": expected one value");
                return vals[0];
            };
            auto three = [&](std::array<double, 3>& dst) {
                if (vals.size() != 3) fail(ErrorCode::ParseError, ctx + ": expected 3 values");
                std::copy(vals.begin(), vals.end(), dst.begin());
            };
            if (name == "incidence_per_person_day") p.incidence_per_person_day = one();
            else if (name == "resp_given_other") p.resp_given_other = one();
            else if (name == "attack_rate") p.attack_rate = one();
            else if (name == "other_adm_lag") three(p.other_adm_lag);
            else if (name == "anthrax_resp_lag") three(p.anthrax_resp_lag);
            else if (name == "anthrax_adm_lag") three(p.anthrax_adm_lag);
            else if (name == "half_distance") p.exposure.half_distance = one();
            else if (name == "rect_width") p.exposure.rect_width = one();
            else if (name == "incidence_age_factor") p.incidence_age_factor = vals;
            else if (name == "incidence_gender_factor") {
                if (vals.size() != 2) fail(ErrorCode::ParseError, ctx + ": expected 2 values");
                p.incidence_gender_factor = {vals[0], vals[1]};
            } else fail(ErrorCode::ParseError, ctx + ": unknown param '" + name + "'");
        } else if (key == "prior") {
            if (tokens.size() < 3) fail(ErrorCode::ParseError, ctx + ": 'prior' needs values");
            std::vector<double> vals;
            for (std::size_t i = 2; i < tokens.size(); ++i)
                vals.push_back(parse_double(tokens[i], ctx));
            const std::string& name = tokens[1];
            if (name == "release") {
                if (vals.size() != 1) fail(ErrorCode::ParseError, ctx + ": expected one value");
                p.priors.p_release = vals[0];
            } else if (name == "time") {
                if (vals.size() != 3) fail(ErrorCode::ParseError, ctx + ": expected 3 values");
                std::copy(vals.begin(), vals.end(), p.priors.time_given_release.begin());
            } else if (name == "location") {
                p.priors.location_given_release = vals;
            } else if (name == "angle") {
                if (vals.size() != 8) fail(ErrorCode::ParseError, ctx + ": expected 8 values");
                std::copy(vals.begin(), vals.end(), p.priors.angle_given_release.begin());
            } else fail(ErrorCode::ParseError, ctx + ": unknown prior '" + name + "'");
        } else if (key == "variable" || key == "states" || key == "parents" || key == "row") {
            bn::parse_section_line(line, line_no, vars, cpts);
        } else {
            fail(ErrorCode::ParseError, ctx + ": unknown directive '" + key + "'");
        }
    }
    if (in_global) fail(ErrorCode::ParseError, "unterminated global block");
    if (!saw_variant) fail(ErrorCode::ParseError, "parameter file lacks a 'variant' line");

    // Demographic tables arrive as bn-format sections.
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& v = vars[i];
        const auto& c = cpts[i];
        if (v.name == "home_zip") {
            if (v.states != p.zips)
                fail(ErrorCode::ParseError, "home_zip states must equal the zips line");
            if (!c.parents.empty() || c.rows.size() != 1)
                fail(ErrorCode::ParseError, "home_zip must be a root with one row");
            p.zip_prior = c.rows[0];
        } else if (v.name == "age_decile") {
            if (c.parents != std::vector<std::string>{"home_zip"})
                fail(ErrorCode::ParseError, "age_decile must have parent home_zip");
            p.age_given_zip = c.rows;
        } else if (v.name == "gender") {
            if (c.parents != std::vector<std::string>{"home_zip"})
                fail(ErrorCode::ParseError, "gender must have parent home_zip");
            if (v.states != std::vector<std::string>{"female", "male"})
                fail(ErrorCode::ParseError, "gender states must be 'female male'");
            p.gender_given_zip = c.rows;
        } else {
            fail(ErrorCode::ParseError, "unexpected table for variable '" + v.name + "'");
        }
    }
    validate_params(p);
    return p;
}

PersonModelParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open parameter file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str());
}

void save_params(const std::string& path, const PersonModelParams& p) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write parameter file " + path);
    out << serialize_params(p);
}

PersonModelParams default_params(const std::vector<std::string>& zips, Variant variant) {
    PersonModelParams p;
    p.variant = variant;
    p.zips = zips;
    const std::size_t nz = zips.size();
    p.zip_prior.assign(nz, 1.0 / static_cast<double>(nz));
    std::vector<double> age_row(p.age_deciles, 1.0 / p.age_deciles);
    p.age_given_zip.assign(nz, age_row);
    p.gender_given_zip.assign(nz, {0.5, 0.5});
    p.priors.location_given_release.assign(nz, 1.0 / static_cast<double>(nz));
    return p;
}

}  // namespace bnsurv::model
