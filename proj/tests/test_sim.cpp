#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "model/params.hpp"
#include "model/person.hpp"
#include "sim/generate.hpp"
#include "sim/plume.hpp"
#include "sim/scenario.hpp"
#include "spatial/exposure.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/time.hpp"

using namespace bnsurv;
using namespace bnsurv::sim;

namespace {

constexpr double kMilesPerDegree = 3958.7613 * 3.141592653589793 / 180.0;

void check_close(double got, double want, double rel) {
    if (want == 0.0) {
        CHECK(std::abs(got) < 1e-300);
    } else {
        CHECK(std::abs(got - want) <= rel * std::abs(want));
    }
}

spatial::ZipCentroid offset_miles(const spatial::ZipCentroid& from, const std::string& zip,
                                  double east, double north) {
    double lat = from.lat + north / kMilesPerDegree;
    double lon = from.lon + east / (kMilesPerDegree * std::cos(from.lat * 3.141592653589793 / 180.0));
    return {zip, lat, lon};
}

ReleaseScenario base_scenario() {
    ReleaseScenario s;
    s.release_zip = "origin";
    s.height_ft = 0.0;
    s.amount = 1.0;
    s.release_time = parse_time("2026-04-01T06:00:00Z");
    s.wind_direction_deg = 0.0;
    s.wind_speed_mph = 5.0;
    s.stability = Stability::D;
    return s;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

template <typename Fn>
void expect_error(ErrorCode code, Fn&& fn) {
    try {
        fn();
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("stability classes name round-trip") {
    for (int i = 0; i < 6; ++i) {
        auto s = static_cast<Stability>(i);
        CHECK(stability_from_name(stability_name(s)) == s);
    }
    expect_error(ErrorCode::ParseError, [] { stability_from_name("G"); });
    expect_error(ErrorCode::ParseError, [] { stability_from_name("AA"); });
}

TEST_CASE("plume concentration spot values") {
    // frozen from an independent evaluation of the documented formula
    auto s = base_scenario();
    check_close(plume_concentration_at(s, 3.0, 0.0), 4.93018124887275182e-06, 1e-12);
    check_close(plume_concentration_at(s, 3.0, 1.0), 2.55543840841245869e-13, 1e-12);
    s.height_ft = 500.0;
    check_close(plume_concentration_at(s, 3.0, 0.0), 1.68354028576227076e-06, 1e-12);
    s.height_ft = 0.0;
    s.stability = Stability::A;
    check_close(plume_concentration_at(s, 3.0, 0.0), 1.74752823966965748e-08, 1e-12);
    s = base_scenario();
    s.stability = Stability::F;
    s.wind_speed_mph = 10.0;
    s.height_ft = 300.0;
    s.amount = 2.0;
    check_close(plume_concentration_at(s, 6.0, 0.5), 2.74727606183509692e-08, 1e-12);
}

TEST_CASE("plume shape properties") {
    auto s = base_scenario();
    CHECK(plume_concentration_at(s, 0.0, 0.0) == 0.0);
    CHECK(plume_concentration_at(s, -1.0, 0.0) == 0.0);

    // symmetric and decreasing off-axis
    CHECK(plume_concentration_at(s, 3.0, 0.7) == plume_concentration_at(s, 3.0, -0.7));
    double prev = plume_concentration_at(s, 3.0, 0.0);
    for (double cross : {0.2, 0.5, 1.0, 2.0}) {
        double c = plume_concentration_at(s, 3.0, cross);
        CHECK(c < prev);
        prev = c;
    }

    // decreasing with release height
    prev = plume_concentration_at(s, 3.0, 0.0);
    for (double h : {100.0, 400.0, 1200.0}) {
        s.height_ft = h;
        double c = plume_concentration_at(s, 3.0, 0.0);
        CHECK(c < prev);
        prev = c;
    }
    s.height_ft = 0.0;

    // ground-level centerline falls off with distance
    prev = plume_concentration_at(s, 1.0, 0.0);
    for (double x : {2.0, 4.0, 8.0, 16.0}) {
        double c = plume_concentration_at(s, x, 0.0);
        CHECK(c < prev);
        prev = c;
    }

    // linear in amount, inverse in wind speed
    s.amount = 3.0;
    check_close(plume_concentration_at(s, 3.0, 0.4),
                3.0 * plume_concentration_at(base_scenario(), 3.0, 0.4), 1e-12);
    s.amount = 1.0;
    s.wind_speed_mph = 10.0;
    check_close(plume_concentration_at(s, 3.0, 0.4),
                0.5 * plume_concentration_at(base_scenario(), 3.0, 0.4), 1e-12);
}

TEST_CASE("plume geometry against centroids") {
    spatial::ZipCentroid origin{"origin", 40.44, -80.0};
    auto north3 = offset_miles(origin, "north3", 0.0, 3.0);
    auto south3 = offset_miles(origin, "south3", 0.0, -3.0);
    auto east3 = offset_miles(origin, "east3", 3.0, 0.0);
    spatial::CentroidMap map({origin, north3, south3, east3});
    auto s = base_scenario();

    // wind toward north: the zip 3 miles north sits on the centerline
    check_close(plume_concentration(s, map, north3), plume_concentration_at(s, 3.0, 0.0), 1e-9);
    CHECK(plume_concentration(s, map, south3) == 0.0);  // upwind
    CHECK(plume_concentration(s, map, origin) == 0.0);  // the source itself
    CHECK(plume_concentration(s, map, east3) == 0.0);   // pure crosswind, no downwind travel

    s.wind_direction_deg = 90.0;
    check_close(plume_concentration(s, map, east3), plume_concentration_at(s, 3.0, 0.0), 1e-9);
    CHECK(plume_concentration(s, map, north3) < plume_concentration(s, map, east3));

    s.release_zip = "nowhere";
    expect_error(ErrorCode::MissingCentroid, [&] { plume_concentration(s, map, north3); });
}

TEST_CASE("nearest compass angle") {
    CHECK(nearest_angle(0.0) == 0);
    CHECK(nearest_angle(22.4) == 0);
    CHECK(nearest_angle(22.6) == 1);
    CHECK(nearest_angle(45.0) == 1);
    CHECK(nearest_angle(90.0) == 2);
    CHECK(nearest_angle(180.0) == 4);
    CHECK(nearest_angle(315.0) == 7);
    CHECK(nearest_angle(359.0) == 0);
    CHECK(nearest_angle(-45.0) == 7);
    CHECK(nearest_angle(405.0) == 1);
}

TEST_CASE("scenario validation") {
    auto ok = base_scenario();
    validate_scenario(ok);
    ok.amount = 0.0;
    validate_scenario(ok);  // a null release is a legal control scenario

    auto bad = base_scenario();
    bad.release_zip.clear();
    expect_error(ErrorCode::InvalidArgument, [&] { validate_scenario(bad); });
    bad = base_scenario();
    bad.amount = -0.5;
    expect_error(ErrorCode::InvalidArgument, [&] { validate_scenario(bad); });
    bad = base_scenario();
    bad.height_ft = -1.0;
    expect_error(ErrorCode::InvalidArgument, [&] { validate_scenario(bad); });
    bad = base_scenario();
    bad.wind_speed_mph = 0.0;
    expect_error(ErrorCode::InvalidArgument, [&] { validate_scenario(bad); });
    bad = base_scenario();
    bad.wind_direction_deg = 360.0;
    expect_error(ErrorCode::InvalidArgument, [&] { validate_scenario(bad); });
}

TEST_CASE("scenario file round-trips bit-exactly") {
    ReleaseScenario s;
    s.release_zip = "15213";
    s.height_ft = 723.4567890123456;
    s.amount = 0.30000000000000004;  // 0.1 + 0.2
    s.release_time = parse_time("2026-03-15T13:45:10Z");
    s.wind_direction_deg = 359.99;
    s.wind_speed_mph = 7.125;
    s.stability = Stability::E;

    ReleaseScenario back = parse_scenario(serialize_scenario(s));
    CHECK(back.release_zip == s.release_zip);
    CHECK(back.height_ft == s.height_ft);
    CHECK(back.amount == s.amount);
    CHECK(back.release_time == s.release_time);
    CHECK(back.wind_direction_deg == s.wind_direction_deg);
    CHECK(back.wind_speed_mph == s.wind_speed_mph);
    CHECK(back.stability == s.stability);

    std::string path = temp_path("bnsurv_scenario_roundtrip.scenario");
    save_scenario(path, s);
    ReleaseScenario loaded = load_scenario(path);
    CHECK(loaded.amount == s.amount);
    CHECK(loaded.release_time == s.release_time);
    std::filesystem::remove(path);
}

TEST_CASE("scenario parsing accepts comments and rejects junk") {
    ReleaseScenario s = parse_scenario(
        "# drill input\n"
        "release_zip 15213  # the point of release\n"
        "\n"
        "release_datetime 2026-03-15T06:00:00Z\n");
    CHECK(s.release_zip == "15213");
    CHECK(s.amount == 1.0);  // defaults hold for omitted keys

    expect_error(ErrorCode::ParseError,
                 [] { parse_scenario("release_datetime 2026-03-15T06:00:00Z\n"); });
    expect_error(ErrorCode::ParseError, [] { parse_scenario("release_zip 15213\n"); });
    expect_error(ErrorCode::ParseError, [] {
        parse_scenario("release_zip 15213\nrelease_datetime 2026-03-15T06:00:00Z\nbogus 1\n");
    });
    expect_error(ErrorCode::ParseError, [] {
        parse_scenario("release_zip 15213 extra\nrelease_datetime 2026-03-15T06:00:00Z\n");
    });
}

TEST_CASE("weather table io and sampling") {
    std::vector<WeatherRow> rows = {
        {parse_time("2026-03-01"), 45.0, 8.5, Stability::C},
        {parse_time("2026-03-02"), 317.25, 3.0, Stability::D},
        {parse_time("2026-03-03"), 0.0, 12.75, Stability::F},
    };
    std::string path = temp_path("bnsurv_weather_roundtrip.csv");
    write_weather(path, rows);
    auto back = load_weather(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].date == rows[i].date);
        CHECK(back[i].wind_direction_deg == rows[i].wind_direction_deg);
        CHECK(back[i].wind_speed_mph == rows[i].wind_speed_mph);
        CHECK(back[i].stability == rows[i].stability);
    }
    std::filesystem::remove(path);

    Rng rng(5);
    std::vector<int> hits(rows.size(), 0);
    for (int i = 0; i < 3000; ++i) {
        const WeatherRow& w = sample_weather(rows, rng);
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (&w == &rows[k]) ++hits[static_cast<std::size_t>(k)];
    }
    for (int h : hits) CHECK(h > 800);  // roughly uniform across rows

    std::vector<WeatherRow> none;
    expect_error(ErrorCode::InvalidArgument, [&] { Rng r(1); sample_weather(none, r); });
}

TEST_CASE("weather file validation") {
    std::string path = temp_path("bnsurv_weather_bad.csv");
    auto write_file = [&](const std::string& text) {
        std::ofstream out(path);
        out << text;
    };
    write_file("not,the,right,header\n");
    expect_error(ErrorCode::ParseError, [&] { load_weather(path); });
    write_file("date,wind_direction,wind_speed,stability_class\n");
    expect_error(ErrorCode::ParseError, [&] { load_weather(path); });
    write_file("date,wind_direction,wind_speed,stability_class\n2026-03-01,400,5,D\n");
    expect_error(ErrorCode::ParseError, [&] { load_weather(path); });
    write_file("date,wind_direction,wind_speed,stability_class\n2026-03-01,45,0,D\n");
    expect_error(ErrorCode::ParseError, [&] { load_weather(path); });
    write_file("date,wind_direction,wind_speed,stability_class\n2026-03-01,45,5,Q\n");
    expect_error(ErrorCode::ParseError, [&] { load_weather(path); });
    std::filesystem::remove(path);
}

TEST_CASE("population aggregation by zip") {
    auto params = model::default_params({"z1", "z2", "other"}, model::Variant::NonSpatial);
    std::vector<model::CensusCell> census = {
        {0, 0, 0, 100}, {0, 1, 1, 50}, {2, 0, 0, 25}, {0, 2, 0, 10}};
    auto pops = population_by_zip(params, census);
    REQUIRE(pops.size() == 3);
    CHECK(pops[0].zip == "z1");
    CHECK(pops[0].count == 160);
    CHECK(pops[1].count == 0);
    CHECK(pops[2].count == 25);

    expect_error(ErrorCode::InvalidArgument,
                 [&] { population_by_zip(params, {{7, 0, 0, 1}}); });
    expect_error(ErrorCode::NegativeCount,
                 [&] { population_by_zip(params, {{0, 0, 0, -2}}); });
}

TEST_CASE("outbreak generation follows the plume") {
    spatial::ZipCentroid origin{"origin", 40.44, -80.0};
    auto north3 = offset_miles(origin, "north3", 0.0, 3.0);
    auto south3 = offset_miles(origin, "south3", 0.0, -3.0);
    spatial::CentroidMap map({origin, north3, south3});
    std::vector<ZipPopulation> pops = {{"origin", 40}, {"north3", 50}, {"south3", 60}};

    auto s = base_scenario();
    SimParams sp;
    sp.dose_k = 1.0e9;  // saturating dose downwind

    Rng rng(77);
    auto cases = generate_outbreak(s, pops, map, sp, rng);
    CHECK(cases.size() == 50);  // everyone downwind, nobody else
    UtcTime floor = s.release_time.plus_hours(24);
    for (const auto& c : cases) {
        CHECK(c.zip == "north3");
        CHECK(c.respiratory);
        CHECK(c.time >= floor);
    }
    CHECK(std::is_sorted(cases.begin(), cases.end(),
                         [](const SimCase& a, const SimCase& b) { return a.time.seconds < b.time.seconds; }));

    Rng r1(123), r2(123), r3(124);
    auto a = generate_outbreak(s, pops, map, sp, r1);
    auto b = generate_outbreak(s, pops, map, sp, r2);
    auto c = generate_outbreak(s, pops, map, sp, r3);
    CHECK(a == b);
    CHECK(a != c);

    s.amount = 0.0;
    Rng r4(1);
    CHECK(generate_outbreak(s, pops, map, sp, r4).empty());
}

TEST_CASE("arrival delay shrinks with concentration") {
    spatial::ZipCentroid origin{"origin", 40.44, -80.0};
    auto north3 = offset_miles(origin, "north3", 0.0, 3.0);
    spatial::CentroidMap map({origin, north3});
    std::vector<ZipPopulation> pops = {{"north3", 10000}};
    UtcTime floor = base_scenario().release_time.plus_hours(24);

    auto mean_arrival_hours = [&](double amount, double dose_k, std::uint64_t seed) {
        auto s = base_scenario();
        s.amount = amount;
        SimParams sp;
        sp.dose_k = dose_k;
        Rng rng(seed);
        auto cases = generate_outbreak(s, pops, map, sp, rng);
        REQUIRE(cases.size() > 1000);
        double sum = 0.0;
        for (const auto& c : cases) sum += c.time.hours_since(floor);
        return sum / static_cast<double>(cases.size());
    };

    // high dose: delay mean near its 10 h floor; trace dose: near 10 + 70 h
    double fast = mean_arrival_hours(1.0e6, 5.0e4, 31);
    double slow = mean_arrival_hours(2.0e-7, 1.0e12, 32);
    CHECK(fast < 15.0);
    CHECK(slow > 70.0);
}

TEST_CASE("case completion fills demographics from the model") {
    auto params = model::default_params({"z1", "other"}, model::Variant::NonSpatial);
    auto m = model::build_person_model(params, model::Variant::NonSpatial);
    std::vector<SimCase> cases(200);
    for (auto& c : cases) {
        c.time = parse_time("2026-04-02T12:00:00Z");
        c.zip = "z1";
    }
    auto copy = cases;
    Rng r1(9), r2(9);
    complete_cases(cases, m, r1);
    complete_cases(copy, m, r2);
    CHECK(cases == copy);
    for (const auto& c : cases) {
        CHECK(c.age >= 0);
        CHECK(c.age < params.age_deciles);
        CHECK((c.gender == 0 || c.gender == 1));
        CHECK(c.respiratory);
    }
}

TEST_CASE("background stream tracks the admission rate") {
    auto params = model::default_params({"z1", "z2", "other"}, model::Variant::NonSpatial);
    std::vector<model::CensusCell> census;
    // 1.4M people spread over a few cells
    census.push_back({0, 0, 0, 400000});
    census.push_back({0, 3, 1, 300000});
    census.push_back({1, 5, 0, 350000});
    census.push_back({2, 7, 1, 350000});
    UtcTime start = parse_time("2026-04-01T00:00:00Z");
    UtcTime end = start.plus_hours(48);

    Rng rng(55);
    auto cases = generate_background(params, census, start, end, rng);

    // lagged incidence: 1.4e6 * 4.6916e-4 * 0.95 = 624 admissions/day
    double expected = 1.4e6 * params.incidence_per_person_day *
                      (params.other_adm_lag[0] + params.other_adm_lag[1] + params.other_adm_lag[2]) *
                      2.0;
    CHECK(std::abs(static_cast<double>(cases.size()) - expected) < 5.0 * std::sqrt(expected));

    std::size_t resp = 0;
    for (const auto& c : cases) {
        CHECK(c.time >= start);
        CHECK(c.time < end);
        CHECK((c.zip == "z1" || c.zip == "z2" || c.zip == "other"));
        if (c.respiratory) ++resp;
    }
    double resp_frac = static_cast<double>(resp) / static_cast<double>(cases.size());
    CHECK(std::abs(resp_frac - params.resp_given_other) < 0.05);
    CHECK(std::is_sorted(cases.begin(), cases.end(), [](const SimCase& a, const SimCase& b) {
        return a.time.seconds < b.time.seconds;
    }));

    Rng r1(7), r2(7);
    auto d1 = generate_background(params, census, start, start.plus_hours(6), r1);
    auto d2 = generate_background(params, census, start, start.plus_hours(6), r2);
    CHECK(d1 == d2);

    expect_error(ErrorCode::InvalidArgument,
                 [&] { Rng r(1); generate_background(params, census, end, start, r); });
}

TEST_CASE("incidence factors steer background demographics") {
    auto params = model::default_params({"z1", "other"}, model::Variant::NonSpatial);
    params.incidence_age_factor.assign(static_cast<std::size_t>(params.age_deciles), 1.0);
    params.incidence_age_factor[1] = 0.0;
    std::vector<model::CensusCell> census = {{0, 0, 0, 500000}, {0, 1, 0, 500000}};
    Rng rng(66);
    auto cases = generate_background(params, census, parse_time("2026-04-01"),
                                     parse_time("2026-04-03"), rng);
    CHECK(cases.size() > 100);
    for (const auto& c : cases) CHECK(c.age == 0);
}

TEST_CASE("injection merges sorted streams, background first on ties") {
    UtcTime t0 = parse_time("2026-04-01T10:00:00Z");
    std::vector<SimCase> bg = {{t0, "a", 0, 0, false}, {t0.plus_hours(2), "b", 0, 0, false}};
    std::vector<SimCase> ob = {{t0, "x", 0, 0, true}, {t0.plus_hours(1), "y", 0, 0, true}};
    auto merged = inject(bg, ob);
    REQUIRE(merged.size() == 4);
    CHECK(merged[0].zip == "a");
    CHECK(merged[1].zip == "x");
    CHECK(merged[2].zip == "y");
    CHECK(merged[3].zip == "b");

    CHECK(inject({}, ob) == ob);
    CHECK(inject(bg, {}) == bg);

    std::vector<SimCase> unsorted = {{t0.plus_hours(1), "u", 0, 0, false}, {t0, "v", 0, 0, false}};
    expect_error(ErrorCode::UnsortedInput, [&] { inject(unsorted, ob); });
    expect_error(ErrorCode::UnsortedInput, [&] { inject(bg, unsorted); });
}
