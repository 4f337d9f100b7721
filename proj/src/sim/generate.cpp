#include "sim/generate.hpp"

#include <algorithm>
#include <cmath>

#include "util/error.hpp"

namespace bnsurv::sim {

std::vector<ZipPopulation> population_by_zip(const model::PersonModelParams& params,
                                             const std::vector<model::CensusCell>& census) {
    std::vector<ZipPopulation> out;
    out.reserve(params.zips.size());
    for (const auto& z : params.zips) out.push_back({z, 0});
    for (const auto& cell : census) {
        if (cell.zip < 0 || cell.zip >= static_cast<int>(out.size()))
            fail(ErrorCode::InvalidArgument, "census zip index out of range");
        if (cell.count < 0) fail(ErrorCode::NegativeCount, "negative census count");
        out[cell.zip].count += cell.count;
    }
    return out;
}

namespace {

double infection_probability(double concentration, const SimParams& sp) {
    return -std::expm1(-sp.dose_k * concentration);
}

double mean_delay_hours(double concentration, const SimParams& sp) {
    return sp.delay_mean_min_h + sp.delay_mean_scale_h / (1.0 + concentration / sp.delay_c_ref);
}

}  // namespace

ReleaseScenario sample_release(const spatial::CentroidMap& centroids,
                               const std::vector<ZipPopulation>& population,
                               const std::vector<WeatherRow>& weather, UtcTime release_time,
                               const SimParams& sp, Rng& rng) {
    std::vector<const ZipPopulation*> candidates;
    for (const auto& zp : population)
        if (centroids.find(zp.zip)) candidates.push_back(&zp);
    if (candidates.empty())
        fail(ErrorCode::InvalidArgument, "no release candidates have centroids");

    const WeatherRow& w = sample_weather(weather, rng);
    ReleaseScenario s;
    s.height_ft = rng.lognormal(std::log(sp.height_median_ft), sp.height_sigma);
    s.amount = 1.0;
    s.release_time = release_time;
    s.wind_direction_deg = w.wind_direction_deg;
    s.wind_speed_mph = w.wind_speed_mph;
    s.stability = w.stability;

    // Expected downwind infections at unit amount; uniform fallback when the
    // weather leaves every candidate scoring zero.
    std::vector<double> weights(candidates.size(), 0.0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        s.release_zip = candidates[i]->zip;
        double expected = 0.0;
        for (const auto& zp : population) {
            const spatial::ZipCentroid* c = centroids.find(zp.zip);
            if (!c || zp.count <= 0) continue;
            double conc = plume_concentration(s, centroids, *c);
            if (conc > 0.0)
                expected += static_cast<double>(zp.count) * infection_probability(conc, sp);
        }
        weights[i] = expected;
    }
    double total = 0.0;
    for (double w_i : weights) total += w_i;
    if (total <= 0.0) weights.assign(candidates.size(), 1.0);
    s.release_zip = candidates[rng.discrete(weights)]->zip;
    return s;
}

std::vector<SimCase> generate_outbreak(const ReleaseScenario& s,
                                       const std::vector<ZipPopulation>& population,
                                       const spatial::CentroidMap& centroids, const SimParams& sp,
                                       Rng& rng) {
    validate_scenario(s);
    std::vector<SimCase> cases;
    for (const auto& zp : population) {
        const spatial::ZipCentroid* c = centroids.find(zp.zip);
        if (!c || zp.count <= 0) continue;
        double conc = plume_concentration(s, centroids, *c);
        if (conc <= 0.0) continue;
        std::int64_t infected = rng.binomial(zp.count, infection_probability(conc, sp));
        double mean_h = mean_delay_hours(conc, sp);
        for (std::int64_t k = 0; k < infected; ++k) {
            double delay_h = rng.gamma(2.0, mean_h / 2.0);
            UtcTime t = s.release_time.plus_hours(24).plus_seconds(
                static_cast<std::int64_t>(std::llround(delay_h * 3600.0)));
            cases.push_back({t, zp.zip, 0, 0, true});
        }
    }
    std::stable_sort(cases.begin(), cases.end(),
                     [](const SimCase& a, const SimCase& b) { return a.time < b.time; });
    return cases;
}

void complete_cases(std::vector<SimCase>& cases, const model::PersonModel& m, Rng& rng) {
    for (auto& c : cases) {
        auto [age, gender] = m.sample_demographics(c.zip, rng);
        c.age = age;
        c.gender = gender;
        c.respiratory = true;
    }
}

std::vector<SimCase> generate_background(const model::PersonModelParams& params,
                                         const std::vector<model::CensusCell>& census,
                                         UtcTime start, UtcTime end, Rng& rng) {
    if (end <= start) fail(ErrorCode::InvalidArgument, "background range is empty");
    double lag_sum = params.other_adm_lag[0] + params.other_adm_lag[1] + params.other_adm_lag[2];
    std::vector<double> weights;
    weights.reserve(census.size());
    double rate_per_day = 0.0;
    for (const auto& cell : census) {
        if (cell.count < 0) fail(ErrorCode::NegativeCount, "negative census count");
        double fa = params.incidence_age_factor.empty() ? 1.0
                                                        : params.incidence_age_factor[cell.age];
        double w = static_cast<double>(cell.count) * params.incidence_per_person_day * fa *
                   params.incidence_gender_factor[cell.gender];
        weights.push_back(w);
        rate_per_day += w * lag_sum;
    }
    std::vector<SimCase> cases;
    for (UtcTime hour = start; hour < end; hour = hour.plus_hours(1)) {
        std::uint64_t n = rng.poisson(rate_per_day / 24.0);
        std::vector<SimCase> batch;
        batch.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k) {
            const auto& cell = census[rng.discrete(weights)];
            SimCase c;
            c.time = hour.plus_seconds(static_cast<std::int64_t>(rng.uniform() * 3600.0));
            c.zip = params.zips[cell.zip];
            c.age = cell.age;
            c.gender = cell.gender;
            c.respiratory = rng.bernoulli(params.resp_given_other);
            batch.push_back(std::move(c));
        }
        std::stable_sort(batch.begin(), batch.end(),
                         [](const SimCase& a, const SimCase& b) { return a.time < b.time; });
        cases.insert(cases.end(), batch.begin(), batch.end());
    }
    return cases;
}

std::vector<SimCase> inject(const std::vector<SimCase>& background,
                            const std::vector<SimCase>& outbreak) {
    for (const auto* stream : {&background, &outbreak})
        for (std::size_t i = 1; i < stream->size(); ++i)
            if ((*stream)[i].time < (*stream)[i - 1].time)
                fail(ErrorCode::UnsortedInput, "case stream is not sorted by time");
    std::vector<SimCase> merged;
    merged.reserve(background.size() + outbreak.size());
    std::size_t i = 0, j = 0;
    while (i < background.size() || j < outbreak.size()) {
        bool take_background = j >= outbreak.size() ||
                               (i < background.size() && background[i].time <= outbreak[j].time);
        merged.push_back(take_background ? background[i++] : outbreak[j++]);
    }
    return merged;
}

}  // namespace bnsurv::sim
