#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model/person.hpp"
#include "sim/plume.hpp"
#include "sim/scenario.hpp"
#include "util/rng.hpp"
#include "util/time.hpp"

namespace bnsurv::sim {

// One emergency-department arrival. Outbreak generation first fills time and
// zip; demographics are completed against the person model afterwards.
struct SimCase {
    UtcTime time;
    std::string zip;
    int age = 0;
    int gender = 0;
    bool respiratory = false;

    friend bool operator==(const SimCase&, const SimCase&) = default;
};

// Knobs of the synthetic outbreak process. The dose-response and incubation
// laws are declared stand-ins pinned by these parameters, not estimates of
// any published exposure model.
struct SimParams {
    // P(infection) = 1 - exp(-dose_k * C) per person in the zip
    double dose_k = 5.0e4;

    // ED arrival = release + 24h + Gamma(2, mean/2), with
    // mean = delay_mean_min_h + delay_mean_scale_h / (1 + C / delay_c_ref):
    // strictly decreasing in concentration.
    double delay_mean_min_h = 10.0;
    double delay_mean_scale_h = 70.0;
    double delay_c_ref = 2.0e-6;

    // Release height ~ lognormal(ln(height_median_ft), height_sigma), feet.
    double height_median_ft = 500.0;
    double height_sigma = 1.0;
};

// Population by zip label, for plume weighting and dose-response draws.
struct ZipPopulation {
    std::string zip;
    std::int64_t count = 0;
};

std::vector<ZipPopulation> population_by_zip(const model::PersonModelParams& params,
                                             const std::vector<model::CensusCell>& census);

// Draws weather from the table, height from the skewed prior, and the release
// zip weighted by the expected number of people infected downwind under the
// drawn conditions (at unit amount). Zips without centroids are never picked.
ReleaseScenario sample_release(const spatial::CentroidMap& centroids,
                               const std::vector<ZipPopulation>& population,
                               const std::vector<WeatherRow>& weather, UtcTime release_time,
                               const SimParams& sp, Rng& rng);

// Infections per zip ~ Binomial(pop, 1 - exp(-dose_k * C)); one ED case per
// infection at release + 24h + a concentration-dependent positive delay.
// Output sorted by time; only time and zip are filled (respiratory = true).
std::vector<SimCase> generate_outbreak(const ReleaseScenario& s,
                                       const std::vector<ZipPopulation>& population,
                                       const spatial::CentroidMap& centroids, const SimParams& sp,
                                       Rng& rng);

// Fills age and gender by sampling the person model conditioned on a
// respiratory admission in the case's zip.
void complete_cases(std::vector<SimCase>& cases, const model::PersonModel& m, Rng& rng);

// Background ED arrivals from the non-anthrax path: per-hour Poisson counts
// calibrated to the model's admission rate, times uniform within the hour,
// demographics weighted by census and incidence factors, respiratory split by
// the model's conditional. Covers [start, end).
std::vector<SimCase> generate_background(const model::PersonModelParams& params,
                                         const std::vector<model::CensusCell>& census,
                                         UtcTime start, UtcTime end, Rng& rng);

// Merge-sort two streams by time, background first on ties.
std::vector<SimCase> inject(const std::vector<SimCase>& background,
                            const std::vector<SimCase>& outbreak);

}  // namespace bnsurv::sim
