#pragma once

#include <cstdint>
#include <string>

#include "spatial/exposure.hpp"
#include "util/time.hpp"

namespace bnsurv::sim {

// Pasquill stability classes, A (most unstable) through F (most stable).
enum class Stability { A = 0, B, C, D, E, F };

const char* stability_name(Stability s);
Stability stability_from_name(const std::string& name);

struct ReleaseScenario {
    std::string release_zip;
    double height_ft = 0.0;
    double amount = 1.0;  // source strength, deliberately unitless
    UtcTime release_time;
    double wind_direction_deg = 0.0;  // bearing the plume travels toward, 0 = north
    double wind_speed_mph = 5.0;
    Stability stability = Stability::D;
};

// amount > 0, height >= 0, wind speed > 0, direction in [0, 360)
void validate_scenario(const ReleaseScenario& s);

// Ground-level concentration of a Gaussian plume at the target centroid:
//   C = amount / (pi * u * sy * sz) * exp(-cross^2 / (2 sy^2)) * exp(-H^2 / (2 sz^2))
// with sy = a x^b and sz = c x^d from the stability table (x downwind in km,
// sigmas in m), u in m/s, H in m. Zero at or upwind of the source.
double plume_concentration(const ReleaseScenario& s, const spatial::CentroidMap& centroids,
                           const spatial::ZipCentroid& target);

// Same, with the offsets already in the wind frame (miles).
double plume_concentration_at(const ReleaseScenario& s, double downwind_miles,
                              double crosswind_miles);

// Nearest compass angle (index into spatial::kAngleNames) for a bearing.
int nearest_angle(double bearing_deg);

}  // namespace bnsurv::sim
