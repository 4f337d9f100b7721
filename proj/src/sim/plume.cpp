#include "sim/plume.hpp"

#include <cmath>

#include "util/error.hpp"

namespace bnsurv::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMetersPerMile = 1609.344;
constexpr double kMetersPerFoot = 0.3048;
constexpr double kMphToMetersPerSecond = 0.44704;

// Power-law dispersion coefficients per stability class; x in km, sigma in m.
// sy = a x^0.894, sz = c x^d.
struct StabilityRow {
    double a, c, d;
};

constexpr StabilityRow kStabilityTable[6] = {
    {213.0, 440.8, 1.941},  // A
    {156.0, 106.6, 1.149},  // B
    {104.0, 61.0, 0.911},   // C
    {68.0, 33.2, 0.725},    // D
    {50.5, 22.8, 0.678},    // E
    {34.0, 14.35, 0.740},   // F
};

constexpr double kSigmaYExponent = 0.894;

}  // namespace

const char* stability_name(Stability s) {
    static const char* names[] = {"A", "B", "C", "D", "E", "F"};
    return names[static_cast<int>(s)];
}

Stability stability_from_name(const std::string& name) {
    if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'F')
        return static_cast<Stability>(name[0] - 'A');
    fail(ErrorCode::ParseError, "stability class must be A..F, got '" + name + "'");
}

void validate_scenario(const ReleaseScenario& s) {
    if (s.release_zip.empty()) fail(ErrorCode::InvalidArgument, "scenario needs a release zip");
    if (!(s.amount >= 0.0)) fail(ErrorCode::InvalidArgument, "release amount must be nonnegative");
    if (s.height_ft < 0.0) fail(ErrorCode::InvalidArgument, "release height must be nonnegative");
    if (!(s.wind_speed_mph > 0.0)) fail(ErrorCode::InvalidArgument, "wind speed must be positive");
    if (s.wind_direction_deg < 0.0 || s.wind_direction_deg >= 360.0)
        fail(ErrorCode::InvalidArgument, "wind direction must be in [0, 360)");
}

double plume_concentration_at(const ReleaseScenario& s, double downwind_miles,
                              double crosswind_miles) {
    if (downwind_miles <= 0.0) return 0.0;
    const StabilityRow& row = kStabilityTable[static_cast<int>(s.stability)];
    double x_km = downwind_miles * kMetersPerMile / 1000.0;
    double sy = row.a * std::pow(x_km, kSigmaYExponent);
    double sz = row.c * std::pow(x_km, row.d);
    double u = s.wind_speed_mph * kMphToMetersPerSecond;
    double cross_m = crosswind_miles * kMetersPerMile;
    double h_m = s.height_ft * kMetersPerFoot;
    return s.amount / (kPi * u * sy * sz) * std::exp(-cross_m * cross_m / (2.0 * sy * sy)) *
           std::exp(-h_m * h_m / (2.0 * sz * sz));
}

double plume_concentration(const ReleaseScenario& s, const spatial::CentroidMap& centroids,
                           const spatial::ZipCentroid& target) {
    const spatial::ZipCentroid& origin = centroids.at(s.release_zip);
    double x_east = 0.0, y_north = 0.0;
    spatial::planar_offset(origin, target, x_east, y_north);
    double rad = s.wind_direction_deg * kPi / 180.0;
    double wx = std::sin(rad), wy = std::cos(rad);
    double downwind = x_east * wx + y_north * wy;
    double crosswind = wx * y_north - wy * x_east;
    return plume_concentration_at(s, downwind, crosswind);
}

int nearest_angle(double bearing_deg) {
    double b = std::fmod(bearing_deg, 360.0);
    if (b < 0.0) b += 360.0;
    return static_cast<int>(std::lround(b / 45.0)) % 8;
}

}  // namespace bnsurv::sim
