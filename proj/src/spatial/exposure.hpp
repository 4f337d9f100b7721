#pragma once

#include <string>
#include <vector>

namespace bnsurv::spatial {

struct ZipCentroid {
    std::string zip;
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees
};

// Centroid lookup for a region. The reserved label "other" is the catch-all
// for homes outside the region; it carries no centroid and scores exposure 0
// everywhere, both as a home and as a hypothesized release point.
class CentroidMap {
public:
    CentroidMap() = default;
    explicit CentroidMap(std::vector<ZipCentroid> rows);

    // nullptr for "other" and for zips absent from the file
    const ZipCentroid* find(const std::string& zip) const;
    // throws MissingCentroid (never for "other"; callers guard that label)
    const ZipCentroid& at(const std::string& zip) const;
    const std::vector<ZipCentroid>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

private:
    std::vector<ZipCentroid> rows_;
};

CentroidMap load_centroids(const std::string& path);
void write_centroids(const std::string& path, const std::vector<ZipCentroid>& rows);

struct ExposureParams {
    double half_distance = 3.0;  // miles per halving of exposure probability
    double rect_width = 3.0;     // miles, full width of the strip
};

inline constexpr const char* kAngleNames[8] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};
inline constexpr const char* kCatchAllZip = "other";

// Great-circle distance between centroids, statute miles.
double centroid_distance(const ZipCentroid& a, const ZipCentroid& b);

// Planar offsets of `point` relative to `release` in miles (x east, y north),
// equirectangular about the release latitude.
void planar_offset(const ZipCentroid& release, const ZipCentroid& point, double& x_east,
                   double& y_north);

// Core strip test in the planar frame: inside the half-infinite rectangle of
// the given width whose axis leaves the origin along `angle` (index into
// kAngleNames). Boundary counts as inside.
bool strip_contains(double x_east, double y_north, int angle, double width);

bool in_rotated_rectangle(const ZipCentroid& release, int angle, const ZipCentroid& point,
                          const ExposureParams& params);

// Scalar decay law, 0.5^(d / half_distance). Exactly 0.5 at one half
// distance and 0.25 at two, since exp2 is exact at integer arguments.
double exposure_decay(double distance_miles, const ExposureParams& params);

// 1.0 for the release zip itself; 0.5^(distance/half_distance) inside the
// strip; 0 outside. The catch-all zip scores 0 in every role.
double exposure_probability(const std::string& release_zip, int angle,
                            const std::string& home_zip, const CentroidMap& centroids,
                            const ExposureParams& params);

}  // namespace bnsurv::spatial
