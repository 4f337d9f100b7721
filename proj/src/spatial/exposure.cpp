#include "spatial/exposure.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "util/error.hpp"
#include "util/text.hpp"

namespace bnsurv::spatial {

namespace {

constexpr double kEarthRadiusMiles = 3958.7613;
constexpr double kPi = 3.141592653589793;
constexpr double kMilesPerDegree = kEarthRadiusMiles * kPi / 180.0;

double radians(double deg) { return deg * (kPi / 180.0); }

}  // namespace

CentroidMap::CentroidMap(std::vector<ZipCentroid> rows) : rows_(std::move(rows)) {
    std::unordered_set<std::string> seen;
    for (const auto& r : rows_) {
        if (r.lat < -90.0 || r.lat > 90.0)
            fail(ErrorCode::InvalidArgument, "latitude out of range for zip " + r.zip);
        if (r.lon < -180.0 || r.lon > 180.0)
            fail(ErrorCode::InvalidArgument, "longitude out of range for zip " + r.zip);
        if (!seen.insert(r.zip).second)
            fail(ErrorCode::InvalidArgument, "duplicate centroid for zip " + r.zip);
    }
}

const ZipCentroid* CentroidMap::find(const std::string& zip) const {
    for (const auto& r : rows_)
        if (r.zip == zip) return &r;
    return nullptr;
}

const ZipCentroid& CentroidMap::at(const std::string& zip) const {
    const ZipCentroid* c = find(zip);
    if (!c) fail(ErrorCode::MissingCentroid, "no centroid for zip " + zip);
    return *c;
}

CentroidMap load_centroids(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open centroid file " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "zip,lat,lon")
        fail(ErrorCode::ParseError, path + ": expected header 'zip,lat,lon'");
    std::vector<ZipCentroid> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_char(line, ',');
        if (cells.size() != 3)
            fail(ErrorCode::ParseError,
                 path + ":" + std::to_string(line_no) + ": expected 3 columns");
        std::string ctx = path + ":" + std::to_string(line_no);
        rows.push_back({cells[0], parse_double(cells[1], ctx), parse_double(cells[2], ctx)});
    }
    return CentroidMap(std::move(rows));
}

void write_centroids(const std::string& path, const std::vector<ZipCentroid>& rows) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write centroid file " + path);
    out << "zip,lat,lon\n";
    for (const auto& r : rows)
        out << r.zip << ',' << format_double(r.lat) << ',' << format_double(r.lon) << "\n";
}

double centroid_distance(const ZipCentroid& a, const ZipCentroid& b) {
    double phi1 = radians(a.lat), phi2 = radians(b.lat);
    double dphi = radians(b.lat - a.lat), dlam = radians(b.lon - a.lon);
    double s1 = std::sin(dphi / 2.0), s2 = std::sin(dlam / 2.0);
    double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusMiles * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

void planar_offset(const ZipCentroid& release, const ZipCentroid& point, double& x_east,
                   double& y_north) {
    x_east = (point.lon - release.lon) * std::cos(radians(release.lat)) * kMilesPerDegree;
    y_north = (point.lat - release.lat) * kMilesPerDegree;
}

bool strip_contains(double x_east, double y_north, int angle, double width) {
    // Unit axis direction; diagonals share one exact constant so 90-degree
    // frame rotations stay bit-identical.
    static const double s = std::sqrt(0.5);
    static const double dir[8][2] = {{0.0, 1.0}, {s, s},   {1.0, 0.0}, {s, -s},
                                     {0.0, -1.0}, {-s, -s}, {-1.0, 0.0}, {-s, s}};
    double dx = dir[angle][0], dy = dir[angle][1];
    double along = x_east * dx + y_north * dy;
    double cross = dx * y_north - dy * x_east;
    return along >= 0.0 && std::abs(cross) <= width / 2.0;
}

bool in_rotated_rectangle(const ZipCentroid& release, int angle, const ZipCentroid& point,
                          const ExposureParams& params) {
    double x = 0.0, y = 0.0;
    planar_offset(release, point, x, y);
    return strip_contains(x, y, angle, params.rect_width);
}

double exposure_decay(double distance_miles, const ExposureParams& params) {
    return std::exp2(-distance_miles / params.half_distance);
}

double exposure_probability(const std::string& release_zip, int angle,
                            const std::string& home_zip, const CentroidMap& centroids,
                            const ExposureParams& params) {
    if (home_zip == kCatchAllZip || release_zip == kCatchAllZip) return 0.0;
    if (home_zip == release_zip) return 1.0;
    const ZipCentroid& rel = centroids.at(release_zip);
    const ZipCentroid& home = centroids.at(home_zip);
    if (!in_rotated_rectangle(rel, angle, home, params)) return 0.0;
    return exposure_decay(centroid_distance(rel, home), params);
}

}  // namespace bnsurv::spatial
