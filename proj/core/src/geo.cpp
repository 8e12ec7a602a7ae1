#include "wkm/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wkm/error.hpp"

namespace wkm {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegenerateNorm = 1e-12;

}  // namespace

double normalize_lon(double lon_deg) noexcept {
    if (lon_deg > -180.0 && lon_deg <= 180.0) {
        return lon_deg;
    }
    double wrapped = std::fmod(lon_deg + 180.0, 360.0);
    if (wrapped < 0.0) {
        wrapped += 360.0;
    }
    wrapped -= 180.0;
    return wrapped == -180.0 ? 180.0 : wrapped;
}

GeoPoint::GeoPoint(double lat_deg, double lon_deg) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg) || lat_deg < -90.0 || lat_deg > 90.0) {
        throw Error(ErrorKind::InvalidCoordinate,
                    "invalid coordinate (lat=" + std::to_string(lat_deg) +
                        ", lon=" + std::to_string(lon_deg) + ")");
    }
    lat_ = lat_deg;
    lon_ = normalize_lon(lon_deg);
}

PreparedPoint prepare(const GeoPoint& p) noexcept {
    const double phi = p.lat() * kDegToRad;
    return {phi, std::cos(phi), p.lon()};
}

double haversine_km(const PreparedPoint& a, const PreparedPoint& b) noexcept {
    const double sin_dphi = std::sin((b.phi - a.phi) * 0.5);
    const double sin_dlambda = std::sin((b.lon_deg - a.lon_deg) * kDegToRad * 0.5);
    double h = sin_dphi * sin_dphi + a.cos_phi * b.cos_phi * sin_dlambda * sin_dlambda;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
    return haversine_km(prepare(a), prepare(b));
}

Vec3 to_unit_vector(const GeoPoint& p) noexcept {
    const double phi = p.lat() * kDegToRad;
    const double lambda = p.lon() * kDegToRad;
    const double c = std::cos(phi);
    return {c * std::cos(lambda), c * std::sin(lambda), std::sin(phi)};
}

GeoPoint from_vector(const Vec3& v) {
    const double norm = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    if (!(norm >= kDegenerateNorm)) {
        throw Error(ErrorKind::DegenerateMean, "weighted vector sum cancels (norm below 1e-12)");
    }
    const double z = std::clamp(v.z / norm, -1.0, 1.0);
    const double lat = std::asin(z) * kRadToDeg;
    // atan2 is undefined in meaning at the poles; pin lon to 0 there.
    const double horizontal = std::hypot(v.x, v.y) / norm;
    const double lon = horizontal < 1e-15 ? 0.0 : std::atan2(v.y, v.x) * kRadToDeg;
    return {lat, lon};
}

GeoPoint spherical_centroid(std::span<const WeightedPoint> points) {
    Vec3 sum;
    double total = 0.0;
    for (const auto& [point, weight] : points) {
        if (weight <= 0.0) {
            continue;
        }
        const Vec3 u = to_unit_vector(point);
        sum.x += weight * u.x;
        sum.y += weight * u.y;
        sum.z += weight * u.z;
        total += weight;
    }
    if (total <= 0.0) {
        throw Error(ErrorKind::ZeroTotalWeight, "spherical centroid of zero total weight");
    }
    // Normalizing by the total first keeps the degeneracy threshold scale-free.
    return from_vector({sum.x / total, sum.y / total, sum.z / total});
}

}  // namespace wkm
