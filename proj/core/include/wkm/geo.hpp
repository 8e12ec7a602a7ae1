#pragma once

#include <span>

namespace wkm {

/// Mean Earth radius (IUGG), kilometres.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// A position on the sphere in degrees. Latitude must lie in [-90, 90];
/// longitude is wrapped into (-180, 180] on construction.
class GeoPoint {
public:
    GeoPoint() = default;
    /// Throws Error(InvalidCoordinate) for out-of-range or non-finite input.
    GeoPoint(double lat_deg, double lon_deg);

    double lat() const noexcept { return lat_; }
    double lon() const noexcept { return lon_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
};

/// Wraps any finite longitude into (-180, 180].
double normalize_lon(double lon_deg) noexcept;

/// Great-circle distance by the haversine formula.
double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept;

/// A point with its trigonometric terms cached for repeated distance
/// queries. haversine_km on prepared points is bit-identical to the
/// GeoPoint overload.
struct PreparedPoint {
    double phi = 0.0;
    double cos_phi = 1.0;
    double lon_deg = 0.0;
};

PreparedPoint prepare(const GeoPoint& p) noexcept;
double haversine_km(const PreparedPoint& a, const PreparedPoint& b) noexcept;

struct WeightedPoint {
    GeoPoint point;
    double weight = 0.0;
};

/// Weighted mean on the sphere: the weight-sum of unit vectors, normalized
/// and mapped back to latitude/longitude.
///
/// Throws ZeroTotalWeight when every weight is zero (or the span is empty),
/// DegenerateMean when the vector sum nearly cancels.
GeoPoint spherical_centroid(std::span<const WeightedPoint> points);

/// Unit-sphere cartesian coordinates.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

Vec3 to_unit_vector(const GeoPoint& p) noexcept;
/// Throws DegenerateMean when |v| < 1e-12.
GeoPoint from_vector(const Vec3& v);

}  // namespace wkm
