#pragma once

// Walker-star constellation geometry and circular two-body propagation over a
// spherical, uniformly rotating Earth.

#include <cmath>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csdvn/angles.hpp"

namespace csdvn {

inline constexpr double kEarthRadius = 6371.0e3;       // m
inline constexpr double kEarthMu = 3.986004418e14;     // m^3/s^2
inline constexpr double kSiderealDay = 86164.0905;     // s
inline constexpr double kEarthRotationRate = kTwoPi / kSiderealDay;
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s

/// Raised for an invalid configuration; `field()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

/// Walker-star parameters. Angles in radians, lengths in meters.
struct ConstellationConfig {
  int n1 = 18;  // orbit planes
  int n2 = 36;  // satellites per plane
  int phasing = 0;  // Walker phasing factor F
  double altitude = 780.0e3;
  double inclination = kPi / 2.0;
  double polar_threshold = deg2rad(70.0);
  double raan0 = 0.0;
  std::optional<double> phase0;  // defaults to -polar_threshold
  std::optional<double> period_override;

  void validate() const;

  int satellite_count() const { return n1 * n2; }
  double orbit_radius() const { return kEarthRadius + altitude; }
  double plane_spacing() const { return kPi / n1; }
  double slot_spacing() const { return kTwoPi / n2; }
  /// Phase step between same-slot satellites of adjacent planes.
  double phase_offset() const { return kTwoPi * phasing / (static_cast<double>(n1) * n2); }
  /// 2*pi / (n1*n2): every in-row phase difference is an integer multiple of this.
  double phase_quantum() const { return kTwoPi / (static_cast<double>(n1) * n2); }
  double epoch_phase() const { return phase0.value_or(-polar_threshold); }
  double period() const;
  double mean_motion() const { return kTwoPi / period(); }
};

struct SatelliteId {
  int plane = 1;  // 1..n1
  int slot = 1;   // 1..n2

  friend auto operator<=>(const SatelliteId&, const SatelliteId&) = default;
};

inline int satellite_index(SatelliteId id, int n2) { return (id.plane - 1) * n2 + (id.slot - 1); }
inline SatelliteId satellite_at(int index, int n2) { return {index / n2 + 1, index % n2 + 1}; }

struct OrbitSlot {
  SatelliteId id;
  double raan = 0.0;
  double initial_phase = 0.0;
};

struct GeoPoint {
  double lat = 0.0;  // rad
  double lon = 0.0;  // rad, Earth-fixed
};

struct SatelliteState {
  SatelliteId sat;
  double t = 0.0;
  double phase = 0.0;  // argument of latitude, [0, 2pi)
  Vec3 position;       // inertial, m
  double lat = 0.0;
  double lon = 0.0;    // sub-point, Earth-fixed, [-pi, pi)

  GeoPoint subpoint() const { return {lat, lon}; }
};

double orbital_period(double altitude);

std::vector<OrbitSlot> build_constellation(const ConstellationConfig& config);
double plane_raan(const ConstellationConfig& config, int plane);
double initial_phase(const ConstellationConfig& config, SatelliteId sat);

SatelliteState propagate(const ConstellationConfig& config, SatelliteId sat, double t);
/// All satellites at time t, indexed by satellite_index.
std::vector<SatelliteState> propagate_all(const ConstellationConfig& config, double t);

/// Inertial position of a point on a circular orbit given its node and phase.
Vec3 orbit_position(double radius, double raan, double inclination, double phase);
/// Converts an inertial direction to an Earth-fixed sub-point at time t.
GeoPoint ground_point(const Vec3& inertial, double t);
Vec3 ground_point_inertial(const GeoPoint& p, double t);

inline bool in_polar_region(double lat, double polar_threshold) {
  return std::abs(lat) > polar_threshold;
}

/// Elevation of the satellite above the local horizon at an Earth-fixed point.
double elevation_angle(const SatelliteState& sat, const GeoPoint& ground);

/// Earth central angle between a sub-point and the edge of coverage at the
/// given minimum elevation.
double coverage_half_angle(double orbit_radius, double min_elevation);

}  // namespace csdvn
