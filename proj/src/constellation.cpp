#include "csdvn/constellation.hpp"

#include <algorithm>

namespace csdvn {

void ConstellationConfig::validate() const {
  if (n1 < 2) throw ConfigError("n1", "need at least 2 orbit planes, got " + std::to_string(n1));
  if (n2 < 3) throw ConfigError("n2", "need at least 3 satellites per plane, got " + std::to_string(n2));
  if (phasing < 0 || phasing > n2 - 1)
    throw ConfigError("F", "phasing factor must lie in [0, n2-1], got " + std::to_string(phasing));
  if (!(altitude > 0.0)) throw ConfigError("altitude_km", "altitude must be positive");
  if (!(polar_threshold > 0.0) || polar_threshold > kPi / 2.0 + 1e-12)
    throw ConfigError("polar_threshold_deg", "threshold must lie in (0, 90] deg");
  if (!(inclination > 0.0) || inclination > kPi)
    throw ConfigError("inclination_deg", "inclination must lie in (0, 180] deg");
  if (period_override && !(*period_override > 0.0))
    throw ConfigError("period_s", "period override must be positive");
}

double ConstellationConfig::period() const {
  return period_override ? *period_override : orbital_period(altitude);
}

double orbital_period(double altitude) {
  if (!(altitude > 0.0)) throw ConfigError("altitude_km", "altitude must be positive");
  const double a = kEarthRadius + altitude;
  return kTwoPi * std::sqrt(a * a * a / kEarthMu);
}

double plane_raan(const ConstellationConfig& config, int plane) {
  return config.raan0 + (plane - 1) * config.plane_spacing();
}

double initial_phase(const ConstellationConfig& config, SatelliteId sat) {
  return config.epoch_phase() + (sat.slot - 1) * config.slot_spacing() +
         (sat.plane - 1) * config.phase_offset();
}

std::vector<OrbitSlot> build_constellation(const ConstellationConfig& config) {
  config.validate();
  std::vector<OrbitSlot> slots;
  slots.reserve(static_cast<std::size_t>(config.satellite_count()));
  for (int h = 1; h <= config.n1; ++h) {
    for (int j = 1; j <= config.n2; ++j) {
      const SatelliteId id{h, j};
      slots.push_back({id, plane_raan(config, h), initial_phase(config, id)});
    }
  }
  return slots;
}

Vec3 orbit_position(double radius, double raan, double inclination, double phase) {
  const double cu = std::cos(phase), su = std::sin(phase);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(inclination), si = std::sin(inclination);
  return {radius * (co * cu - so * su * ci), radius * (so * cu + co * su * ci), radius * su * si};
}

GeoPoint ground_point(const Vec3& inertial, double t) {
  const double r = inertial.norm();
  const double lat = std::asin(std::clamp(inertial.z / r, -1.0, 1.0));
  const double lon = wrap_pi(std::atan2(inertial.y, inertial.x) - kEarthRotationRate * t);
  return {lat, lon};
}

Vec3 ground_point_inertial(const GeoPoint& p, double t) {
  const double lon = p.lon + kEarthRotationRate * t;
  return {kEarthRadius * std::cos(p.lat) * std::cos(lon), kEarthRadius * std::cos(p.lat) * std::sin(lon),
          kEarthRadius * std::sin(p.lat)};
}

SatelliteState propagate(const ConstellationConfig& config, SatelliteId sat, double t) {
  SatelliteState s;
  s.sat = sat;
  s.t = t;
  s.phase = wrap_two_pi(initial_phase(config, sat) + config.mean_motion() * t);
  s.position = orbit_position(config.orbit_radius(), plane_raan(config, sat.plane), config.inclination, s.phase);
  s.lat = std::asin(std::clamp(std::sin(config.inclination) * std::sin(s.phase), -1.0, 1.0));
  s.lon = ground_point(s.position, t).lon;
  return s;
}

std::vector<SatelliteState> propagate_all(const ConstellationConfig& config, double t) {
  std::vector<SatelliteState> states;
  states.reserve(static_cast<std::size_t>(config.satellite_count()));
  for (int i = 0; i < config.satellite_count(); ++i) states.push_back(propagate(config, satellite_at(i, config.n2), t));
  return states;
}

double elevation_angle(const SatelliteState& sat, const GeoPoint& ground) {
  const Vec3 g = ground_point_inertial(ground, sat.t);
  const Vec3 d = sat.position - g;
  const double range = d.norm();
  if (range == 0.0) return kPi / 2.0;
  const double s = d.dot(g) / (range * g.norm());
  return std::asin(std::clamp(s, -1.0, 1.0));
}

double coverage_half_angle(double orbit_radius, double min_elevation) {
  // Triangle Earth-centre / ground point / satellite: the nadir angle follows
  // from the sine rule, the central angle closes the triangle.
  const double nadir = std::asin(kEarthRadius / orbit_radius * std::cos(min_elevation));
  return kPi / 2.0 - min_elevation - nadir;
}

}  // namespace csdvn
