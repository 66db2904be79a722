#include "doctest.h"

#include "csdvn/constellation.hpp"
#include "csdvn/rational.hpp"

using namespace csdvn;

TEST_CASE("orbital period follows Kepler's third law") {
  CHECK(orbital_period(629e3) == doctest::Approx(5828.5166).epsilon(1e-7));
  CHECK(orbital_period(780e3) == doctest::Approx(6018.1242).epsilon(1e-7));
  CHECK_THROWS_AS(orbital_period(0.0), ConfigError);
}

TEST_CASE("Walker-star spacing") {
  ConstellationConfig c;
  c.phasing = 2;
  CHECK(c.satellite_count() == 648);
  CHECK(c.plane_spacing() == doctest::Approx(kPi / 18));
  CHECK(c.slot_spacing() == doctest::Approx(kTwoPi / 36));
  CHECK(c.phase_offset() == doctest::Approx(kTwoPi * 2 / 648));
  CHECK(c.phase_quantum() == doctest::Approx(kTwoPi / 648));
  CHECK(c.epoch_phase() == doctest::Approx(-deg2rad(70.0)));
  c.period_override = 6000.0;
  CHECK(c.period() == 6000.0);
}

TEST_CASE("validation names the offending field") {
  auto field_of = [](ConstellationConfig c) {
    try {
      c.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string{};
  };
  ConstellationConfig c;
  CHECK(field_of(c).empty());
  c.n1 = 1;
  CHECK(field_of(c) == "n1");
  c = {};
  c.n2 = 2;
  CHECK(field_of(c) == "n2");
  c = {};
  c.phasing = 36;
  CHECK(field_of(c) == "F");
  c = {};
  c.polar_threshold = deg2rad(91.0);
  CHECK(field_of(c) == "polar_threshold_deg");
  c = {};
  c.altitude = -1.0;
  CHECK(field_of(c) == "altitude_km");
}

TEST_CASE("satellite indexing is a bijection") {
  for (int i = 0; i < 648; ++i) CHECK(satellite_index(satellite_at(i, 36), 36) == i);
  CHECK(satellite_index({2, 1}, 36) == 36);
}

TEST_CASE("initial phases step by the slot spacing and the phase offset") {
  ConstellationConfig c;
  c.phasing = 3;
  c.phase0 = 0.0;
  CHECK(initial_phase(c, {1, 1}) == doctest::Approx(0.0));
  CHECK(initial_phase(c, {1, 2}) == doctest::Approx(kTwoPi / 36));
  CHECK(initial_phase(c, {2, 1}) == doctest::Approx(kTwoPi * 3 / 648));
  CHECK(plane_raan(c, 18) == doctest::Approx(17 * kPi / 18));
}

TEST_CASE("propagation on a circular polar orbit") {
  ConstellationConfig c;
  c.altitude = 629e3;
  const auto s0 = propagate(c, {1, 1}, 0.0);
  CHECK(s0.position.norm() == doctest::Approx(7000e3));
  CHECK(rad2deg(s0.lat) == doctest::Approx(-70.0));
  CHECK(rad2deg(s0.lon) == doctest::Approx(0.0).epsilon(1e-9));

  SUBCASE("a full period returns to the same inertial position") {
    const auto s1 = propagate(c, {1, 1}, c.period());
    CHECK((s1.position - s0.position).norm() == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(s1.phase == doctest::Approx(s0.phase));
  }

  SUBCASE("the ground track drifts west with Earth rotation") {
    ConstellationConfig e = c;
    e.phase0 = 0.0;
    const auto a = propagate(e, {1, 1}, 0.0);
    const auto b = propagate(e, {1, 1}, e.period());
    CHECK(rad2deg(a.lat) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rad2deg(b.lat) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(wrap_pi(b.lon - a.lon) == doctest::Approx(-kEarthRotationRate * e.period()));
  }

  SUBCASE("phase a quarter orbit past the node is the north pole") {
    ConstellationConfig e = c;
    e.phase0 = kPi / 2;
    CHECK(rad2deg(propagate(e, {1, 1}, 0.0).lat) == doctest::Approx(90.0));
  }
}

TEST_CASE("ground and inertial frames invert each other") {
  const GeoPoint p{deg2rad(35.0), deg2rad(-100.0)};
  for (double t : {0.0, 1234.5, 40000.0}) {
    const auto back = ground_point(ground_point_inertial(p, t), t);
    CHECK(back.lat == doctest::Approx(p.lat));
    CHECK(back.lon == doctest::Approx(p.lon));
  }
}

TEST_CASE("polar region is strictly above the threshold") {
  const double phi = deg2rad(70.0);
  CHECK_FALSE(in_polar_region(phi, phi));
  CHECK(in_polar_region(deg2rad(70.5), phi));
  CHECK(in_polar_region(deg2rad(-70.5), phi));
  CHECK_FALSE(in_polar_region(0.0, phi));
}

TEST_CASE("elevation of a satellite straight overhead is 90 degrees") {
  ConstellationConfig c;
  const auto s = propagate(c, {1, 1}, 100.0);
  CHECK(rad2deg(elevation_angle(s, s.subpoint())) == doctest::Approx(90.0));
  const GeoPoint far{s.lat, s.lon + kPi};
  CHECK(elevation_angle(s, far) < 0.0);
}

TEST_CASE("Rational arithmetic") {
  const Rational k(18, 4);
  CHECK(k.num() == 9);
  CHECK(k.den() == 2);
  CHECK_FALSE(k.is_integer());
  CHECK(Rational(18, 2).is_integer());
  CHECK(Rational(18, 2) == Rational(9, 1));
  CHECK(k.value() == doctest::Approx(4.5));
}

TEST_CASE("angle helpers") {
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_pi(kPi) == doctest::Approx(-kPi));
  CHECK(positive_mod(-1.0, 360.0) == doctest::Approx(359.0));
}
