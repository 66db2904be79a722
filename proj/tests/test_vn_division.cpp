#include "doctest.h"

#include <algorithm>
#include <set>

#include "csdvn/oracles.hpp"
#include "csdvn/vn_division.hpp"

using namespace csdvn;

namespace {

ConstellationConfig iridium_like(int phasing = 0, double polar_deg = 70.0) {
  ConstellationConfig c;
  c.phasing = phasing;
  c.polar_threshold = deg2rad(polar_deg);
  return c;
}

}  // namespace

TEST_CASE("longitude ranges tile the plane fan") {
  const auto [lo1, hi1] = vn_longitude_range(1, -5.0, 10.0);
  CHECK(lo1 == doctest::Approx(-5.0));
  CHECK(hi1 == doctest::Approx(5.0));
  const auto [lo18, hi18] = vn_longitude_range(18, -5.0, 10.0);
  CHECK(lo18 == doctest::Approx(165.0));
  CHECK(hi18 == doctest::Approx(175.0));
  const auto [lo, hi] = vn_longitude_range(19, -5.0, 10.0);
  CHECK(lo == doctest::Approx(175.0));
  CHECK(hi == doctest::Approx(-175.0));
}

TEST_CASE("latitude bands of the unphased division") {
  const auto c = iridium_like();
  const auto d = DivisionConfig::unphased(c);
  const auto first = vn_cell_bounds(1, 1, d, c);
  CHECK(first.lat_low == doctest::Approx(-70.0));
  CHECK(first.lat_high == doctest::Approx(-60.0));
  CHECK(first.lon_low == doctest::Approx(-5.0));
  CHECK(first.lon_high == doctest::Approx(5.0));
  CHECK_FALSE(first.pole_wrap);

  const auto below_pole = vn_latitude_range(16, 1, d, c);
  CHECK(below_pole.low == doctest::Approx(80.0));
  CHECK(below_pole.high == doctest::Approx(90.0));
  CHECK_FALSE(below_pole.pole_wrap);

  const auto over_pole = vn_latitude_range(17, 1, d, c);
  CHECK(over_pole.low == doctest::Approx(90.0));
  CHECK(over_pole.high == doctest::Approx(80.0));
  CHECK(over_pole.pole_wrap);

  const auto descending = vn_latitude_range(20, 1, d, c);
  CHECK(descending.low == doctest::Approx(60.0));
  CHECK(descending.high == doctest::Approx(50.0));
}

TEST_CASE("phased divisions shift whole columns by multiples of df") {
  const auto c = iridium_like(2);
  const auto conventional = DivisionConfig::matched(c, IslMode::conventional);
  const auto optimized = DivisionConfig::matched(c, IslMode::optimized);
  CHECK(cell_offset_quanta(3, conventional, c) == 4);
  CHECK(cell_offset_quanta(9, optimized, c) == 16);
  CHECK(cell_offset_quanta(10, optimized, c) == 0);
  CHECK(cell_offset_quanta(18, conventional, c) == 34);
  CHECK(cell_reference_phase(10, optimized, c) == doctest::Approx(-deg2rad(70.0)));

  const auto zero = iridium_like(0);
  DivisionConfig phased = DivisionConfig::unphased(zero);
  phased.phasing = DivisionPhasing::optimized;
  CHECK_THROWS_AS(cell_offset_quanta(2, phased, zero), ConfigError);
  CHECK(DivisionConfig::matched(zero, IslMode::optimized).phasing == DivisionPhasing::unphased);
}

TEST_CASE("region boundaries without phase difference") {
  CHECK(region_boundaries(36, deg2rad(70.0)) == RegionBoundaries{14, 19, 32});
  CHECK(region_boundaries(36, deg2rad(64.0)) == RegionBoundaries{12, 19, 30});
  CHECK(region_boundaries(36, deg2rad(90.0)) == RegionBoundaries{18, 19, 36});
  CHECK(region_boundaries(12, deg2rad(60.0)) == RegionBoundaries{4, 7, 10});
}

TEST_CASE("region boundaries with phase difference") {
  SUBCASE("closed form for integer K") {
    CHECK(region_boundaries_closed_form(36, deg2rad(70.0), 9) == RegionBoundaries{13, 19, 31});
    CHECK(region_boundaries_closed_form(36, deg2rad(70.0), 1) == RegionBoundaries{14, 19, 32});
    CHECK(region_boundaries_closed_form(36, deg2rad(64.0), 3) == RegionBoundaries{12, 19, 30});
    CHECK(region_boundaries_closed_form(36, deg2rad(64.0), 2) == RegionBoundaries{12, 19, 30});
  }
  SUBCASE("constraint form with the conventional spread") {
    const double spread = 34 * kTwoPi / 648;  // (n1-1)*df at F=2
    CHECK(region_boundaries_constrained(36, deg2rad(70.0), spread) == RegionBoundaries{12, 19, 30});
    CHECK(mode_boundaries(iridium_like(2), IslMode::conventional) == RegionBoundaries{12, 19, 30});
    CHECK(mode_boundaries(iridium_like(14), IslMode::conventional) == RegionBoundaries{0, 19, 18});
  }
  SUBCASE("non-integer K falls back to the constraint form") {
    // F = 5: spread max((h-1)*5 mod 18) = 17 quanta = 9.44 deg.
    CHECK(region_boundaries_phased(18, 36, 5, deg2rad(70.0)) == RegionBoundaries{13, 19, 31});
  }
}

TEST_CASE("closed forms agree with the constraint search") {
  for (int n2 : {12, 24, 36, 66})
    for (double polar : {60.0, 64.0, 70.0, 80.0, 90.0}) {
      CHECK(region_boundaries(n2, deg2rad(polar)) == region_boundaries_search(n2, polar, 0.0));
      for (int k : {2, 3, 6}) {
        const double spread_deg = (k - 1) * 360.0 / (k * n2);
        CHECK(region_boundaries_closed_form(n2, deg2rad(polar), k) == region_boundaries_search(n2, polar, spread_deg));
      }
    }
}

TEST_CASE("region labels") {
  const RegionBoundaries b{14, 19, 32};
  CHECK(classify_region(1, b) == RegionLabel::R1);
  CHECK(classify_region(14, b) == RegionLabel::R1);
  CHECK(classify_region(15, b) == RegionLabel::P1);
  CHECK(classify_region(18, b) == RegionLabel::P1);
  CHECK(classify_region(19, b) == RegionLabel::R2);
  CHECK(classify_region(32, b) == RegionLabel::R2);
  CHECK(classify_region(33, b) == RegionLabel::P2);
  CHECK(h_links_on(RegionLabel::R2));
  CHECK_FALSE(h_links_on(RegionLabel::P1));
  CHECK(to_string(RegionLabel::P2) == "P2");
}

TEST_CASE("CSD rows follow the argument of latitude") {
  const auto c = iridium_like(2);
  const auto d = DivisionConfig::matched(c, IslMode::optimized);
  const double ref = cell_reference_phase(1, d, c);
  const double slot = c.slot_spacing();
  CHECK(csd_row(ref, 1, d, c) == 1);
  CHECK(csd_row(ref + 0.5 * slot, 1, d, c) == 1);
  CHECK(csd_row(ref + slot, 1, d, c) == 2);
  CHECK(csd_row(ref - 1e-6, 1, d, c) == 36);
  CHECK(csd_row(ref + 35.5 * slot, 1, d, c) == 36);

  std::set<VirtualAddress> seen;
  for (const auto& s : propagate_all(c, 0.0)) {
    const auto a = csd_map(s, c, d);
    CHECK(a.h == s.sat.plane);
    seen.insert(a);
  }
  CHECK(seen.size() == 648);
}

TEST_CASE("GRD switch interval is T/n2") {
  CHECK(grd_switch_interval(6000.0, 36) == 6000.0 / 36);
  CHECK(grd_switch_interval(5828.5, 7) == 5828.5 / 7);
}

TEST_CASE("GRD grid coincides with the CSD cells at the epoch") {
  const auto c = iridium_like();
  const auto d = DivisionConfig::unphased(c);
  const GrdGrid grid(c, d);
  CHECK(grid.cell_count() == 648);
  CHECK(grid.address(grid.index({5, 7})) == VirtualAddress{5, 7});
  const auto states = propagate_all(c, 0.0);
  for (auto variant : {GrdVariant::intra_only, GrdVariant::inter_plane}) {
    const auto a = grd_assign(grid, variant, 0.0, 0.0, states);
    CHECK(a.conflicts == 0);
    for (const auto& s : states) {
      const auto got = a.address_of[static_cast<std::size_t>(satellite_index(s.sat, c.n2))];
      REQUIRE(got.has_value());
      CHECK(*got == csd_map(s, c, d));
    }
  }
}

TEST_CASE("GRD1 loses coverage once Earth has turned under the plane") {
  const auto c = iridium_like();
  const GrdGrid grid(c, DivisionConfig::unphased(c));
  const double t = kSiderealDay / 4;
  const auto states = propagate_all(c, t);
  const auto a = grd_assign(grid, GrdVariant::intra_only, t, 0.0, states);
  const auto uncovered = std::count(a.address_of.begin(), a.address_of.end(), std::nullopt);
  CHECK(uncovered > 0);
  const auto b = grd_assign(grid, GrdVariant::inter_plane, t, 0.0, states);
  CHECK(std::count(b.address_of.begin(), b.address_of.end(), std::nullopt) < uncovered);
}
