#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qsn/logistics.h"

using namespace qsn;
using namespace qsn::logistics;

namespace {
MemorySpec memory_for(int d) {
  MemorySpec m;
  m.distance = d;
  m.qubit_count = model::qubit_count(d);
  return m;
}
}  // namespace

TEST_CASE("stick capacity reproduces the published densities") {
  PlatformSpec nv{"NV- (optical)", 6.6e-4, 3.5e-6, 1e-3};
  CHECK(stick_capacity(memory_for(33), nv) == doctest::Approx(12665.669).epsilon(1e-4));
  PlatformSpec ions{"trapped ions", 1.5e-3, 1.0e-4, 1e-5};
  CHECK(stick_capacity(memory_for(11), ions) == doctest::Approx(31993.985).epsilon(1e-4));
  PlatformSpec unit{"unit", 1.0, 1.0, 0.0};
  CHECK(stick_capacity(memory_for(1), unit) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stick capacity decreases in N and in pitch") {
  PlatformSpec p{"x", 5e-4, 1e-6, 1e-3};
  double prev = 1e300;
  for (int d : {3, 5, 9, 17, 33}) {
    const double c = stick_capacity(memory_for(d), p);
    CHECK(c < prev);
    prev = c;
  }
  for (double pitch : {1e-4, 2e-4, 8e-4}) {
    PlatformSpec q{"x", pitch, 1e-6, 1e-3};
    CHECK(stick_capacity(memory_for(9), q) < stick_capacity(memory_for(9), {"x", pitch / 2, 1e-6, 1e-3}));
  }
}

TEST_CASE("effective bandwidth and its linearity in fleet size") {
  ShipSpec ship;  // 1e4 TEU, 20 days
  CHECK(effective_bandwidth(12665.669, ship) == doctest::Approx(73.2967).epsilon(1e-4));
  ShipSpec none = ship;
  none.teu_count = 0;
  CHECK(effective_bandwidth(12665.669, none) == 0.0);
  for (long long teu : {1LL, 10LL, 1000LL, 20000LL}) {
    ShipSpec s = ship;
    s.teu_count = teu;
    CHECK(effective_bandwidth(5000.0, s) ==
          doctest::Approx(static_cast<double>(teu) * 5000.0 / ship.one_way_transit).epsilon(1e-12));
  }
}

TEST_CASE("stick entangle time: published 18 s figure and scaling") {
  const double bell = 12 * 33 * 3.5e-6;  // 1.386 ms
  const double t = stick_entangle_time(12665, bell, 1, 1.0);
  CHECK(t == doctest::Approx(17.5537).epsilon(1e-3));
  CHECK(std::abs(t - 18.0) / 18.0 < 0.05);
  CHECK(stick_entangle_time(12665, bell, 1, 100.0) == doctest::Approx(100.0 * t).epsilon(1e-9));
  CHECK(stick_entangle_time(12665, bell, 4, 1.0) == doctest::Approx(t / 4.0).epsilon(1e-9));
  CHECK(stick_entangle_time(0, bell, 1, 1.0) == 0.0);
  CHECK_THROWS_AS((void)stick_entangle_time(1, bell, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)stick_entangle_time(1, bell, 1, 0.5), std::invalid_argument);
}

TEST_CASE("ebits formatting uses K/M/G/T prefixes") {
  CHECK(format_ebits(12665.669) == "12.7KEb");
  CHECK(format_ebits(31993.985) == "32KEb");
  CHECK(format_ebits(2.37037e6) == "2.37MEb");
  CHECK(format_ebits(2.794e12) == "2.79TEb");
  CHECK(format_ebits(1.9999e14) == "200TEb");
  CHECK(format_ebits(3.49e14) == "349TEb");
  CHECK(format_ebits(5.0e9) == "5GEb");
  CHECK(format_ebits(12.0) == "12Eb");
}

TEST_CASE("two-significant-figure matching") {
  CHECK(matches_to_sig_figs(12665.669, 12.7e3, 2));
  CHECK(matches_to_sig_figs(185.15, 190.0, 2));
  CHECK(matches_to_sig_figs(2.0211e12, 2.0e12, 2));
  CHECK_FALSE(matches_to_sig_figs(1.1574e12, 1.6e12, 2));
  CHECK_FALSE(matches_to_sig_figs(0.0, 1.0, 2));
}

TEST_CASE("table 1 reproduction: five bandwidth matches and one flagged row") {
  std::vector<PlatformSpec> catalog;
  for (const auto& entry : model::default_catalog()) catalog.push_back(entry.platform);
  const Table1 table = build_table1(catalog, model::LinkTarget{}, ShipSpec{}, model::FailureFit{});
  REQUIRE(table.rows.size() == 6);

  int capacity_matches = 0, bandwidth_matches = 0, flagged = 0;
  for (const auto& row : table.rows) {
    REQUIRE(row.feasible);
    REQUIRE(row.has_reference);
    CHECK(row.distance == row.reference.distance);
    CHECK(row.qubit_count == row.reference.qubit_count);
    capacity_matches += row.capacity_matches;
    bandwidth_matches += row.bandwidth_matches;
    flagged += row.flagged_inconsistent;
  }
  CHECK(capacity_matches == 6);
  CHECK(bandwidth_matches == 5);
  CHECK(flagged == 1);

  // The flagged row is NV- (dense): computed ~1.2e12 Hz, printed 1.6e12.
  for (const auto& row : table.rows)
    if (row.flagged_inconsistent) {
      CHECK(row.name == "NV- (dense)");
      CHECK_FALSE(row.bandwidth_matches);
      CHECK(row.bandwidth_hz == doctest::Approx(1.1574e12).epsilon(2e-3));
    }

  // Specific rows quoted in the source table.
  CHECK(table.rows[0].bandwidth_hz == doctest::Approx(73.2967).epsilon(1e-3));
  CHECK(table.rows[2].bandwidth_hz == doctest::Approx(1.3717e4).epsilon(1e-3));
  CHECK(table.rows[5].capacity_per_m3 == doctest::Approx(3.4925e14).epsilon(1e-3));
  CHECK(table.rows[5].bandwidth_hz == doctest::Approx(2.0211e12).epsilon(1e-3));
}

TEST_CASE("table 1: empty catalog is an error, infeasible rows are not") {
  CHECK_THROWS_AS((void)build_table1({}, model::LinkTarget{}, ShipSpec{}, model::FailureFit{}),
                  std::invalid_argument);
  PlatformSpec hopeless{"hopeless", 1e-3, 10.0, 1.2e-2};
  model::LinkTarget huge;
  huge.storage_time = 1e40;  // beyond the d <= 1000 scan at beta*p = 0.84
  const Table1 table = build_table1({hopeless}, huge, ShipSpec{}, model::FailureFit{});
  REQUIRE(table.rows.size() == 1);
  CHECK_FALSE(table.rows[0].feasible);
}

TEST_CASE("ship validation") {
  ShipSpec ship;
  ship.qubit_volume_per_teu = 41.0;  // beyond the 40 m^3 internal volume
  CHECK_THROWS_AS(ship.validate(), std::invalid_argument);
  ship.qubit_volume_per_teu = 1.0;
  ship.one_way_transit = 0.0;
  CHECK_THROWS_AS(ship.validate(), std::invalid_argument);
}

TEST_CASE("allocated ebits floor to integers") {
  PlatformSpec nv{"NV- (optical)", 6.6e-4, 3.5e-6, 1e-3};
  const StickSpec stick = make_stick(nv, memory_for(33));
  CHECK(stick.allocated_ebits(1.0) == 12665);
  CHECK(stick.allocated_ebits(0.5) == 6332);
  CHECK(stick.capacity_per_m3 == doctest::Approx(1.0 / stick.unit_volume).epsilon(1e-12));
}
