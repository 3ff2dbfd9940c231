#include "qsn/code_model.h"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qsn/catalog.h"

using namespace qsn::model;

namespace {
const FailureFit kDefaultFit{};  // alpha 0.3, beta 70

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }
}  // namespace

TEST_CASE("qubit_count reproduces the published (d, N) arithmetic") {
  CHECK(qubit_count(33) == 4225);
  CHECK(qubit_count(29) == 3249);
  CHECK(qubit_count(36) == 5041);
  CHECK(qubit_count(1) == 1);
  CHECK_THROWS_AS(qubit_count(0), std::invalid_argument);
}

TEST_CASE("qubit_count grows strictly and is always an odd square") {
  long long prev = 0;
  for (int d = 1; d <= 100; ++d) {
    const long long n = qubit_count(d);
    CHECK(n > prev);
    prev = n;
    const long long side = std::llround(std::sqrt(static_cast<double>(n)));
    CHECK(side * side == n);
    CHECK(side % 2 == 1);
  }
}

TEST_CASE("per-cycle failure evaluates the power law") {
  // 0.3 * (70 * 1e-3)^17, evaluated with 40-digit arithmetic offline.
  CHECK(close_rel(per_cycle_failure(1e-3, 33, kDefaultFit), 6.97891541961621e-21, 1e-10));
  // Even distance -> real exponent 18.5.
  CHECK(close_rel(per_cycle_failure(1e-3, 36, kDefaultFit), 1.29251322348809e-22, 1e-10));
  // beta*p = 1 makes the power term unity.
  CHECK(per_cycle_failure(1.0 / 70.0, 5, kDefaultFit) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(per_cycle_failure(0.0, 11, kDefaultFit) == 0.0);
  // Clamped at 1 outside the suppression regime.
  CHECK(per_cycle_failure(0.5, 21, kDefaultFit) == 1.0);
  CHECK_THROWS_AS(per_cycle_failure(-0.1, 3, kDefaultFit), std::invalid_argument);
}

TEST_CASE("per-cycle failure is monotone in p and d") {
  double prev = -1.0;
  for (double p : {1e-5, 1e-4, 1e-3, 5e-3, 1e-2}) {
    const double value = per_cycle_failure(p, 9, kDefaultFit);
    CHECK(value >= prev);
    prev = value;
  }
  for (int d = 2; d < 40; ++d)
    CHECK(per_cycle_failure(1e-3, d + 1, kDefaultFit) < per_cycle_failure(1e-3, d, kDefaultFit));
}

TEST_CASE("memory_time matches the exact-log oracle values") {
  // Frozen from 40-digit evaluation of log(1-P_link)*6td/log(1-P_L).
  const double t33 = memory_time(1e-3, 33, 3.5e-6, 1e-10, kDefaultFit);
  CHECK(close_rel(t33, 9929909.711855485, 1e-9));
  CHECK(t33 / kSecondsPerDay == doctest::Approx(114.9295105538829).epsilon(1e-9));
  const double t31 = memory_time(1e-3, 31, 3.5e-6, 1e-10, kDefaultFit);
  CHECK(close_rel(t31, 652966.7901432243, 1e-9));
  CHECK(t31 < 40.0 * kSecondsPerDay);  // below target, making d=33 minimal

  // One-cycle identity: P_L == P_link collapses the ratio of logs to 1.
  FailureFit unit_fit{0.25, 10.0, 1.0};
  const double p = 0.02;  // P_L = 0.25 * (0.2)^2 = 0.01
  const double plink = per_cycle_failure(p, 3, unit_fit);
  CHECK(memory_time(p, 3, 1e-6, plink, unit_fit) == doctest::Approx(6e-6 * 3).epsilon(1e-12));

  // P_L = 0 is reported as unbounded, not as a division error.
  CHECK(std::isinf(memory_time(0.0, 3, 1e-6, 1e-10, kDefaultFit)));
}

TEST_CASE("exact form vs small-P_L approximation") {
  // In the storage regime (P_L <= P_link) the exact form dominates.
  for (double plink : {1e-6, 1e-4, 1e-2}) {
    for (int d : {3, 7, 15}) {
      const double p = 1e-3;
      const double pl = per_cycle_failure(p, d, kDefaultFit);
      if (pl > plink) continue;
      const double exact = memory_time(p, d, 1e-6, plink, kDefaultFit);
      const double approx = memory_time_approx(p, d, 1e-6, plink, kDefaultFit);
      CHECK(exact >= approx * (1.0 - 1e-12));
    }
  }
  // Agreement below 1% once P_L < 1e-3 (and the budget is small too).
  for (double p : {1e-3, 1.5e-3, 2e-3}) {
    const double pl = per_cycle_failure(p, 5, kDefaultFit);
    REQUIRE(pl < 1e-3);
    const double exact = memory_time(p, 5, 1e-6, 1e-10, kDefaultFit);
    const double approx = memory_time_approx(p, 5, 1e-6, 1e-10, kDefaultFit);
    CHECK(std::abs(exact - approx) / approx < 0.01);
  }
}

TEST_CASE("select_distance reproduces all six published (d, N) pairs") {
  const LinkTarget target;  // 1e-10, 40 days
  for (const auto& entry : default_catalog()) {
    const auto selection = select_distance(entry.platform, target, kDefaultFit);
    REQUIRE(selection.feasible);
    CHECK(selection.memory.distance == entry.reference.distance);
    CHECK(selection.memory.qubit_count == entry.reference.qubit_count);
    // Minimality: one step down misses the target.
    const int d = selection.memory.distance;
    CHECK(memory_time(entry.platform.error_rate, d, entry.platform.gate_time, target.link_infidelity,
                      kDefaultFit) >= target.storage_time);
    CHECK(memory_time(entry.platform.error_rate, d - 1, entry.platform.gate_time, target.link_infidelity,
                      kDefaultFit) < target.storage_time);
  }
}

TEST_CASE("select_distance reports infeasibility and rejects off-regime rates") {
  PlatformSpec hopeless{"hopeless", 1e-3, 1.0, 1.3e-2};  // beta*p = 0.91: suppression too weak
  LinkTarget target;
  target.storage_time = 1e18;
  const auto selection = select_distance(hopeless, target, kDefaultFit, 200);
  CHECK_FALSE(selection.feasible);
  CHECK(selection.scanned_up_to == 200);

  PlatformSpec off{"off-regime", 1e-3, 1.0, 2e-2};  // beta*p = 1.4 >= 1
  CHECK_THROWS_AS((void)select_distance(off, LinkTarget{}, kDefaultFit), std::invalid_argument);
}

TEST_CASE("memory_time_grid cells, skipped N values and the one-year contour") {
  const std::vector<long long> ns = {441, 442, 4225, 4489};  // 442 has no integer d
  const std::vector<double> plinks = {1e-12, 1e-10, 1e-8};
  const auto grid = memory_time_grid(ns, plinks, 3.5e-6, 1e-3, kDefaultFit);
  REQUIRE(grid.qubit_counts == std::vector<long long>{441, 4225, 4489});
  REQUIRE(grid.skipped_n == std::vector<long long>{442});
  REQUIRE(grid.distances == std::vector<int>{11, 33, 34});
  CHECK(close_rel(grid.seconds[1][1], 9929909.711855485, 1e-9));  // N=4225 at P_link=1e-10

  // d=33 stores ~115 days < 1 year < d=34 at 1e-10, so the one-year
  // contour passes between those rows at this P_link decade.
  bool has_contour_near = false;
  for (const auto& point : grid.one_year_contour)
    has_contour_near |= point.qubit_count == 4489;
  CHECK(has_contour_near);

  // p = 0: everything unbounded, contour empty.
  const auto free_grid = memory_time_grid({441, 4225}, plinks, 3.5e-6, 0.0, kDefaultFit);
  for (const auto& row : free_grid.seconds)
    for (double cell : row) CHECK(std::isinf(cell));
  CHECK(free_grid.one_year_contour.empty());

  // Single cell agrees with the scalar op.
  const auto single = memory_time_grid({4225}, {1e-10}, 3.5e-6, 1e-3, kDefaultFit);
  CHECK(single.seconds.size() == 1);
  CHECK(single.seconds[0][0] == memory_time(1e-3, 33, 3.5e-6, 1e-10, kDefaultFit));

  CHECK_THROWS_AS((void)memory_time_grid({}, plinks, 1e-6, 1e-3, kDefaultFit), std::invalid_argument);
}

TEST_CASE("fit reliability flag follows beta*p") {
  CHECK(kDefaultFit.reliable_for(1e-3));
  CHECK_FALSE(kDefaultFit.reliable_for(8e-3));  // beta*p = 0.56
  const LinkTarget target;
  const auto sel = select_distance(default_catalog()[0].platform, target, kDefaultFit);
  CHECK(sel.memory.fit_reliable);
}
