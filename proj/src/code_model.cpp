#include "qsn/code_model.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsn::model {

void PlatformSpec::validate() const {
  if (!(pitch > 0.0)) throw std::invalid_argument(name + ": pitch must be > 0");
  if (!(gate_time > 0.0)) throw std::invalid_argument(name + ": gate_time must be > 0");
  if (!(error_rate >= 0.0 && error_rate < 1.0))
    throw std::invalid_argument(name + ": error_rate must be in [0, 1)");
}

void FailureFit::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("failure fit: alpha, beta must be > 0");
}

void LinkTarget::validate() const {
  if (!(link_infidelity > 0.0 && link_infidelity < 1.0))
    throw std::invalid_argument("link target: infidelity must be in (0, 1)");
  if (!(storage_time > 0.0)) throw std::invalid_argument("link target: storage time must be > 0");
}

long long qubit_count(int distance) {
  if (distance < 1) throw std::invalid_argument("distance must be >= 1");
  const long long side = 2LL * distance - 1;
  return side * side;
}

double per_cycle_failure(double p, int distance, const FailureFit& fit) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("p must be in [0, 1)");
  if (distance < 1) throw std::invalid_argument("distance must be >= 1");
  if (p == 0.0) return 0.0;
  const double exponent = 0.5 * (distance + 1);
  const double value = fit.alpha * std::pow(fit.beta * p, exponent);
  return std::min(1.0, value);
}

double memory_time(double p, int distance, double gate_time, double link_infidelity, const FailureFit& fit) {
  const double failure = per_cycle_failure(p, distance, fit);
  const double cycle = 6.0 * gate_time * distance;
  if (failure == 0.0) return std::numeric_limits<double>::infinity();
  if (failure >= 1.0) return 0.0;
  // log1p keeps precision for the tiny probabilities this runs at.
  return std::log1p(-link_infidelity) * cycle / std::log1p(-failure);
}

double memory_time_approx(double p, int distance, double gate_time, double link_infidelity,
                          const FailureFit& fit) {
  const double failure = per_cycle_failure(p, distance, fit);
  const double cycle = 6.0 * gate_time * distance;
  if (failure == 0.0) return std::numeric_limits<double>::infinity();
  return cycle * link_infidelity / failure;
}

DistanceSelection select_distance(const PlatformSpec& platform, const LinkTarget& target,
                                  const FailureFit& fit, int d_max) {
  platform.validate();
  target.validate();
  fit.validate();
  if (!(platform.error_rate < 1.0 / fit.beta))
    throw std::invalid_argument(platform.name + ": error rate " + std::to_string(platform.error_rate) +
                                " is outside the fit regime (p < 1/beta)");
  DistanceSelection result;
  result.scanned_up_to = d_max;
  for (int d = 2; d <= d_max; ++d) {
    if (memory_time(platform.error_rate, d, platform.gate_time, target.link_infidelity, fit) >=
        target.storage_time) {
      result.feasible = true;
      result.memory.distance = d;
      result.memory.qubit_count = qubit_count(d);
      result.memory.cycle_time = 6.0 * platform.gate_time * d;
      result.memory.per_cycle_failure = per_cycle_failure(platform.error_rate, d, fit);
      result.memory.fit_reliable = fit.reliable_for(platform.error_rate);
      return result;
    }
  }
  return result;
}

// d such that N == (2d-1)^2, or -1.
static int distance_for_qubit_count(long long n) {
  if (n < 1) return -1;
  const long long side = std::llround(std::sqrt(static_cast<double>(n)));
  if (side * side != n || side % 2 == 0) return -1;
  return static_cast<int>((side + 1) / 2);
}

MemoryTimeGrid memory_time_grid(const std::vector<long long>& n_values,
                                const std::vector<double>& link_infidelities, double gate_time, double p,
                                const FailureFit& fit) {
  if (n_values.empty() || link_infidelities.empty())
    throw std::invalid_argument("memory_time_grid: ranges must be nonempty");
  for (size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw std::invalid_argument("memory_time_grid: N range not increasing");
  for (size_t i = 1; i < link_infidelities.size(); ++i)
    if (link_infidelities[i] <= link_infidelities[i - 1])
      throw std::invalid_argument("memory_time_grid: P_link range not increasing");

  MemoryTimeGrid grid;
  grid.link_infidelities = link_infidelities;
  for (long long n : n_values) {
    const int d = distance_for_qubit_count(n);
    if (d < 0) {
      grid.skipped_n.push_back(n);
      continue;
    }
    grid.qubit_counts.push_back(n);
    grid.distances.push_back(d);
    std::vector<double> row;
    row.reserve(link_infidelities.size());
    for (double plink : link_infidelities) row.push_back(memory_time(p, d, gate_time, plink, fit));
    grid.seconds.push_back(std::move(row));
  }

  // One-year level set: for each accepted N, log-interpolate the P_link at
  // which the memory time crosses one year. Memory time is increasing in
  // P_link, so each row crosses at most once.
  for (size_t i = 0; i < grid.qubit_counts.size(); ++i) {
    const auto& row = grid.seconds[i];
    for (size_t j = 0; j + 1 < row.size(); ++j) {
      const double lo = row[j], hi = row[j + 1];
      if (std::isinf(lo) || std::isinf(hi)) continue;
      if ((lo < kYearSeconds) == (hi < kYearSeconds)) continue;
      const double f = (std::log(kYearSeconds) - std::log(lo)) / (std::log(hi) - std::log(lo));
      const double log_plink = std::log(grid.link_infidelities[j]) +
                               f * (std::log(grid.link_infidelities[j + 1]) - std::log(grid.link_infidelities[j]));
      grid.one_year_contour.push_back({static_cast<double>(grid.qubit_counts[i]), std::exp(log_plink)});
    }
  }
  return grid;
}

}  // namespace qsn::model
