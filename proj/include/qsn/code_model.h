#ifndef QSN_CODE_MODEL_H_
#define QSN_CODE_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

namespace qsn::model {

inline constexpr double kSecondsPerDay = 86400.0;  // exactly; no calendar effects
inline constexpr double kYearSeconds = 365.25 * kSecondsPerDay;

/// One hardware technology row: qubit pitch (m), physical gate time t (s),
/// per-gate physical error rate p.
struct PlatformSpec {
  std::string name;
  double pitch = 0.0;
  double gate_time = 0.0;
  double error_rate = 0.0;

  void validate() const;
};

/// Constants of the per-cycle failure model P_L = min(1, alpha*(beta*p)^((d+1)/2)).
struct FailureFit {
  double alpha = 0.3;
  double beta = 70.0;
  /// Physical error rate below which the asymptotic fit is trusted
  /// (beta*p < 0.5); fits are flagged unreliable past this point.
  double valid_p_max = 0.5 / 70.0;

  bool reliable_for(double p) const { return beta * p < 0.5; }
  void validate() const;
};

/// Storage requirement: permissible infidelity of the final entangled
/// link, P_link = 1 - F, and the target storage time in seconds.
struct LinkTarget {
  double link_infidelity = 1e-10;
  double storage_time = 40.0 * kSecondsPerDay;

  void validate() const;
};

/// Planar-code memory at distance d: qubit count N = (2d-1)^2, cycle
/// time T_corr = 6*t*d, and per-cycle failure probability P_L.
struct MemorySpec {
  int distance = 0;
  long long qubit_count = 0;
  double cycle_time = 0.0;
  double per_cycle_failure = 0.0;
  bool fit_reliable = true;
};

/// N = (2d-1)^2. d >= 1.
long long qubit_count(int distance);

/// P_L per d-round correction cycle. The exponent (d+1)/2 is evaluated as
/// a real power (Table-style arithmetic admits even d); result clamped to 1.
double per_cycle_failure(double p, int distance, const FailureFit& fit);

/// Exact form: T_mem = log(1-P_link) * T_corr / log(1-P_L).
/// P_L = 0 maps to +infinity (unbounded storage), not a division error.
double memory_time(double p, int distance, double gate_time, double link_infidelity, const FailureFit& fit);

/// Small-P_L approximation T_corr * P_link / P_L, provided as a
/// cross-check only; the exact logarithmic form is canonical.
double memory_time_approx(double p, int distance, double gate_time, double link_infidelity,
                          const FailureFit& fit);

struct DistanceSelection {
  bool feasible = false;
  MemorySpec memory;
  int scanned_up_to = 0;
};

/// Minimal integer d >= 2 with memory_time >= target.storage_time.
/// Requires platform.error_rate < 1/beta (the fit regime). Scans up to
/// d_max and reports infeasibility explicitly instead of failing.
DistanceSelection select_distance(const PlatformSpec& platform, const LinkTarget& target,
                                  const FailureFit& fit, int d_max = 1000);

/// Memory time over an N x P_link grid plus the one-year contour.
struct MemoryTimeGrid {
  std::vector<long long> qubit_counts;       // accepted N values (odd squares)
  std::vector<int> distances;                // matching d per accepted N
  std::vector<long long> skipped_n;          // rejected N values
  std::vector<double> link_infidelities;
  std::vector<std::vector<double>> seconds;  // [n_index][plink_index]; +inf = unbounded
  struct ContourPoint {
    double qubit_count;
    double link_infidelity;
  };
  std::vector<ContourPoint> one_year_contour;
};

MemoryTimeGrid memory_time_grid(const std::vector<long long>& n_values,
                                const std::vector<double>& link_infidelities, double gate_time, double p,
                                const FailureFit& fit);

}  // namespace qsn::model

#endif  // QSN_CODE_MODEL_H_
