#ifndef QSN_MONTECARLO_H_
#define QSN_MONTECARLO_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qsn/code_model.h"
#include "qsn/decoder.h"
#include "qsn/detection.h"
#include "qsn/frame.h"
#include "qsn/rng.h"

namespace qsn::surface {

/// Everything reusable across trials at fixed (d, p): patch, noisy cycle
/// circuit (d rounds), sampler, and both matching graphs.
class CycleContext {
 public:
  CycleContext(int distance, double p, int rounds = 0 /* 0 -> d */,
               EdgeWeighting weighting = EdgeWeighting::kLogLikelihood);

  const DetectionGraphs& graphs() const { return graphs_; }
  const CodePatch& patch() const { return graphs_.patch; }
  int rounds() const { return graphs_.rounds; }
  double noise() const { return sampler_->noise(); }

  /// One memory cycle: sample d noisy rounds plus the ideal closing
  /// round, decode both sectors, apply the corrections, and report
  /// whether a logical operator flipped.
  bool run_cycle_trial(Rng& rng) const;

  /// As above but from a caller-provided fault trace (for injection tests).
  bool judge_trace(const FrameTrace& trace) const;

 private:
  DetectionGraphs graphs_;
  std::unique_ptr<FrameSampler> sampler_;
};

struct TrialStats {
  int distance = 0;
  double p = 0.0;
  long long trials = 0;
  long long failures = 0;
  double failure_rate = 0.0;
  double ci_low = 0.0;   // Wilson 95%
  double ci_high = 0.0;
  bool upper_bound_only = false;  // zero failures observed
  uint64_t seed = 0;
};

/// Monte Carlo P_L estimate over `trials` cycles. Deterministic for a
/// given seed: trial i draws from substream (seed, i) and aggregation is
/// order-independent counting, so any thread count gives identical bytes.
TrialStats estimate_failure(int distance, double p, long long trials, uint64_t seed, int num_threads = 0,
                            EdgeWeighting weighting = EdgeWeighting::kLogLikelihood);

/// Wilson 95% interval for k successes in n trials.
void wilson_interval(long long k, long long n, double* low, double* high);

struct FitDiagnostics {
  double rms_residual = 0.0;
  double max_abs_residual = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

struct FitResult {
  bool ok = false;
  std::string message;
  model::FailureFit fit;
  FitDiagnostics diagnostics;
};

/// Least squares of log P_L = log(alpha) + ((d+1)/2) * (log(beta) + log p)
/// over points with nonzero failures. Needs >= 2 distinct distances and
/// >= 2 distinct p values among them; otherwise returns an explicit
/// failed result instead of constants.
FitResult fit_failure_model(const std::vector<TrialStats>& stats, double valid_p_max);

/// Estimated crossing of the P_L(p) curves for two distances: scans the
/// sign of P_L(d1) - P_L(d2) over the sampled grid and interpolates.
struct CrossingEstimate {
  bool found = false;
  double p_low = 0.0, p_high = 0.0;  // bracketing grid points
  double p_estimate = 0.0;
};
CrossingEstimate estimate_crossing(const std::vector<TrialStats>& curve_a,
                                   const std::vector<TrialStats>& curve_b);

}  // namespace qsn::surface

#endif  // QSN_MONTECARLO_H_
