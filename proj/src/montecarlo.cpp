#include "qsn/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qsn::surface {

CycleContext::CycleContext(int distance, double p, int rounds, EdgeWeighting weighting)
    : graphs_(build_detection_graphs(build_patch(distance), rounds > 0 ? rounds : distance,
                                     p > 0.0 ? weighting : EdgeWeighting::kUnit, p)) {
  sampler_ = std::make_unique<FrameSampler>(graphs_.circuit, p);
}

bool CycleContext::judge_trace(const FrameTrace& trace) const {
  const FiredEvents events = detect_events(graphs_, trace.measurement_flips, trace.final_frame);

  // Z-type checks see X errors; their correction toggles X on data sites.
  std::vector<uint8_t> rx(trace.final_frame.x), rz(trace.final_frame.z);
  if (!events.z_nodes.empty())
    for (uint16_t q : decode(graphs_.z_sector, events.z_nodes).toggled_sites) rx[q] ^= 1;
  if (!events.x_nodes.empty())
    for (uint16_t q : decode(graphs_.x_sector, events.x_nodes).toggled_sites) rz[q] ^= 1;

  uint8_t x_flip = 0, z_flip = 0;
  for (int q : graphs_.patch.logical_z_sites) x_flip ^= rx[q];  // X residual crossing Z_L
  for (int q : graphs_.patch.logical_x_sites) z_flip ^= rz[q];  // Z residual crossing X_L
  return x_flip || z_flip;
}

bool CycleContext::run_cycle_trial(Rng& rng) const {
  thread_local FrameTrace trace;
  sampler_->sample(rng, trace);
  return judge_trace(trace);
}

void wilson_interval(long long k, long long n, double* low, double* high) {
  if (n <= 0) {
    *low = *high = 0.0;
    return;
  }
  const double z = 1.959963984540054;  // 95%
  const double z2 = z * z;
  const double nd = static_cast<double>(n);
  const double p_hat = static_cast<double>(k) / nd;
  const double denom = 1.0 + z2 / nd;
  const double center = p_hat + z2 / (2.0 * nd);
  const double spread = z * std::sqrt(p_hat * (1.0 - p_hat) / nd + z2 / (4.0 * nd * nd));
  *low = k == 0 ? 0.0 : std::max(0.0, (center - spread) / denom);
  *high = k == n ? 1.0 : std::min(1.0, (center + spread) / denom);
}

TrialStats estimate_failure(int distance, double p, long long trials, uint64_t seed, int num_threads,
                            EdgeWeighting weighting) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const CycleContext context(distance, p, 0, weighting);

  if (num_threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    num_threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  num_threads = static_cast<int>(std::min<long long>(num_threads, trials));

  std::atomic<long long> failures{0};
  std::atomic<long long> next_chunk{0};
  constexpr long long kChunk = 1024;
  auto worker = [&]() {
    long long local = 0;
    for (;;) {
      const long long begin = next_chunk.fetch_add(kChunk);
      if (begin >= trials) break;
      const long long end = std::min(trials, begin + kChunk);
      for (long long i = begin; i < end; ++i) {
        Rng rng = Rng::substream(seed, static_cast<uint64_t>(i));
        local += context.run_cycle_trial(rng);
      }
    }
    failures.fetch_add(local);
  };
  if (num_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  TrialStats stats;
  stats.distance = distance;
  stats.p = p;
  stats.trials = trials;
  stats.failures = failures.load();
  stats.failure_rate = static_cast<double>(stats.failures) / static_cast<double>(trials);
  wilson_interval(stats.failures, trials, &stats.ci_low, &stats.ci_high);
  stats.upper_bound_only = stats.failures == 0;
  stats.seed = seed;
  return stats;
}

FitResult fit_failure_model(const std::vector<TrialStats>& stats, double valid_p_max) {
  FitResult result;
  std::vector<const TrialStats*> usable;
  for (const auto& s : stats) {
    if (s.failures <= 0) continue;
    if (s.p > valid_p_max) {
      result.message = "point p=" + std::to_string(s.p) + " above the trusted fit bound";
      return result;
    }
    usable.push_back(&s);
  }
  {
    std::vector<int> ds;
    std::vector<double> ps;
    for (const auto* s : usable) {
      if (std::find(ds.begin(), ds.end(), s->distance) == ds.end()) ds.push_back(s->distance);
      if (std::find(ps.begin(), ps.end(), s->p) == ps.end()) ps.push_back(s->p);
    }
    if (ds.size() < 2 || ps.size() < 2) {
      result.message = "need nonzero failures at >= 2 distances and >= 2 error rates (have " +
                       std::to_string(ds.size()) + " and " + std::to_string(ps.size()) + ")";
      return result;
    }
  }

  // log P = a + k*b + k*log p with k = (d+1)/2, a = log alpha, b = log beta.
  double s1 = 0, sk = 0, skk = 0, st = 0, skt = 0;
  for (const auto* s : usable) {
    const double k = 0.5 * (s->distance + 1);
    const double t = std::log(s->failure_rate) - k * std::log(s->p);
    s1 += 1.0;
    sk += k;
    skk += k * k;
    st += t;
    skt += k * t;
  }
  const double det = s1 * skk - sk * sk;
  if (std::abs(det) < 1e-12) {
    result.message = "degenerate design matrix";
    return result;
  }
  const double a = (st * skk - sk * skt) / det;
  const double b = (s1 * skt - sk * st) / det;

  result.ok = true;
  result.fit.alpha = std::exp(a);
  result.fit.beta = std::exp(b);
  result.fit.valid_p_max = valid_p_max;
  result.diagnostics.points_used = static_cast<int>(usable.size());

  double ss_res = 0, ss_tot = 0, mean_y = 0;
  for (const auto* s : usable) mean_y += std::log(s->failure_rate);
  mean_y /= s1;
  for (const auto* s : usable) {
    const double k = 0.5 * (s->distance + 1);
    const double y = std::log(s->failure_rate);
    const double fitted = a + k * (b + std::log(s->p));
    const double r = y - fitted;
    ss_res += r * r;
    ss_tot += (y - mean_y) * (y - mean_y);
    result.diagnostics.max_abs_residual = std::max(result.diagnostics.max_abs_residual, std::abs(r));
  }
  result.diagnostics.rms_residual = std::sqrt(ss_res / s1);
  result.diagnostics.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return result;
}

CrossingEstimate estimate_crossing(const std::vector<TrialStats>& curve_a,
                                   const std::vector<TrialStats>& curve_b) {
  CrossingEstimate out;
  if (curve_a.size() != curve_b.size()) throw std::invalid_argument("crossing: curves must share the p grid");
  for (size_t i = 0; i + 1 < curve_a.size(); ++i) {
    if (curve_a[i].p != curve_b[i].p) throw std::invalid_argument("crossing: curves must share the p grid");
    const double d0 = curve_a[i].failure_rate - curve_b[i].failure_rate;
    const double d1 = curve_a[i + 1].failure_rate - curve_b[i + 1].failure_rate;
    if (d0 == 0.0 && d1 == 0.0) continue;
    if ((d0 <= 0.0) == (d1 <= 0.0)) continue;
    out.found = true;
    out.p_low = curve_a[i].p;
    out.p_high = curve_a[i + 1].p;
    out.p_estimate = out.p_low + (out.p_high - out.p_low) * (0.0 - d0) / (d1 - d0);
    return out;
  }
  return out;
}

}  // namespace qsn::surface
