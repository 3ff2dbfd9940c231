#include "qsn/frame.h"

#include <stdexcept>

namespace qsn {

bool PauliFrame::is_clear() const {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] | z[i]) return false;
  return true;
}

void PauliFrame::xor_with(const PauliFrame& other) {
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] ^= other.x[i];
    z[i] ^= other.z[i];
  }
}

size_t PauliFrame::weight() const {
  size_t w = 0;
  for (size_t i = 0; i < x.size(); ++i) w += (x[i] | z[i]) != 0;
  return w;
}

FrameSampler::FrameSampler(const Circuit& circuit, double noise_p) : circuit_(circuit), p_(noise_p) {
  if (noise_p < 0.0 || noise_p >= 1.0) throw std::invalid_argument("noise probability must be in [0, 1)");
  circuit.validate();
}

void FrameSampler::depolarize1(size_t q, Rng& rng, PauliFrame& f) const {
  if (p_ == 0.0 || !rng.bernoulli(p_)) return;
  switch (rng.next_below(3)) {
    case 0: f.x[q] ^= 1; break;                 // X
    case 1: f.x[q] ^= 1; f.z[q] ^= 1; break;    // Y
    default: f.z[q] ^= 1; break;                // Z
  }
}

void FrameSampler::depolarize2(size_t q0, size_t q1, Rng& rng, PauliFrame& f) const {
  if (p_ == 0.0 || !rng.bernoulli(p_)) return;
  const uint64_t which = rng.next_below(15) + 1;  // 1..15, skipping II
  const uint64_t a = which & 3, b = which >> 2;
  if (a & 1) f.x[q0] ^= 1;
  if (a & 2) f.z[q0] ^= 1;
  if (b & 1) f.x[q1] ^= 1;
  if (b & 2) f.z[q1] ^= 1;
}

void FrameSampler::sample(Rng& rng, FrameTrace& trace) const {
  const size_t n = circuit_.num_qubits;
  trace.measurement_flips.clear();
  trace.measurement_flips.reserve(circuit_.measurement_count());
  auto& f = trace.final_frame;
  if (f.num_qubits() != n) f = PauliFrame(n);
  std::fill(f.x.begin(), f.x.end(), 0);
  std::fill(f.z.begin(), f.z.end(), 0);

  for (const auto& op : circuit_.ops) {
    switch (op.kind) {
      case OpKind::kInitZ:
      case OpKind::kInitX:
        f.x[op.q0] = 0;
        f.z[op.q0] = 0;
        depolarize1(op.q0, rng, f);
        break;
      case OpKind::kCnot:
        f.x[op.q1] ^= f.x[op.q0];
        f.z[op.q0] ^= f.z[op.q1];
        depolarize2(op.q0, op.q1, rng, f);
        break;
      case OpKind::kMeasureZ:
        depolarize1(op.q0, rng, f);
        trace.measurement_flips.push_back(f.x[op.q0]);
        break;
      case OpKind::kMeasureX:
        depolarize1(op.q0, rng, f);
        trace.measurement_flips.push_back(f.z[op.q0]);
        break;
      case OpKind::kIdle:
        depolarize1(op.q0, rng, f);
        break;
    }
  }
}

}  // namespace qsn
