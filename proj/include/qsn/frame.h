#ifndef QSN_FRAME_H_
#define QSN_FRAME_H_

#include <cstdint>
#include <vector>

#include "qsn/circuit.h"
#include "qsn/rng.h"

namespace qsn {

/// Classical record of accumulated Pauli errors: one X mask and one Z
/// mask over the qubits. Composition is bitwise XOR.
struct PauliFrame {
  std::vector<uint8_t> x, z;

  explicit PauliFrame(size_t n = 0) : x(n, 0), z(n, 0) {}
  size_t num_qubits() const { return x.size(); }
  bool is_clear() const;
  void xor_with(const PauliFrame& other);
  size_t weight() const;
};

/// One sampled noisy execution: measurement outcome flips (relative to
/// the noiseless reference run, in circuit measurement order) and the
/// frame left on the qubits after the last operation.
struct FrameTrace {
  std::vector<uint8_t> measurement_flips;
  PauliFrame final_frame;
};

/// Pauli-frame sampler for Clifford circuits under uniform depolarizing
/// circuit noise with per-gate probability p:
///   - after CNOT, one of the 15 two-qubit Paulis, each p/15;
///   - after init and idle, one of {X, Y, Z}, each p/3;
///   - before each measurement, one of {X, Y, Z}, each p/3.
/// Valid because every operation is Clifford and noise is Pauli; agrees
/// with full tableau simulation on outcome statistics.
class FrameSampler {
 public:
  FrameSampler(const Circuit& circuit, double noise_p);

  const Circuit& circuit() const { return circuit_; }
  double noise() const { return p_; }

  /// Sample one trajectory into `trace` (reused across calls).
  void sample(Rng& rng, FrameTrace& trace) const;

 private:
  const Circuit& circuit_;
  double p_;

  void depolarize1(size_t q, Rng& rng, PauliFrame& f) const;
  void depolarize2(size_t q0, size_t q1, Rng& rng, PauliFrame& f) const;
};

}  // namespace qsn

#endif  // QSN_FRAME_H_
