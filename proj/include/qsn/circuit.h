#ifndef QSN_CIRCUIT_H_
#define QSN_CIRCUIT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsn {

enum class OpKind : uint8_t {
  kInitZ,
  kInitX,
  kCnot,
  kMeasureZ,
  kMeasureX,
  kIdle,
};

const char* op_name(OpKind kind);
bool op_is_measurement(OpKind kind);
bool op_is_two_qubit(OpKind kind);

struct TimedOp {
  uint32_t time = 0;  // time step index
  OpKind kind = OpKind::kIdle;
  uint32_t q0 = 0;
  uint32_t q1 = 0;  // CNOT target; unused otherwise
};

/// Ordered list of timed operations on n qubits.
///
/// Invariant (checked by validate): within one time step no qubit
/// participates in two operations.
struct Circuit {
  uint32_t num_qubits = 0;
  std::vector<TimedOp> ops;  // nondecreasing in time

  void append(uint32_t time, OpKind kind, uint32_t q0, uint32_t q1 = 0);
  size_t measurement_count() const;
  uint32_t max_time() const;

  /// Throws std::invalid_argument naming the first violation.
  void validate() const;

  /// Plain text, one timed operation per line: "<time> <OP> <q0> [q1]".
  std::string to_text() const;
  static Circuit from_text(const std::string& text);
  static Circuit from_stream(std::istream& in);
};

}  // namespace qsn

#endif  // QSN_CIRCUIT_H_
