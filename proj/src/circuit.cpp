#include "qsn/circuit.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsn {

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kInitZ: return "INIT_Z";
    case OpKind::kInitX: return "INIT_X";
    case OpKind::kCnot: return "CNOT";
    case OpKind::kMeasureZ: return "MEASURE_Z";
    case OpKind::kMeasureX: return "MEASURE_X";
    case OpKind::kIdle: return "IDLE";
  }
  return "?";
}

bool op_is_measurement(OpKind kind) {
  return kind == OpKind::kMeasureZ || kind == OpKind::kMeasureX;
}

bool op_is_two_qubit(OpKind kind) { return kind == OpKind::kCnot; }

void Circuit::append(uint32_t time, OpKind kind, uint32_t q0, uint32_t q1) {
  ops.push_back({time, kind, q0, q1});
  num_qubits = std::max({num_qubits, q0 + 1, op_is_two_qubit(kind) ? q1 + 1 : 0});
}

size_t Circuit::measurement_count() const {
  size_t count = 0;
  for (const auto& op : ops) count += op_is_measurement(op.kind);
  return count;
}

uint32_t Circuit::max_time() const {
  uint32_t t = 0;
  for (const auto& op : ops) t = std::max(t, op.time);
  return t;
}

void Circuit::validate() const {
  std::set<std::pair<uint32_t, uint32_t>> busy;  // (time, qubit)
  uint32_t prev_time = 0;
  for (const auto& op : ops) {
    if (op.time < prev_time) throw std::invalid_argument("circuit: ops not time-ordered");
    prev_time = op.time;
    if (op.q0 >= num_qubits || (op_is_two_qubit(op.kind) && op.q1 >= num_qubits))
      throw std::invalid_argument("circuit: qubit index out of range");
    if (!busy.insert({op.time, op.q0}).second)
      throw std::invalid_argument("circuit: qubit " + std::to_string(op.q0) + " used twice at step " +
                                  std::to_string(op.time));
    if (op_is_two_qubit(op.kind)) {
      if (op.q1 == op.q0) throw std::invalid_argument("circuit: CNOT control == target");
      if (!busy.insert({op.time, op.q1}).second)
        throw std::invalid_argument("circuit: qubit " + std::to_string(op.q1) + " used twice at step " +
                                    std::to_string(op.time));
    }
  }
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "# qubits " << num_qubits << "\n";
  for (const auto& op : ops) {
    out << op.time << ' ' << op_name(op.kind) << ' ' << op.q0;
    if (op_is_two_qubit(op.kind)) out << ' ' << op.q1;
    out << '\n';
  }
  return out.str();
}

static OpKind op_from_name(const std::string& name, int line_no) {
  for (OpKind k : {OpKind::kInitZ, OpKind::kInitX, OpKind::kCnot, OpKind::kMeasureZ, OpKind::kMeasureX,
                   OpKind::kIdle})
    if (name == op_name(k)) return k;
  throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": unsupported gate '" + name + "'");
}

Circuit Circuit::from_stream(std::istream& in) {
  Circuit c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long time = -1;
    std::string name;
    if (!(fields >> time >> name) || time < 0)
      throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": expected '<time> <OP> <qubits>'");
    const OpKind kind = op_from_name(name, line_no);
    long long q0 = -1, q1 = -1;
    if (!(fields >> q0) || q0 < 0)
      throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": missing qubit");
    if (op_is_two_qubit(kind) && (!(fields >> q1) || q1 < 0))
      throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": CNOT needs two qubits");
    c.append(static_cast<uint32_t>(time), kind, static_cast<uint32_t>(q0),
             q1 < 0 ? 0 : static_cast<uint32_t>(q1));
  }
  std::stable_sort(c.ops.begin(), c.ops.end(), [](const TimedOp& a, const TimedOp& b) { return a.time < b.time; });
  return c;
}

Circuit Circuit::from_text(const std::string& text) {
  std::istringstream in(text);
  return from_stream(in);
}

}  // namespace qsn
