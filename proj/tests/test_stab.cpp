#include <cmath>
#include <map>
#include <stdexcept>

#include <doctest.h>

#include "qsn/circuit.h"
#include "qsn/frame.h"
#include "qsn/pauli.h"
#include "qsn/rng.h"
#include "qsn/tableau.h"

using namespace qsn;

TEST_CASE("pauli algebra: products track phases and commutation") {
  auto x = PauliString::from_text("X");
  auto z = PauliString::from_text("Z");
  auto y = PauliString::from_text("Y");
  CHECK_FALSE(x.commutes_with(z));
  CHECK(x.commutes_with(x));

  // (Z*X) then (X*Z) composes to +I; the intermediate +/-i phases cancel.
  PauliString a = x;
  a.left_mul(z);
  PauliString b = z;
  b.left_mul(x);
  a.left_mul(b);
  CHECK(a.is_identity());
  CHECK_FALSE(a.sign());

  PauliString yy = y;
  yy.left_mul(y);
  CHECK(yy.is_identity());
  CHECK_FALSE(yy.sign());

  CHECK(PauliString::from_text("-XIZ").to_text() == "-XIZ");
  CHECK(PauliString::from_text("+XYZI").weight() == 3);
}

TEST_CASE("eigenstate measurements are deterministic") {
  Rng rng(7);
  Tableau t(1);
  t.h(0);
  CHECK(t.x_deterministic(0));
  CHECK_FALSE(t.measure_x(0, rng));  // |+> gives +1

  Tableau bell(2);
  bell.h(0);
  bell.cnot(0, 1);
  auto zz = PauliString::from_text("ZZ");
  auto xx = PauliString::from_text("XX");
  CHECK(bell.peek_pauli(zz) == 0);
  CHECK(bell.peek_pauli(xx) == 0);
  CHECK_FALSE(bell.measure_pauli(zz, rng));
  // -ZZ measures -1 deterministically.
  auto minus_zz = PauliString::from_text("-ZZ");
  CHECK(bell.measure_pauli(minus_zz, rng));
}

TEST_CASE("random measurement outcomes are uniform (chi-square over 1e4 trials)") {
  Rng rng(1234);
  int ones = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    Tableau t(1);
    t.h(0);  // |+>
    ones += t.measure_z(0, rng);
  }
  // chi-square, 1 dof; 10.83 is the 0.1% tail.
  const double expected = trials / 2.0;
  const double chi2 = 2.0 * (ones - expected) * (ones - expected) / expected;
  CHECK(chi2 < 10.83);
}

TEST_CASE("projection is idempotent: repeated X measurement repeats the outcome") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    Tableau t(1);  // |0>
    const bool first = t.measure_x(0, rng);
    CHECK(t.measure_x(0, rng) == first);
    CHECK(t.x_deterministic(0));
  }
}

TEST_CASE("alternating anticommuting measurements give independent uniform outcomes") {
  Rng rng(99);
  std::map<std::pair<bool, bool>, int> counts;
  const int trials = 10000;
  Tableau t(1);
  for (int i = 0; i < trials; ++i) {
    const bool zx = t.measure_z(0, rng);
    const bool xx = t.measure_x(0, rng);
    ++counts[{zx, xx}];
  }
  double chi2 = 0.0;
  const double expected = trials / 4.0;
  for (bool a : {false, true})
    for (bool b : {false, true}) {
      const double observed = counts[{a, b}];
      chi2 += (observed - expected) * (observed - expected) / expected;
    }
  CHECK(chi2 < 16.27);  // 0.1% tail, 3 dof
}

TEST_CASE("tableau invariants survive random circuits and measurements") {
  Rng rng(4242);
  for (int round = 0; round < 30; ++round) {
    Tableau t(6);
    for (int step = 0; step < 60; ++step) {
      const uint32_t q = static_cast<uint32_t>(rng.next_below(6));
      switch (rng.next_below(5)) {
        case 0: t.h(q); break;
        case 1: t.s(q); break;
        case 2: {
          const uint32_t r = static_cast<uint32_t>(rng.next_below(6));
          if (r != q) t.cnot(q, r);
          break;
        }
        case 3: t.measure_z(q, rng); break;
        case 4: t.measure_x(q, rng); break;
      }
    }
    CHECK(t.check_invariants());
  }
}

TEST_CASE("measure_pauli projects anticommuting multi-qubit observables") {
  Rng rng(5);
  Tableau t(3);  // |000>
  auto xxx = PauliString::from_text("XXX");
  const bool outcome = t.measure_pauli(xxx, rng);
  CHECK(t.peek_pauli(xxx) == (outcome ? 1 : 0));
  // ZZ on qubits 0,1 commutes with XXX and stays deterministic +1.
  auto zzi = PauliString::from_text("ZZI");
  CHECK(t.peek_pauli(zzi) == 0);
}

TEST_CASE("frame sampler: p=0 leaves no flips and an empty frame") {
  Circuit c;
  c.append(0, OpKind::kInitZ, 0);
  c.append(0, OpKind::kInitX, 1);
  c.append(1, OpKind::kCnot, 1, 0);
  c.append(2, OpKind::kMeasureZ, 0);
  c.append(2, OpKind::kMeasureX, 1);
  FrameSampler sampler(c, 0.0);
  Rng rng(1);
  FrameTrace trace;
  sampler.sample(rng, trace);
  CHECK(trace.measurement_flips == std::vector<uint8_t>{0, 0});
  CHECK(trace.final_frame.is_clear());
}

TEST_CASE("frame sampler: forced single-qubit error is uniform over X, Y, Z") {
  Circuit c;
  c.append(0, OpKind::kIdle, 0);
  FrameSampler sampler(c, 0.999999999);
  Rng rng(77);
  int counts[3] = {0, 0, 0};  // X, Y, Z
  const int trials = 30000;
  FrameTrace trace;
  for (int i = 0; i < trials; ++i) {
    sampler.sample(rng, trace);
    const bool x = trace.final_frame.x[0], z = trace.final_frame.z[0];
    REQUIRE((x || z));
    counts[x && z ? 1 : (x ? 0 : 2)]++;
  }
  double chi2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double e = trials / 3.0;
    chi2 += (counts[k] - e) * (counts[k] - e) / e;
  }
  CHECK(chi2 < 13.82);  // 0.1% tail, 2 dof
}

TEST_CASE("depolarizing after CNOT hits each of the 15 Paulis at p/15 (3 sigma over 1e6)") {
  Circuit c;
  c.append(0, OpKind::kCnot, 0, 1);
  const double p = 0.9;
  FrameSampler sampler(c, p);
  Rng rng(2024);
  std::map<int, long> counts;
  const long trials = 1000000;
  FrameTrace trace;
  for (long i = 0; i < trials; ++i) {
    sampler.sample(rng, trace);
    const int code = trace.final_frame.x[0] | (trace.final_frame.z[0] << 1) |
                     (trace.final_frame.x[1] << 2) | (trace.final_frame.z[1] << 3);
    ++counts[code];
  }
  const double per_pauli = trials * p / 15.0;
  const double sigma = std::sqrt(per_pauli * (1.0 - p / 15.0));
  for (int code = 1; code < 16; ++code) {
    CHECK(std::abs(counts[code] - per_pauli) < 3.0 * sigma);
  }
  CHECK(std::abs(counts[0] - trials * (1.0 - p)) < 3.0 * std::sqrt(trials * p * (1.0 - p)));
}

TEST_CASE("identical seeds give identical trajectories") {
  Circuit c;
  for (uint32_t q = 0; q < 4; ++q) c.append(0, OpKind::kInitZ, q);
  for (uint32_t t = 1; t <= 3; ++t)
    for (uint32_t q = 0; q < 4; q += 2) c.append(t, OpKind::kCnot, q, q + 1);
  for (uint32_t q = 0; q < 4; ++q) c.append(4, OpKind::kMeasureZ, q);
  FrameSampler sampler(c, 0.2);
  FrameTrace a, b;
  Rng r1 = Rng::substream(42, 7);
  Rng r2 = Rng::substream(42, 7);
  sampler.sample(r1, a);
  sampler.sample(r2, b);
  CHECK(a.measurement_flips == b.measurement_flips);
  CHECK(a.final_frame.x == b.final_frame.x);
  CHECK(a.final_frame.z == b.final_frame.z);
  Rng r3 = Rng::substream(42, 8);
  FrameTrace other;
  sampler.sample(r3, other);  // different substream, almost surely different
  const bool same = other.measurement_flips == a.measurement_flips &&
                    other.final_frame.x == a.final_frame.x && other.final_frame.z == a.final_frame.z;
  CHECK_FALSE(same);
}

namespace {

// Reference outcomes and determinism pattern from a noiseless tableau run.
struct ReferenceRun {
  std::vector<uint8_t> outcomes;
  std::vector<uint8_t> random_mask;
};

ReferenceRun reference_run(const Circuit& c, Rng& rng) {
  ReferenceRun ref;
  Tableau t(c.num_qubits);
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case OpKind::kInitZ: t.reset_z(op.q0, rng); break;
      case OpKind::kInitX: t.reset_x(op.q0, rng); break;
      case OpKind::kCnot: t.cnot(op.q0, op.q1); break;
      case OpKind::kMeasureZ:
        ref.random_mask.push_back(!t.z_deterministic(op.q0));
        ref.outcomes.push_back(t.measure_z(op.q0, rng));
        break;
      case OpKind::kMeasureX:
        ref.random_mask.push_back(!t.x_deterministic(op.q0));
        ref.outcomes.push_back(t.measure_x(op.q0, rng));
        break;
      case OpKind::kIdle: break;
    }
  }
  return ref;
}

// Full noisy tableau simulation under the sampler's noise model.
std::vector<uint8_t> noisy_tableau_run(const Circuit& c, double p, Rng& rng) {
  Tableau t(c.num_qubits);
  std::vector<uint8_t> outcomes;
  auto depolarize1 = [&](uint32_t q) {
    if (!rng.bernoulli(p)) return;
    switch (rng.next_below(3)) {
      case 0: t.x(q); break;
      case 1: t.y(q); break;
      default: t.z(q); break;
    }
  };
  auto depolarize2 = [&](uint32_t q0, uint32_t q1) {
    if (!rng.bernoulli(p)) return;
    const uint64_t which = rng.next_below(15) + 1;
    const uint64_t a = which & 3, b = which >> 2;
    if (a == 1) t.x(q0);
    if (a == 2) t.z(q0);
    if (a == 3) t.y(q0);
    if (b == 1) t.x(q1);
    if (b == 2) t.z(q1);
    if (b == 3) t.y(q1);
  };
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case OpKind::kInitZ:
        t.reset_z(op.q0, rng);
        depolarize1(op.q0);
        break;
      case OpKind::kInitX:
        t.reset_x(op.q0, rng);
        depolarize1(op.q0);
        break;
      case OpKind::kCnot:
        t.cnot(op.q0, op.q1);
        depolarize2(op.q0, op.q1);
        break;
      case OpKind::kMeasureZ:
        depolarize1(op.q0);
        outcomes.push_back(t.measure_z(op.q0, rng));
        break;
      case OpKind::kMeasureX:
        depolarize1(op.q0);
        outcomes.push_back(t.measure_x(op.q0, rng));
        break;
      case OpKind::kIdle:
        depolarize1(op.q0);
        break;
    }
  }
  return outcomes;
}

Circuit random_deterministic_circuit(Rng& rng) {
  // init -> CNOT layers -> measurements; rejection keeps only circuits
  // whose noiseless reference outcomes are all deterministic, which makes
  // the two engines' output distributions directly comparable.
  for (;;) {
    Circuit c;
    const int n = 6;
    for (uint32_t q = 0; q < n; ++q) c.append(0, rng.next_bool() ? OpKind::kInitX : OpKind::kInitZ, q);
    for (uint32_t t = 1; t <= 4; ++t) {
      std::vector<uint32_t> order(n);
      for (uint32_t q = 0; q < n; ++q) order[q] = q;
      for (uint32_t q = n - 1; q > 0; --q) std::swap(order[q], order[rng.next_below(q + 1)]);
      for (uint32_t k = 0; k + 1 < n; k += 2)
        if (rng.next_bool()) c.append(t, OpKind::kCnot, order[k], order[k + 1]);
    }
    for (uint32_t q = 0; q < n; ++q)
      c.append(5, rng.next_bool() ? OpKind::kMeasureX : OpKind::kMeasureZ, q);
    Rng probe(1);
    const ReferenceRun ref = reference_run(c, probe);
    bool any_random = false;
    for (uint8_t r : ref.random_mask) any_random |= r != 0;
    if (!any_random) return c;
  }
}

}  // namespace

TEST_CASE("frame sampling matches full tableau simulation on outcome distributions") {
  Rng circuit_rng(31337);
  for (int variant = 0; variant < 4; ++variant) {
    const Circuit c = random_deterministic_circuit(circuit_rng);
    Rng probe(1);
    const ReferenceRun ref = reference_run(c, probe);
    const double p = 0.08;
    FrameSampler sampler(c, p);

    const int trials = 40000;
    const size_t m = ref.outcomes.size();
    std::map<std::vector<uint8_t>, int> frame_counts, tableau_counts;
    FrameTrace trace;
    for (int i = 0; i < trials; ++i) {
      Rng rng = Rng::substream(1000, static_cast<uint64_t>(i));
      sampler.sample(rng, trace);
      std::vector<uint8_t> outcome(m);
      for (size_t k = 0; k < m; ++k) outcome[k] = ref.outcomes[k] ^ trace.measurement_flips[k];
      ++frame_counts[outcome];
    }
    for (int i = 0; i < trials; ++i) {
      Rng rng = Rng::substream(2000, static_cast<uint64_t>(i));
      ++tableau_counts[noisy_tableau_run(c, p, rng)];
    }
    double tvd = 0.0;
    std::map<std::vector<uint8_t>, int> all = frame_counts;
    for (const auto& [key, count] : tableau_counts) all[key] += 0;
    for (const auto& [key, unused] : all) {
      const auto fa = frame_counts.find(key);
      const auto fb = tableau_counts.find(key);
      const double da = fa == frame_counts.end() ? 0.0 : static_cast<double>(fa->second) / trials;
      const double db = fb == tableau_counts.end() ? 0.0 : static_cast<double>(fb->second) / trials;
      tvd += std::abs(da - db);
    }
    tvd /= 2.0;
    CHECK(tvd < 0.02);
  }
}

TEST_CASE("circuit text round trip and validation") {
  Circuit c;
  c.append(0, OpKind::kInitZ, 0);
  c.append(0, OpKind::kInitX, 1);
  c.append(1, OpKind::kCnot, 0, 1);
  c.append(2, OpKind::kMeasureZ, 1);
  c.append(2, OpKind::kIdle, 0);
  c.validate();
  const Circuit back = Circuit::from_text(c.to_text());
  REQUIRE(back.ops.size() == c.ops.size());
  for (size_t i = 0; i < c.ops.size(); ++i) {
    CHECK(back.ops[i].time == c.ops[i].time);
    CHECK(back.ops[i].kind == c.ops[i].kind);
    CHECK(back.ops[i].q0 == c.ops[i].q0);
    CHECK(back.ops[i].q1 == c.ops[i].q1);
  }
  CHECK(back.num_qubits == c.num_qubits);

  CHECK_THROWS_AS((void)Circuit::from_text("0 HADAMARD 1"), std::invalid_argument);
  CHECK_THROWS_AS((void)Circuit::from_text("0 CNOT 1"), std::invalid_argument);

  Circuit clash;
  clash.append(0, OpKind::kCnot, 0, 1);
  clash.append(0, OpKind::kIdle, 1);
  CHECK_THROWS_AS(clash.validate(), std::invalid_argument);
}

TEST_CASE("property: random circuits round-trip through the text format") {
  Rng rng(555);
  for (int it = 0; it < 50; ++it) {
    Circuit c;
    uint32_t t = 0;
    for (int k = 0; k < 40; ++k) {
      const uint32_t q = static_cast<uint32_t>(rng.next_below(8));
      switch (rng.next_below(6)) {
        case 0: c.append(t, OpKind::kInitZ, q); break;
        case 1: c.append(t, OpKind::kInitX, q); break;
        case 2: {
          const uint32_t r = static_cast<uint32_t>(rng.next_below(8));
          if (r != q) c.append(t, OpKind::kCnot, q, r);
          break;
        }
        case 3: c.append(t, OpKind::kMeasureZ, q); break;
        case 4: c.append(t, OpKind::kMeasureX, q); break;
        case 5: c.append(t, OpKind::kIdle, q); break;
      }
      ++t;  // one op per step keeps it collision-free
    }
    const Circuit back = Circuit::from_text(c.to_text());
    CHECK(back.to_text() == c.to_text());
  }
}
