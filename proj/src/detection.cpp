#include "qsn/detection.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace qsn::surface {
namespace {

// Noiseless propagation of one injected Pauli through the tail of the
// circuit. `at_op` is the op index the fault attaches to; `pre` inserts
// it before that op (measurement read errors), otherwise after.
struct FaultEffect {
  std::vector<uint8_t> flips;  // per measurement, full circuit order
  PauliFrame frame;
};

void propagate_fault(const Circuit& circuit, size_t at_op, bool pre, const PauliFrame& injected,
                     FaultEffect& out) {
  out.flips.assign(circuit.measurement_count(), 0);
  auto& f = out.frame;
  if (f.num_qubits() != circuit.num_qubits) f = PauliFrame(circuit.num_qubits);
  std::fill(f.x.begin(), f.x.end(), 0);
  std::fill(f.z.begin(), f.z.end(), 0);

  size_t measure_index = 0;
  for (size_t i = 0; i < circuit.ops.size(); ++i) {
    const auto& op = circuit.ops[i];
    if (i == at_op && pre) f.xor_with(injected);
    switch (op.kind) {
      case OpKind::kInitZ:
      case OpKind::kInitX:
        f.x[op.q0] = 0;
        f.z[op.q0] = 0;
        break;
      case OpKind::kCnot:
        f.x[op.q1] ^= f.x[op.q0];
        f.z[op.q0] ^= f.z[op.q1];
        break;
      case OpKind::kMeasureZ:
        out.flips[measure_index++] = f.x[op.q0];
        break;
      case OpKind::kMeasureX:
        out.flips[measure_index++] = f.z[op.q0];
        break;
      case OpKind::kIdle:
        break;
    }
    if (i == at_op && !pre) f.xor_with(injected);
  }
}

std::vector<int> fired_nodes_for_sector(const SectorGraph& sector, const std::vector<int>& check_ids,
                                        const std::vector<int>& check_pos_in_round,
                                        const std::vector<uint8_t>& flips, int checks_per_round, int rounds,
                                        const std::vector<uint8_t>& closing) {
  std::vector<int> fired;
  for (size_t k = 0; k < check_ids.size(); ++k) {
    uint8_t prev = 0;
    for (int r = 1; r <= rounds; ++r) {
      const uint8_t cur = flips[static_cast<size_t>(r - 1) * checks_per_round + check_pos_in_round[k]];
      if (cur != prev) fired.push_back(sector.node(static_cast<int>(k), r));
      prev = cur;
    }
    if (closing[k] != prev) fired.push_back(sector.node(static_cast<int>(k), rounds + 1));
  }
  return fired;
}

// Dijkstra over the sector's edge weights (all BFS-equivalent when the
// weights are uniform).
void run_dijkstra(const SectorGraph& sector, std::vector<std::pair<int64_t, int>>& heap,
                  int64_t* dist_row) {
  std::make_heap(heap.begin(), heap.end(), std::greater<>());
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    const auto [d, u] = heap.back();
    heap.pop_back();
    if (d != dist_row[u]) continue;
    for (const auto& [v, edge] : sector.adjacency[u]) {
      const int64_t nd = d + sector.edges[edge].weight;
      if (nd < dist_row[v]) {
        dist_row[v] = nd;
        heap.push_back({nd, v});
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
      }
    }
  }
}

void all_pairs_shortest_paths(SectorGraph& sector) {
  const int n = sector.num_nodes();
  sector.dist.assign(static_cast<size_t>(n) * n, kUnreachable);
  std::vector<std::pair<int64_t, int>> heap;
  for (int start = 0; start < n; ++start) {
    auto* row = &sector.dist[static_cast<size_t>(start) * n];
    row[start] = 0;
    heap.assign(1, {0, start});
    run_dijkstra(sector, heap, row);
  }
  // Boundary distances: multi-source run seeded by the boundary edges.
  sector.boundary_dist.assign(n, kUnreachable);
  heap.clear();
  for (int u = 0; u < n; ++u)
    for (int edge_id : sector.boundary_edge_ids[u]) {
      const int64_t w = sector.edges[edge_id].weight;
      if (w < sector.boundary_dist[u]) {
        sector.boundary_dist[u] = w;
        heap.push_back({w, u});
      }
    }
  run_dijkstra(sector, heap, sector.boundary_dist.data());
}

}  // namespace

std::vector<uint8_t> ideal_syndrome(const CodePatch& patch, const PauliFrame& frame) {
  std::vector<uint8_t> syndrome(patch.checks.size(), 0);
  for (size_t k = 0; k < patch.checks.size(); ++k) {
    const auto& check = patch.checks[k];
    uint8_t parity = 0;
    for (int q : check.data_sites) parity ^= check.x_type ? frame.z[q] : frame.x[q];
    syndrome[k] = parity;
  }
  return syndrome;
}

FiredEvents detect_events(const DetectionGraphs& graphs, const std::vector<uint8_t>& measurement_flips,
                          const PauliFrame& final_frame) {
  const int checks_per_round = static_cast<int>(graphs.patch.checks.size());
  if (measurement_flips.size() != static_cast<size_t>(checks_per_round) * graphs.rounds)
    throw std::invalid_argument("measurement record does not match the cycle circuit");
  const auto closing_all = ideal_syndrome(graphs.patch, final_frame);

  FiredEvents events;
  for (int sector_pick = 0; sector_pick < 2; ++sector_pick) {
    const bool x_checks = sector_pick == 1;
    const auto& check_ids = x_checks ? graphs.x_check_ids : graphs.z_check_ids;
    const auto& sector = x_checks ? graphs.x_sector : graphs.z_sector;
    std::vector<uint8_t> closing(check_ids.size());
    for (size_t k = 0; k < check_ids.size(); ++k) closing[k] = closing_all[check_ids[k]];
    std::vector<int> pos(check_ids.begin(), check_ids.end());
    auto& out = x_checks ? events.x_nodes : events.z_nodes;
    out = fired_nodes_for_sector(sector, check_ids, pos, measurement_flips, checks_per_round, graphs.rounds,
                                 closing);
  }
  return events;
}

DetectionGraphs build_detection_graphs(const CodePatch& patch, int rounds, EdgeWeighting weighting,
                                       double p) {
  if (patch.distance < 3)
    throw std::invalid_argument(
        "detection graphs need distance >= 3 (at d=2 single hook faults reach logical weight)");
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (weighting == EdgeWeighting::kLogLikelihood && !(p > 0.0 && p < 1.0))
    throw std::invalid_argument("log-likelihood weighting needs the physical error rate");

  DetectionGraphs graphs;
  graphs.patch = patch;
  graphs.rounds = rounds;
  graphs.circuit = syndrome_circuit(patch, rounds);

  for (size_t k = 0; k < patch.checks.size(); ++k)
    (patch.checks[k].x_type ? graphs.x_check_ids : graphs.z_check_ids).push_back(static_cast<int>(k));

  for (int sector_pick = 0; sector_pick < 2; ++sector_pick) {
    auto& sector = sector_pick ? graphs.x_sector : graphs.z_sector;
    sector.x_checks = sector_pick == 1;
    sector.num_checks =
        static_cast<int>((sector.x_checks ? graphs.x_check_ids : graphs.z_check_ids).size());
    sector.num_detector_rounds = rounds + 1;
    sector.num_sites = patch.num_sites();
  }

  // Logical supports for classifying fault footprints.
  std::vector<uint8_t> on_logical_z(patch.num_sites(), 0), on_logical_x(patch.num_sites(), 0);
  for (int q : patch.logical_z_sites) on_logical_z[q] = 1;
  for (int q : patch.logical_x_sites) on_logical_x[q] = 1;

  struct PendingEdge {
    std::vector<uint16_t> effect;
    bool flips_logical;
    double probability_share;  // in units of p
  };
  std::map<std::pair<int, int>, PendingEdge> edge_map[2];  // [sector]

  const Circuit& circuit = graphs.circuit;
  FaultEffect effect;
  PauliFrame injected(circuit.num_qubits);

  auto consider_fault = [&](size_t op_index, bool pre, const PauliFrame& fault, double share) {
    propagate_fault(circuit, op_index, pre, fault, effect);

    for (int sector_pick = 0; sector_pick < 2; ++sector_pick) {
      const bool x_checks = sector_pick == 1;
      auto& sector = x_checks ? graphs.x_sector : graphs.z_sector;
      const auto& check_ids = x_checks ? graphs.x_check_ids : graphs.z_check_ids;

      std::vector<int> fired;
      for (size_t k = 0; k < check_ids.size(); ++k) {
        const int check = check_ids[k];
        uint8_t prev = 0;
        for (int r = 1; r <= rounds; ++r) {
          const uint8_t cur = effect.flips[static_cast<size_t>(r - 1) * patch.checks.size() + check];
          if (cur != prev) fired.push_back(sector.node(static_cast<int>(k), r));
          prev = cur;
        }
        uint8_t closing = 0;
        for (int q : patch.checks[check].data_sites)
          closing ^= x_checks ? effect.frame.z[q] : effect.frame.x[q];
        if (closing != prev) fired.push_back(sector.node(static_cast<int>(k), rounds + 1));
      }

      std::vector<uint16_t> footprint;
      bool logical = false;
      for (int q : patch.data_sites) {
        const uint8_t hit = x_checks ? effect.frame.z[q] : effect.frame.x[q];
        if (!hit) continue;
        footprint.push_back(static_cast<uint16_t>(q));
        logical ^= x_checks ? on_logical_x[q] : on_logical_z[q];
      }

      if (fired.empty()) {
        if (logical)
          throw std::runtime_error("single fault with undetectable logical footprint; graph invalid");
        continue;
      }
      if (fired.size() > 2)
        throw std::runtime_error("single fault fired more than two detection events in one sector");

      const std::pair<int, int> key =
          fired.size() == 2 ? std::make_pair(std::min(fired[0], fired[1]), std::max(fired[0], fired[1]))
                            : std::make_pair(fired[0], -1);
      auto [it, inserted] = edge_map[sector_pick].try_emplace(key, PendingEdge{footprint, logical, share});
      if (!inserted) {
        if (it->second.flips_logical != logical)
          throw std::runtime_error("two faults share detector signature but differ on the logical effect");
        it->second.probability_share += share;
      }
    }
  };

  for (size_t i = 0; i < circuit.ops.size(); ++i) {
    const auto& op = circuit.ops[i];
    const bool pre = op_is_measurement(op.kind);
    if (op.kind == OpKind::kCnot) {
      for (int code = 1; code < 16; ++code) {
        std::fill(injected.x.begin(), injected.x.end(), 0);
        std::fill(injected.z.begin(), injected.z.end(), 0);
        injected.x[op.q0] = code & 1;
        injected.z[op.q0] = (code >> 1) & 1;
        injected.x[op.q1] = (code >> 2) & 1;
        injected.z[op.q1] = (code >> 3) & 1;
        consider_fault(i, false, injected, 1.0 / 15.0);
      }
    } else {
      for (int code = 1; code < 4; ++code) {
        std::fill(injected.x.begin(), injected.x.end(), 0);
        std::fill(injected.z.begin(), injected.z.end(), 0);
        injected.x[op.q0] = code & 1;
        injected.z[op.q0] = (code >> 1) & 1;
        consider_fault(i, pre, injected, 1.0 / 3.0);
      }
    }
  }

  for (int sector_pick = 0; sector_pick < 2; ++sector_pick) {
    auto& sector = sector_pick ? graphs.x_sector : graphs.z_sector;
    sector.adjacency.assign(sector.num_nodes(), {});
    sector.boundary_edge_ids.assign(sector.num_nodes(), {});
    for (auto& [key, pending] : edge_map[sector_pick]) {
      DetectorEdge edge;
      edge.node_a = key.first;
      edge.node_b = key.second;
      edge.effect_sites = std::move(pending.effect);
      edge.flips_logical = pending.flips_logical;
      edge.probability = pending.probability_share * p;
      if (weighting == EdgeWeighting::kLogLikelihood) {
        // Integer-scaled -log(probability); the scale only has to keep
        // relative precision, exact arithmetic does the rest.
        constexpr double kScale = 128.0;
        edge.weight = std::max<int64_t>(1, std::llround(-std::log(edge.probability) * kScale));
      }
      const int id = static_cast<int>(sector.edges.size());
      if (edge.node_b < 0) {
        sector.boundary_edge_ids[edge.node_a].push_back(id);
      } else {
        sector.adjacency[edge.node_a].push_back({edge.node_b, id});
        sector.adjacency[edge.node_b].push_back({edge.node_a, id});
      }
      sector.edges.push_back(std::move(edge));
    }
    all_pairs_shortest_paths(sector);
  }
  return graphs;
}

}  // namespace qsn::surface
