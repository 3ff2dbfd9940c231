#ifndef QSN_DETECTION_H_
#define QSN_DETECTION_H_

#include <cstdint>
#include <vector>

#include "qsn/circuit.h"
#include "qsn/frame.h"
#include "qsn/patch.h"

namespace qsn::surface {

/// A detection-graph edge: the pair of syndrome-comparison events a
/// single fault can flip (node_b = -1 for a boundary edge), plus the
/// end-of-cycle data-error footprint of a canonical fault producing it.
struct DetectorEdge {
  int node_a = -1;
  int node_b = -1;  // -1: spatial/temporal boundary
  std::vector<uint16_t> effect_sites;
  bool flips_logical = false;
  double probability = 0.0;  // total probability of the faults behind it
  int64_t weight = 1;
};

enum class EdgeWeighting {
  kUnit,           // every edge costs 1
  kLogLikelihood,  // integer-scaled -log(edge probability)
};

/// Matching graph for one check type over rounds 1..R+1 (R noisy rounds
/// plus the ideal closing round). Node id = (round-1)*num_checks + check.
/// All edges carry unit weight; distances are BFS shortest paths.
inline constexpr int64_t kUnreachable = INT64_MAX / 4;

struct SectorGraph {
  bool x_checks = false;  // nodes belong to X-type checks (they detect Z errors)
  int num_checks = 0;
  int num_detector_rounds = 0;
  int num_sites = 0;  // grid sites edge effects can touch
  std::vector<DetectorEdge> edges;
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // node -> (node, edge index)
  std::vector<std::vector<int>> boundary_edge_ids;          // node -> edge indices
  std::vector<int64_t> dist;                                // flattened all-pairs path weights
  std::vector<int64_t> boundary_dist;

  int num_nodes() const { return num_checks * num_detector_rounds; }
  int node(int check_index, int round /* 1-based */) const {
    return (round - 1) * num_checks + check_index;
  }
  int64_t distance(int a, int b) const { return dist[static_cast<size_t>(a) * num_nodes() + b]; }
};

/// Everything reusable across trials at fixed (patch, rounds): the noisy
/// cycle circuit and both sector graphs derived from it by exhaustive
/// single-fault injection. Requires d >= 3 (at d = 2 a single hook fault
/// already equals a logical operator and the one-or-two-events invariant
/// cannot hold).
struct DetectionGraphs {
  CodePatch patch;
  int rounds = 0;
  Circuit circuit;
  std::vector<int> z_check_ids, x_check_ids;  // indices into patch.checks
  SectorGraph z_sector, x_sector;
};

/// Unit weighting ignores `p`; log-likelihood weighting scores each edge
/// by the total probability of the faults that generate it at rate p.
DetectionGraphs build_detection_graphs(const CodePatch& patch, int rounds,
                                       EdgeWeighting weighting = EdgeWeighting::kUnit, double p = 0.0);

/// Syndrome of a data-error frame against the patch checks: for each
/// check, the parity of the frame's anticommuting component over the
/// check support (X errors flip Z checks and vice versa).
std::vector<uint8_t> ideal_syndrome(const CodePatch& patch, const PauliFrame& frame);

/// Detection events fired by one sampled trajectory, per sector.
/// measurement_flips must come from `graphs.circuit`; the closing round
/// is computed from the final frame.
struct FiredEvents {
  std::vector<int> z_nodes, x_nodes;
};
FiredEvents detect_events(const DetectionGraphs& graphs, const std::vector<uint8_t>& measurement_flips,
                          const PauliFrame& final_frame);

}  // namespace qsn::surface

#endif  // QSN_DETECTION_H_
