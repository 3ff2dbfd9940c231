#ifndef QSN_MATCHING_H_
#define QSN_MATCHING_H_

#include <cstdint>
#include <vector>

namespace qsn {

inline constexpr int64_t kNoEdge = -1;

/// Exact minimum-weight perfect matching on a dense undirected graph
/// (primal-dual blossom algorithm, O(V^3)).
///
/// `weights[i][j]` >= 0 is the edge weight, kNoEdge marks an absent
/// edge. Vertex count must be even. Returns the mate of each vertex.
/// Throws std::invalid_argument when no perfect matching exists over
/// the present edges.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& weights);

/// Total weight of a mate vector under `weights` (each edge counted once).
int64_t matching_weight(const std::vector<int>& mate, const std::vector<std::vector<int64_t>>& weights);

}  // namespace qsn

#endif  // QSN_MATCHING_H_
