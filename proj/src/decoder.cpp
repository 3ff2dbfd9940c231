#include "qsn/decoder.h"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "qsn/matching.h"

namespace qsn::surface {
namespace {

void apply_edge(const SectorGraph& sector, int edge_id, std::vector<uint8_t>& mask) {
  for (uint16_t q : sector.edges[edge_id].effect_sites) mask[q] ^= 1;
}

// Walk a shortest path from u to v (or to the boundary when v < 0),
// XORing edge effects. Deterministic: lowest neighbor id first.
void apply_path(const SectorGraph& sector, int u, int v, std::vector<uint8_t>& mask) {
  int cur = u;
  if (v >= 0) {
    while (cur != v) {
      int best = -1, best_edge = -1;
      const int64_t have = sector.distance(cur, v);
      for (const auto& [nb, edge] : sector.adjacency[cur])
        if (sector.distance(nb, v) + sector.edges[edge].weight == have && (best < 0 || nb < best)) {
          best = nb;
          best_edge = edge;
        }
      assert(best >= 0);
      apply_edge(sector, best_edge, mask);
      cur = best;
    }
    return;
  }
  while (true) {
    const int64_t bd = sector.boundary_dist[cur];
    assert(bd != kUnreachable);
    for (int edge_id : sector.boundary_edge_ids[cur])
      if (sector.edges[edge_id].weight == bd) {
        apply_edge(sector, edge_id, mask);
        return;
      }
    int best = -1, best_edge = -1;
    for (const auto& [nb, edge] : sector.adjacency[cur])
      if (sector.boundary_dist[nb] + sector.edges[edge].weight == bd && (best < 0 || nb < best)) {
        best = nb;
        best_edge = edge;
      }
    assert(best >= 0);
    apply_edge(sector, best_edge, mask);
    cur = best;
  }
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

SectorCorrection decode(const SectorGraph& sector, const std::vector<int>& fired_events) {
  SectorCorrection result;
  if (fired_events.empty()) return result;

  std::vector<int> fired = fired_events;
  std::sort(fired.begin(), fired.end());
  const int k = static_cast<int>(fired.size());
  for (int u : fired)
    if (u < 0 || u >= sector.num_nodes()) throw std::invalid_argument("fired event outside graph");

  std::vector<uint8_t> mask(sector.num_sites, 0);
  // A pair match never beats two boundary matches once
  // dist >= bdist(u) + bdist(v), so such edges are pruned and the
  // remaining components decode independently at equal total weight.
  DisjointSet components(k);
  std::vector<std::vector<int64_t>> pair_dist(k, std::vector<int64_t>(k, kNoEdge));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int64_t d = sector.distance(fired[i], fired[j]);
      if (d == kUnreachable) continue;
      if (d < sector.boundary_dist[fired[i]] + sector.boundary_dist[fired[j]]) {
        pair_dist[i][j] = pair_dist[j][i] = d;
        components.unite(i, j);
      }
    }

  std::vector<std::vector<int>> groups;
  {
    std::vector<int> root_to_group(k, -1);
    for (int i = 0; i < k; ++i) {
      const int root = components.find(i);
      if (root_to_group[root] < 0) {
        root_to_group[root] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[root_to_group[root]].push_back(i);
    }
  }

  for (const auto& group : groups) {
    const int m = static_cast<int>(group.size());
    if (m == 1) {
      const int u = fired[group[0]];
      result.matched_weight += sector.boundary_dist[u];
      apply_path(sector, u, -1, mask);
      continue;
    }
    if (m == 2) {
      // Connected pair: the direct match is strictly cheaper than two
      // boundary matches by the pruning rule.
      const int u = fired[group[0]], v = fired[group[1]];
      result.matched_weight += pair_dist[group[0]][group[1]];
      apply_path(sector, u, v, mask);
      continue;
    }
    // Events plus one boundary twin each; twins interconnect free.
    const int size = 2 * m;
    std::vector<std::vector<int64_t>> w(size, std::vector<int64_t>(size, kNoEdge));
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        w[a][b] = w[b][a] = pair_dist[group[a]][group[b]];
        w[m + a][m + b] = w[m + b][m + a] = 0;
      }
      const int64_t bd = sector.boundary_dist[fired[group[a]]];
      if (bd != kUnreachable) w[a][m + a] = w[m + a][a] = bd;
    }
    const std::vector<int> mate = min_weight_perfect_matching(w);
    for (int a = 0; a < m; ++a) {
      if (mate[a] == m + a) {
        result.matched_weight += w[a][m + a];
        apply_path(sector, fired[group[a]], -1, mask);
      } else if (mate[a] > a && mate[a] < m) {
        result.matched_weight += w[a][mate[a]];
        apply_path(sector, fired[group[a]], fired[group[mate[a]]], mask);
      }
    }
  }

  for (size_t q = 0; q < mask.size(); ++q)
    if (mask[q]) result.toggled_sites.push_back(static_cast<uint16_t>(q));
  return result;
}

}  // namespace qsn::surface
