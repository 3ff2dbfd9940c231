#ifndef QSN_DECODER_H_
#define QSN_DECODER_H_

#include <cstdint>
#include <vector>

#include "qsn/detection.h"

namespace qsn::surface {

/// Decoded correction for one sector: the data sites whose Pauli toggles,
/// and the total minimum matching weight (for oracle comparisons).
struct SectorCorrection {
  std::vector<uint16_t> toggled_sites;
  int64_t matched_weight = 0;
};

/// Minimum-weight perfect matching of the fired events, pairwise or to
/// the boundary, under BFS shortest-path edge weights. The correction is
/// the XOR of the edge effects along every matched path; re-extracting
/// the syndrome after applying it fires no events.
SectorCorrection decode(const SectorGraph& sector, const std::vector<int>& fired_events);

}  // namespace qsn::surface

#endif  // QSN_DECODER_H_
