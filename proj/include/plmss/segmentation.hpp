// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plmss/complex.hpp"
#include "plmss/orderfield.hpp"
#include "plmss/types.hpp"

namespace plmss {

enum class Direction { Ascending, Descending, Both };

/// Extremum pair of a vertex packed into one double-width integer: minimum id
/// in the high half, maximum id in the low half. Ordering and grouping on
/// MsKey are therefore plain integer operations.
using MsKey = unsigned __int128;

inline MsKey ms_key(VertexId minimum, VertexId maximum) {
  return (static_cast<MsKey>(static_cast<std::uint64_t>(minimum)) << 64) |
         static_cast<std::uint64_t>(maximum);
}
inline VertexId ms_key_min(MsKey k) {
  return static_cast<VertexId>(static_cast<std::uint64_t>(k >> 64));
}
inline VertexId ms_key_max(MsKey k) {
  return static_cast<VertexId>(static_cast<std::uint64_t>(k));
}

/// Result of the ascending/descending segmentation and, after combine_ms,
/// the Morse-Smale combination. Extremum lists are sorted by vertex id; all
/// label arrays are total (no sentinel survives a completed run).
struct SegmentationResult {
  std::vector<VertexId> desc;  // reached maximum per vertex
  std::vector<VertexId> asc;   // reached minimum per vertex
  std::vector<VertexId> maxima;
  std::vector<VertexId> minima;

  // Filled by combine_ms: dense region id per vertex plus the region-id ->
  // extremum-pair table (the re-indexing map used for rendering).
  std::vector<Label> ms_region;
  std::vector<MsKey> region_keys;

  int sweeps = 0;  // path-compression sweeps until convergence (max worker)

  bool has_desc() const { return !desc.empty(); }
  bool has_asc() const { return !asc.empty(); }
  bool has_ms() const { return !ms_region.empty(); }
  std::int64_t num_regions() const {
    return static_cast<std::int64_t>(region_keys.size());
  }
  MsKey ms_key_of(VertexId v) const {
    return ms_key(asc[static_cast<std::size_t>(v)],
                  desc[static_cast<std::size_t>(v)]);
  }
};

/// Computes the requested segmentation(s) by path compression.
///
/// Step 1 assigns every vertex its largest (smallest) neighbor in the order
/// field and records vertices without a larger (smaller) neighbor as maxima
/// (minima), which self-assign. Step 2 repeats label(v) <- label(label(v))
/// over per-worker active lists until every active vertex satisfies
/// label(v) == label(label(v)). With Direction::Both one fused pass updates
/// both arrays and a vertex stays active until it converged in both
/// directions.
///
/// Workers own disjoint vertex ranges; foreign labels are read with relaxed
/// per-element atomicity and may be stale, which is safe because every
/// observed value lies on the vertex's monotone chain. The fixpoint — and
/// hence the result — is identical for every worker count.
SegmentationResult segment(const SimplicialComplex3& complex,
                           const OrderField& order, Direction direction,
                           int workers = 1);

/// Populates ms_region/region_keys: vertices with identical (minimum,
/// maximum) extremity pairs share one dense region id in [0, nRegions).
void combine_ms(SegmentationResult& seg, int workers = 1);

/// Test oracle: hops to the single largest (smallest) neighbor until an
/// extremum is reached and returns it. Deliberately independent of the
/// path-compression implementation.
VertexId oracle_integral_walk(const SimplicialComplex3& complex,
                              const OrderField& order, VertexId v,
                              Direction direction);

namespace detail {

/// One step-1 pass over [begin, end): fills labels, appends non-extrema to
/// `active` and extrema to `extrema`. `ascending` selects smallest-neighbor
/// hops.
void seed_hops(const SimplicialComplex3& complex, const OrderField& order,
               bool ascending, std::int64_t begin, std::int64_t end,
               std::span<VertexId> labels, std::vector<VertexId>& active,
               std::vector<VertexId>& extrema);

/// Fused step 1: one neighbor scan records both the largest and the
/// smallest neighbor. Vertices that are extreme in both directions stay off
/// the active list.
void seed_hops_both(const SimplicialComplex3& complex, const OrderField& order,
                    std::int64_t begin, std::int64_t end,
                    std::span<VertexId> desc, std::span<VertexId> asc,
                    std::vector<VertexId>& active,
                    std::vector<VertexId>& maxima,
                    std::vector<VertexId>& minima);

/// One path-compression sweep over `active` in list order, in place:
/// labels[v] <- labels[labels[v]]. Returns the vertices that have not yet
/// converged. Reads of foreign entries use relaxed atomics.
std::vector<VertexId> compress_sweep(std::span<VertexId> labels,
                                     std::span<const VertexId> active);

/// Fused sweep: advances both arrays for every active vertex; a vertex is
/// kept until it converged in both directions.
std::vector<VertexId> compress_sweep_both(std::span<VertexId> desc,
                                          std::span<VertexId> asc,
                                          std::span<const VertexId> active);

}  // namespace detail

}  // namespace plmss
