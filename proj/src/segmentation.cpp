// SPDX-License-Identifier: Apache-2.0
#include "plmss/segmentation.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "plmss/parallel.hpp"

namespace plmss {

namespace {

inline std::int64_t relaxed_load(const VertexId& slot) {
  return std::atomic_ref<const VertexId>(slot).load(std::memory_order_relaxed);
}

inline void relaxed_store(VertexId& slot, VertexId value) {
  std::atomic_ref<VertexId>(slot).store(value, std::memory_order_relaxed);
}

}  // namespace

namespace detail {

void seed_hops(const SimplicialComplex3& complex, const OrderField& order,
               bool ascending, std::int64_t begin, std::int64_t end,
               std::span<VertexId> labels, std::vector<VertexId>& active,
               std::vector<VertexId>& extrema) {
  for (VertexId v = begin; v < end; ++v) {
    VertexId best = v;
    std::int64_t bestRank = order[v];
    complex.for_each_neighbor(v, [&](VertexId u) {
      const std::int64_t r = order[u];
      if (ascending ? r < bestRank : r > bestRank) {
        best = u;
        bestRank = r;
      }
    });
    labels[v] = best;
    if (best == v)
      extrema.push_back(v);
    else
      active.push_back(v);
  }
}

std::vector<VertexId> compress_sweep(std::span<VertexId> labels,
                                     std::span<const VertexId> active) {
  std::vector<VertexId> next;
  for (const VertexId v : active) {
    const VertexId hop = relaxed_load(labels[v]);
    const VertexId hop2 = relaxed_load(labels[hop]);
    relaxed_store(labels[v], hop2);
    if (relaxed_load(labels[hop2]) != hop2) next.push_back(v);
  }
  return next;
}

void seed_hops_both(const SimplicialComplex3& complex, const OrderField& order,
                    std::int64_t begin, std::int64_t end,
                    std::span<VertexId> desc, std::span<VertexId> asc,
                    std::vector<VertexId>& active,
                    std::vector<VertexId>& maxima,
                    std::vector<VertexId>& minima) {
  for (VertexId v = begin; v < end; ++v) {
    VertexId up = v, down = v;
    std::int64_t upRank = order[v], downRank = upRank;
    complex.for_each_neighbor(v, [&](VertexId u) {
      const std::int64_t r = order[u];
      if (r > upRank) {
        up = u;
        upRank = r;
      } else if (r < downRank) {
        down = u;
        downRank = r;
      }
    });
    desc[v] = up;
    asc[v] = down;
    if (up == v) maxima.push_back(v);
    if (down == v) minima.push_back(v);
    if (up != v || down != v) active.push_back(v);
  }
}

std::vector<VertexId> compress_sweep_both(std::span<VertexId> desc,
                                          std::span<VertexId> asc,
                                          std::span<const VertexId> active) {
  std::vector<VertexId> next;
  for (const VertexId v : active) {
    const VertexId dHop = relaxed_load(desc[v]);
    const VertexId dHop2 = relaxed_load(desc[dHop]);
    relaxed_store(desc[v], dHop2);
    bool settled = relaxed_load(desc[dHop2]) == dHop2;

    const VertexId aHop = relaxed_load(asc[v]);
    const VertexId aHop2 = relaxed_load(asc[aHop]);
    relaxed_store(asc[v], aHop2);
    settled = settled && relaxed_load(asc[aHop2]) == aHop2;

    if (!settled) next.push_back(v);
  }
  return next;
}

}  // namespace detail

SegmentationResult segment(const SimplicialComplex3& complex,
                           const OrderField& order, Direction direction,
                           int workers) {
  const std::int64_t n = complex.num_vertices();
  if (order.size() != n)
    throw std::invalid_argument("order field size does not match complex");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");

  const bool wantDesc = direction != Direction::Ascending;
  const bool wantAsc = direction != Direction::Descending;

  SegmentationResult seg;
  if (wantDesc) seg.desc.resize(static_cast<std::size_t>(n));
  if (wantAsc) seg.asc.resize(static_cast<std::size_t>(n));

  std::vector<std::vector<VertexId>> maximaPer(workers), minimaPer(workers);
  std::vector<std::vector<VertexId>> activePer(workers);
  std::vector<int> sweepsPer(workers, 0);
  const bool fused = direction == Direction::Both;

  // Step 1, with a barrier at the end: every label must be seeded before any
  // worker starts chasing hops, so foreign reads are stale-but-valid at
  // worst.
  parallel_chunks(workers, n, [&](int w, std::int64_t begin, std::int64_t end) {
    if (fused)
      detail::seed_hops_both(complex, order, begin, end, seg.desc, seg.asc,
                             activePer[w], maximaPer[w], minimaPer[w]);
    else if (wantDesc)
      detail::seed_hops(complex, order, /*ascending=*/false, begin, end,
                        seg.desc, activePer[w], maximaPer[w]);
    else
      detail::seed_hops(complex, order, /*ascending=*/true, begin, end,
                        seg.asc, activePer[w], minimaPer[w]);
  });

  // Step 2: each worker iterates its private list to convergence; in fused
  // mode a vertex stays listed until it converged in both directions.
  parallel_chunks(workers, n, [&](int w, std::int64_t, std::int64_t) {
    std::vector<VertexId> active = std::move(activePer[w]);
    int sweeps = 0;
    while (!active.empty()) {
      active = fused ? detail::compress_sweep_both(seg.desc, seg.asc, active)
                     : detail::compress_sweep(wantDesc ? seg.desc : seg.asc,
                                              active);
      ++sweeps;
    }
    sweepsPer[w] = sweeps;
  });

  for (int w = 0; w < workers; ++w) {
    seg.maxima.insert(seg.maxima.end(), maximaPer[w].begin(),
                      maximaPer[w].end());
    seg.minima.insert(seg.minima.end(), minimaPer[w].begin(),
                      minimaPer[w].end());
    seg.sweeps = std::max(seg.sweeps, sweepsPer[w]);
  }
  std::sort(seg.maxima.begin(), seg.maxima.end());
  std::sort(seg.minima.begin(), seg.minima.end());
  return seg;
}

void combine_ms(SegmentationResult& seg, int workers) {
  if (!seg.has_desc() || !seg.has_asc())
    throw std::invalid_argument(
        "combine_ms needs both ascending and descending labels");
  const std::int64_t n = static_cast<std::int64_t>(seg.desc.size());

  std::vector<MsKey> keys(static_cast<std::size_t>(n));
  parallel_chunks(workers, n, [&](int, std::int64_t begin, std::int64_t end) {
    for (std::int64_t v = begin; v < end; ++v)
      keys[v] = ms_key(seg.asc[v], seg.desc[v]);
  });

  std::vector<MsKey> uniqueKeys = keys;
  std::sort(uniqueKeys.begin(), uniqueKeys.end());
  uniqueKeys.erase(std::unique(uniqueKeys.begin(), uniqueKeys.end()),
                   uniqueKeys.end());

  seg.region_keys = uniqueKeys;
  seg.ms_region.resize(static_cast<std::size_t>(n));
  parallel_chunks(workers, n, [&](int, std::int64_t begin, std::int64_t end) {
    for (std::int64_t v = begin; v < end; ++v) {
      const auto it =
          std::lower_bound(uniqueKeys.begin(), uniqueKeys.end(), keys[v]);
      seg.ms_region[v] = static_cast<Label>(it - uniqueKeys.begin());
    }
  });
}

VertexId oracle_integral_walk(const SimplicialComplex3& complex,
                              const OrderField& order, VertexId v,
                              Direction direction) {
  if (direction == Direction::Both)
    throw std::invalid_argument("walk needs a single direction");
  const bool ascending = direction == Direction::Ascending;
  for (;;) {
    VertexId best = v;
    std::int64_t bestRank = order[v];
    complex.for_each_neighbor(v, [&](VertexId u) {
      const std::int64_t r = order[u];
      if (ascending ? r < bestRank : r > bestRank) {
        best = u;
        bestRank = r;
      }
    });
    if (best == v) return v;
    v = best;
  }
}

}  // namespace plmss
