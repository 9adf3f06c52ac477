// SPDX-License-Identifier: Apache-2.0
#include "plmss/orderfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace plmss {

OrderField compute_order(const ScalarField& field) {
  const std::int64_t n = field.values.size();
  for (std::int64_t v = 0; v < n; ++v) {
    if (!std::isfinite(field.values[v]))
      throw std::invalid_argument("non-finite scalar value at vertex " +
                                  std::to_string(v));
  }
  std::vector<std::int64_t> byValue(static_cast<std::size_t>(n));
  std::iota(byValue.begin(), byValue.end(), std::int64_t{0});
  std::sort(byValue.begin(), byValue.end(),
            [&](std::int64_t a, std::int64_t b) {
              const double fa = field.values[a], fb = field.values[b];
              if (fa != fb) return fa < fb;
              return a < b;
            });
  OrderField order;
  order.rank.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    order.rank[static_cast<std::size_t>(byValue[i])] = i;
  return order;
}

namespace {

// Union-find over a small local vertex set.
struct TinyForest {
  std::vector<int> parent;
  explicit TinyForest(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

VertexClass classify_vertex(const SimplicialComplex3& complex,
                            const OrderField& order, VertexId v) {
  const std::int64_t rv = order[v];
  std::vector<VertexId> link = complex.neighbors(v);

  // Component count of {u in Lk(v) : pred(order(u))} over the link edges.
  auto components = [&](auto pred) {
    std::vector<int> localOf(link.size(), -1);
    int n = 0;
    for (std::size_t i = 0; i < link.size(); ++i)
      if (pred(order[link[i]])) localOf[i] = n++;
    if (n == 0) return 0;
    TinyForest forest(n);
    for (const auto& [a, b] : complex.link_edges(v)) {
      const auto ia = std::lower_bound(link.begin(), link.end(), a);
      const auto ib = std::lower_bound(link.begin(), link.end(), b);
      const int la = localOf[static_cast<std::size_t>(ia - link.begin())];
      const int lb = localOf[static_cast<std::size_t>(ib - link.begin())];
      if (la >= 0 && lb >= 0) forest.unite(la, lb);
    }
    int roots = 0;
    for (int i = 0; i < n; ++i) roots += forest.find(i) == i ? 1 : 0;
    return roots;
  };

  VertexClass out;
  out.lower_components = components([&](std::int64_t r) { return r < rv; });
  out.upper_components = components([&](std::int64_t r) { return r > rv; });
  out.degenerate = out.lower_components > 2 || out.upper_components > 2;
  if (out.lower_components == 0)
    out.kind = VertexKind::Minimum;
  else if (out.upper_components == 0)
    out.kind = VertexKind::Maximum;
  else if (out.lower_components == 1 && out.upper_components == 1)
    out.kind = VertexKind::Regular;
  else
    out.kind = VertexKind::Saddle;
  return out;
}

}  // namespace plmss
