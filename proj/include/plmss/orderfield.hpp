// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "plmss/complex.hpp"
#include "plmss/types.hpp"

namespace plmss {

/// Per-vertex scalar values, linearly interpolated over simplices.
struct ScalarField {
  Eigen::VectorXd values;
};

/// Injective replacement for a scalar field: each vertex carries its position
/// in the global sort of (value, vertex id). Every vertex therefore has a
/// unique largest and smallest neighbor, which removes all steepest-direction
/// ambiguity.
struct OrderField {
  std::vector<std::int64_t> rank;  // bijection onto [0, nVertices)

  std::int64_t operator[](VertexId v) const {
    return rank[static_cast<std::size_t>(v)];
  }
  std::int64_t size() const { return static_cast<std::int64_t>(rank.size()); }
};

/// Sorts vertices by scalar value, ties broken by vertex id, and records each
/// vertex's index in the sorted array. Deterministic regardless of worker
/// count. Throws std::invalid_argument naming the first non-finite vertex.
OrderField compute_order(const ScalarField& field);

enum class VertexKind { Regular, Minimum, Maximum, Saddle };

struct VertexClass {
  VertexKind kind = VertexKind::Regular;
  int lower_components = 0;
  int upper_components = 0;
  bool degenerate = false;  // more than 2 components in either link half
};

/// Classifies v by counting connected components of its lower and upper link:
/// 0 lower -> minimum, 0 upper -> maximum, 1 and 1 -> regular, anything else
/// a saddle. Components are computed over the link edges of v.
VertexClass classify_vertex(const SimplicialComplex3& complex,
                            const OrderField& order, VertexId v);

}  // namespace plmss
