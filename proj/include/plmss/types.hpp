// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace plmss {

/// Dense vertex index in [0, nVertices). Stable for the lifetime of a complex.
using VertexId = std::int64_t;

/// Index of a top-level cell (triangle or tetrahedron) in enumeration order.
using CellId = std::int64_t;

/// Region key attached to a vertex for geometry extraction. Depending on the
/// selected segmentation this is an extremum VertexId or a dense region id.
using Label = std::int64_t;

}  // namespace plmss
