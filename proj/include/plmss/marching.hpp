// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "plmss/complex.hpp"
#include "plmss/segmentation.hpp"
#include "plmss/types.hpp"

namespace plmss {

/// Dense local relabeling of one cell plus its binary configuration code.
/// Vertex a is always 0; each later vertex reuses the local label of the
/// first earlier vertex with an equal region key, or takes its own position
/// index. Triangles use 3 bits (b=bit 2, c=bits 1-0), tetrahedra 5 bits
/// (b=bit 4, c=bits 3-2, d=bits 1-0).
struct CellCode {
  std::uint8_t code = 0;
  std::array<std::uint8_t, 4> local{0, 0, 0, 0};
};

CellCode triangle_code(const std::array<Label, 3>& labels);
CellCode tetra_code(const std::array<Label, 4>& labels);

namespace tables {

/// A separating primitive corner: the average of the cell vertices selected
/// by `mask` (bit i = cell vertex i). Bit count 2 is an edge midpoint, 3 a
/// face barycenter, 4 the cell barycenter.
struct SeparatorTri {
  std::uint8_t p[3];
  std::uint8_t pairA, pairB;  // cell-vertex indices whose regions it divides
};

struct SeparatorSeg {
  std::uint8_t p[2];
  std::uint8_t pairA, pairB;
};

inline constexpr std::array<std::uint8_t, 5> kValidTriangleCodes = {0, 2, 4,
                                                                    5, 6};
inline constexpr std::array<std::uint8_t, 15> kValidTetraCodes = {
    0, 3, 8, 10, 11, 16, 17, 19, 20, 21, 23, 24, 25, 26, 27};

bool triangle_code_valid(std::uint8_t code);
bool tetra_code_valid(std::uint8_t code);

/// Separator recipes per code; empty span for one-label cells. Invalid codes
/// yield an empty span as well (they cannot be produced by the code ops).
std::span<const SeparatorSeg> triangle_case(std::uint8_t code);
std::span<const SeparatorTri> tetra_case(std::uint8_t code);

}  // namespace tables

/// Region-separating geometry: a point soup with arity-strided primitive
/// indices. Separator primitives carry the unordered pair of region keys
/// they divide; boundary primitives carry one region key (second slot -1).
/// source_cells records the generating top-level cell of each primitive.
struct SeparatingMesh {
  int verts_per_primitive = 3;  // 2 = segments, 3 = triangles
  Eigen::Matrix3Xd points;
  std::vector<std::int64_t> indices;
  std::vector<std::array<Label, 2>> regions;
  std::vector<CellId> source_cells;

  std::int64_t num_primitives() const {
    return static_cast<std::int64_t>(regions.size());
  }
  std::int64_t num_points() const { return points.cols(); }
};

/// Per-worker primitive counts of the indexing phase and the exclusive
/// prefix offsets the geometry phase writes at. After emission `written`
/// must equal `counts` slot for slot; emit_geometry enforces this.
struct EmitPlan {
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> offsets;
  std::vector<std::int64_t> written;

  std::int64_t total() const {
    std::int64_t t = 0;
    for (const auto c : counts) t += c;
    return t;
  }
};

/// Indexing phase: computes every cell's code and the exact number of
/// primitives each worker will write.
struct SeparatorIndex {
  std::vector<std::uint8_t> codes;  // per cell
  EmitPlan plan;
  int workers = 1;
};

SeparatorIndex index_separators(const SimplicialComplex3& complex,
                                std::span<const Label> labels, int workers);

/// Geometry phase: writes primitives into pre-sized storage at the plan's
/// prefix offsets. Corner points are edge midpoints and face/cell
/// barycenters; labels are categorical, so no scalar interpolation happens.
/// Throws std::logic_error if a worker's writes deviate from its indexed
/// count.
SeparatingMesh emit_geometry(const SimplicialComplex3& complex,
                             std::span<const Label> labels,
                             SeparatorIndex& index);

/// Both phases back to back. The optional plan output exposes the per-worker
/// bookkeeping for verification.
SeparatingMesh emit_separators(const SimplicialComplex3& complex,
                               std::span<const Label> labels, int workers = 1,
                               EmitPlan* planOut = nullptr);

/// Region boundaries: input-mesh faces (3-D) or edges (2-D) whose vertices
/// share one region key against a differing remaining cell vertex. Faces
/// emitted identically from both incident cells are kept once per region
/// tag. `regionFilter` keeps only primitives tagged with that key.
SeparatingMesh emit_boundaries(const SimplicialComplex3& complex,
                               std::span<const Label> labels,
                               std::optional<Label> regionFilter = {},
                               int workers = 1);

enum class SegMode { Ascending, Descending, MorseSmale, Union };

/// Label fields feeding the marching pass: one field normally, two for
/// Union (geometry is emitted once per field and concatenated).
std::vector<std::vector<Label>> select_labels(const SegmentationResult& seg,
                                              SegMode mode);

/// Appends `extra` onto `mesh`. Primitive arities must match.
void append_mesh(SeparatingMesh& mesh, const SeparatingMesh& extra);

/// Merges bitwise-identical points and remaps indices. Off the hot path by
/// default because the soup is directly renderable.
void weld_points(SeparatingMesh& mesh);

}  // namespace plmss
