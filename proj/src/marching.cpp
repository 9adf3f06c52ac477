// SPDX-License-Identifier: Apache-2.0
#include "plmss/marching.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "plmss/parallel.hpp"

namespace plmss {

CellCode triangle_code(const std::array<Label, 3>& labels) {
  CellCode out;
  out.local[0] = 0;
  out.local[1] = labels[1] == labels[0] ? 0 : 1;
  if (labels[2] == labels[0])
    out.local[2] = 0;
  else if (labels[2] == labels[1])
    out.local[2] = out.local[1];
  else
    out.local[2] = 2;
  out.code = static_cast<std::uint8_t>((out.local[1] << 2) | out.local[2]);
  return out;
}

CellCode tetra_code(const std::array<Label, 4>& labels) {
  CellCode out;
  out.local[0] = 0;
  for (int i = 1; i < 4; ++i) {
    std::uint8_t local = static_cast<std::uint8_t>(i);
    for (int j = 0; j < i; ++j) {
      if (labels[i] == labels[j]) {
        local = out.local[j];
        break;
      }
    }
    out.local[i] = local;
  }
  out.code = static_cast<std::uint8_t>((out.local[1] << 4) |
                                       (out.local[2] << 2) | out.local[3]);
  return out;
}

namespace {

std::array<Label, 4> cell_labels(const Cell& cell,
                                 std::span<const Label> labels) {
  std::array<Label, 4> out{0, 0, 0, 0};
  for (int i = 0; i < cell.size; ++i) out[i] = labels[cell.v[i]];
  return out;
}

std::uint8_t cell_code(const SimplicialComplex3& complex, const Cell& cell,
                       std::span<const Label> labels) {
  const auto l = cell_labels(cell, labels);
  if (complex.dimension() == 3)
    return tetra_code({l[0], l[1], l[2], l[3]}).code;
  return triangle_code({l[0], l[1], l[2]}).code;
}

int case_primitives(int dimension, std::uint8_t code) {
  return dimension == 3 ? static_cast<int>(tables::tetra_case(code).size())
                        : static_cast<int>(tables::triangle_case(code).size());
}

// Average of the cell vertices selected by mask, accumulated in ascending
// corner order so both cells incident to a face compute bitwise-identical
// points.
Eigen::Vector3d recipe_point(const SimplicialComplex3& complex,
                             const Cell& cell, std::uint8_t mask) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  int n = 0;
  for (int i = 0; i < cell.size; ++i) {
    if (mask & (1u << i)) {
      sum += complex.position(cell.v[i]);
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

std::array<Label, 2> region_pair(const Cell& cell,
                                 std::span<const Label> labels, int a, int b) {
  Label la = labels[cell.v[a]];
  Label lb = labels[cell.v[b]];
  if (lb < la) std::swap(la, lb);
  return {la, lb};
}

void check_labels(const SimplicialComplex3& complex,
                  std::span<const Label> labels) {
  if (static_cast<std::int64_t>(labels.size()) != complex.num_vertices())
    throw std::invalid_argument(
        "label field size does not match vertex count");
  if (complex.dimension() < 2)
    throw std::invalid_argument(
        "separating geometry needs a 2-D or 3-D complex");
}

}  // namespace

SeparatorIndex index_separators(const SimplicialComplex3& complex,
                                std::span<const Label> labels, int workers) {
  check_labels(complex, labels);
  const std::int64_t nCells = complex.num_cells();
  const int dim = complex.dimension();

  SeparatorIndex index;
  index.workers = workers;
  index.codes.resize(static_cast<std::size_t>(nCells));
  index.plan.counts.assign(workers, 0);
  index.plan.offsets.assign(workers, 0);

  parallel_chunks(workers, nCells,
                  [&](int w, std::int64_t begin, std::int64_t end) {
                    std::int64_t count = 0;
                    for (CellId c = begin; c < end; ++c) {
                      const std::uint8_t code =
                          cell_code(complex, complex.cell(c), labels);
                      index.codes[c] = code;
                      count += case_primitives(dim, code);
                    }
                    index.plan.counts[w] = count;
                  });

  std::int64_t running = 0;
  for (int w = 0; w < workers; ++w) {
    index.plan.offsets[w] = running;
    running += index.plan.counts[w];
  }
  return index;
}

SeparatingMesh emit_geometry(const SimplicialComplex3& complex,
                             std::span<const Label> labels,
                             SeparatorIndex& index) {
  check_labels(complex, labels);
  const std::int64_t nCells = complex.num_cells();
  const int dim = complex.dimension();
  const int arity = dim;  // segments in 2-D, triangles in 3-D
  const std::int64_t total = index.plan.total();
  const int workers = index.workers;

  SeparatingMesh mesh;
  mesh.verts_per_primitive = arity;
  mesh.points.resize(3, total * arity);
  mesh.indices.resize(static_cast<std::size_t>(total * arity));
  mesh.regions.resize(static_cast<std::size_t>(total));
  mesh.source_cells.resize(static_cast<std::size_t>(total));
  index.plan.written.assign(workers, 0);

  parallel_chunks(workers, nCells,
                  [&](int w, std::int64_t begin, std::int64_t end) {
                    std::int64_t prim = index.plan.offsets[w];
                    const std::int64_t limit =
                        index.plan.offsets[w] + index.plan.counts[w];
                    for (CellId c = begin; c < end; ++c) {
                      const std::uint8_t code = index.codes[c];
                      const int n = case_primitives(dim, code);
                      if (n == 0) continue;
                      const Cell cell = complex.cell(c);
                      if (prim + n > limit)
                        throw std::logic_error(
                            "geometry phase exceeds indexed primitive count");
                      if (dim == 3) {
                        for (const auto& tri : tables::tetra_case(code)) {
                          const std::int64_t base = prim * 3;
                          for (int k = 0; k < 3; ++k) {
                            mesh.points.col(base + k) =
                                recipe_point(complex, cell, tri.p[k]);
                            mesh.indices[base + k] = base + k;
                          }
                          mesh.regions[prim] = region_pair(cell, labels,
                                                           tri.pairA, tri.pairB);
                          mesh.source_cells[prim] = c;
                          ++prim;
                        }
                      } else {
                        for (const auto& seg : tables::triangle_case(code)) {
                          const std::int64_t base = prim * 2;
                          for (int k = 0; k < 2; ++k) {
                            mesh.points.col(base + k) =
                                recipe_point(complex, cell, seg.p[k]);
                            mesh.indices[base + k] = base + k;
                          }
                          mesh.regions[prim] = region_pair(cell, labels,
                                                           seg.pairA, seg.pairB);
                          mesh.source_cells[prim] = c;
                          ++prim;
                        }
                      }
                    }
                    index.plan.written[w] = prim - index.plan.offsets[w];
                  });

  for (int w = 0; w < workers; ++w) {
    if (index.plan.written[w] != index.plan.counts[w])
      throw std::logic_error("geometry phase wrote " +
                             std::to_string(index.plan.written[w]) +
                             " primitives, indexing counted " +
                             std::to_string(index.plan.counts[w]));
  }
  return mesh;
}

SeparatingMesh emit_separators(const SimplicialComplex3& complex,
                               std::span<const Label> labels, int workers,
                               EmitPlan* planOut) {
  SeparatorIndex index = index_separators(complex, labels, workers);
  SeparatingMesh mesh = emit_geometry(complex, labels, index);
  if (planOut) *planOut = index.plan;
  return mesh;
}

namespace {

struct BoundaryFace {
  std::array<VertexId, 3> v;  // sorted; v[2] = -1 for edges
  Label tag;
  CellId cell;

  bool operator<(const BoundaryFace& o) const {
    if (v != o.v) return v < o.v;
    if (tag != o.tag) return tag < o.tag;
    return cell < o.cell;
  }
  bool same_face_and_tag(const BoundaryFace& o) const {
    return v == o.v && tag == o.tag;
  }
};

}  // namespace

SeparatingMesh emit_boundaries(const SimplicialComplex3& complex,
                               std::span<const Label> labels,
                               std::optional<Label> regionFilter,
                               int workers) {
  check_labels(complex, labels);
  const std::int64_t nCells = complex.num_cells();
  const int dim = complex.dimension();

  std::vector<std::vector<BoundaryFace>> found(workers);
  parallel_chunks(workers, nCells, [&](int w, std::int64_t begin,
                                       std::int64_t end) {
    for (CellId c = begin; c < end; ++c) {
      const Cell cell = complex.cell(c);
      const auto l = cell_labels(cell, labels);
      if (dim == 3) {
        // A face is emitted when exactly 3 vertices share a label and the
        // remaining vertex differs.
        for (int lone = 0; lone < 4; ++lone) {
          const Label shared = l[(lone + 1) % 4];
          bool allEqual = true;
          for (int i = 0; i < 4; ++i)
            if (i != lone && l[i] != shared) allEqual = false;
          if (!allEqual || l[lone] == shared) continue;
          if (regionFilter && shared != *regionFilter) break;
          BoundaryFace f;
          int k = 0;
          for (int i = 0; i < 4; ++i)
            if (i != lone) f.v[k++] = cell.v[i];
          f.tag = shared;
          f.cell = c;
          found[w].push_back(f);
          break;  // at most one 3-of-a-kind label per tetrahedron
        }
      } else {
        for (int lone = 0; lone < 3; ++lone) {
          const int i = (lone + 1) % 3, j = (lone + 2) % 3;
          if (l[i] != l[j] || l[lone] == l[i]) continue;
          if (regionFilter && l[i] != *regionFilter) break;
          BoundaryFace f;
          f.v = {std::min(cell.v[i], cell.v[j]),
                 std::max(cell.v[i], cell.v[j]), -1};
          f.tag = l[i];
          f.cell = c;
          found[w].push_back(f);
          break;
        }
      }
    }
  });

  std::vector<BoundaryFace> faces;
  for (auto& part : found)
    faces.insert(faces.end(), part.begin(), part.end());
  std::sort(faces.begin(), faces.end());
  // Keep duplicates once per (face, tag); the lowest generating cell wins.
  faces.erase(std::unique(faces.begin(), faces.end(),
                          [](const BoundaryFace& a, const BoundaryFace& b) {
                            return a.same_face_and_tag(b);
                          }),
              faces.end());

  const int arity = dim == 3 ? 3 : 2;
  SeparatingMesh mesh;
  mesh.verts_per_primitive = arity;

  // Boundary primitives reuse input vertices; emit one point per referenced
  // vertex.
  std::vector<VertexId> used;
  used.reserve(faces.size() * arity);
  for (const auto& f : faces)
    for (int k = 0; k < arity; ++k) used.push_back(f.v[k]);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());

  mesh.points.resize(3, static_cast<std::int64_t>(used.size()));
  for (std::size_t i = 0; i < used.size(); ++i)
    mesh.points.col(static_cast<std::int64_t>(i)) = complex.position(used[i]);

  mesh.indices.reserve(faces.size() * arity);
  mesh.regions.reserve(faces.size());
  mesh.source_cells.reserve(faces.size());
  for (const auto& f : faces) {
    for (int k = 0; k < arity; ++k) {
      const auto it = std::lower_bound(used.begin(), used.end(), f.v[k]);
      mesh.indices.push_back(static_cast<std::int64_t>(it - used.begin()));
    }
    mesh.regions.push_back({f.tag, -1});
    mesh.source_cells.push_back(f.cell);
  }
  return mesh;
}

std::vector<std::vector<Label>> select_labels(const SegmentationResult& seg,
                                              SegMode mode) {
  auto copy = [](const std::vector<VertexId>& src) {
    return std::vector<Label>(src.begin(), src.end());
  };
  switch (mode) {
    case SegMode::Ascending:
      if (!seg.has_asc()) throw std::logic_error("ascending labels missing");
      return {copy(seg.asc)};
    case SegMode::Descending:
      if (!seg.has_desc()) throw std::logic_error("descending labels missing");
      return {copy(seg.desc)};
    case SegMode::MorseSmale:
      if (!seg.has_ms())
        throw std::logic_error("combine_ms has not been run");
      return {seg.ms_region};
    case SegMode::Union:
      if (!seg.has_asc() || !seg.has_desc())
        throw std::logic_error("union needs both directions");
      return {copy(seg.asc), copy(seg.desc)};
  }
  throw std::logic_error("unknown segmentation mode");
}

void append_mesh(SeparatingMesh& mesh, const SeparatingMesh& extra) {
  if (extra.num_primitives() == 0) return;
  if (mesh.num_primitives() == 0) {
    mesh = extra;
    return;
  }
  if (mesh.verts_per_primitive != extra.verts_per_primitive)
    throw std::invalid_argument("cannot append meshes of different arity");
  const std::int64_t pointBase = mesh.points.cols();
  mesh.points.conservativeResize(3, pointBase + extra.points.cols());
  mesh.points.rightCols(extra.points.cols()) = extra.points;
  for (const auto idx : extra.indices)
    mesh.indices.push_back(idx + pointBase);
  mesh.regions.insert(mesh.regions.end(), extra.regions.begin(),
                      extra.regions.end());
  mesh.source_cells.insert(mesh.source_cells.end(),
                           extra.source_cells.begin(),
                           extra.source_cells.end());
}

namespace {

struct PointKey {
  std::uint64_t x, y, z;
  bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (const std::uint64_t w : {k.x, k.y, k.z}) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

PointKey key_of(const Eigen::Vector3d& p) {
  PointKey k;
  std::memcpy(&k.x, &p.x(), 8);
  std::memcpy(&k.y, &p.y(), 8);
  std::memcpy(&k.z, &p.z(), 8);
  return k;
}

}  // namespace

void weld_points(SeparatingMesh& mesh) {
  const std::int64_t n = mesh.points.cols();
  std::unordered_map<PointKey, std::int64_t, PointKeyHash> seen;
  seen.reserve(static_cast<std::size_t>(n));
  std::vector<std::int64_t> remap(static_cast<std::size_t>(n));
  std::int64_t unique = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto [it, inserted] =
        seen.emplace(key_of(mesh.points.col(i)), unique);
    remap[i] = it->second;
    if (inserted) {
      if (unique != i) mesh.points.col(unique) = mesh.points.col(i);
      ++unique;
    }
  }
  mesh.points.conservativeResize(3, unique);
  for (auto& idx : mesh.indices) idx = remap[static_cast<std::size_t>(idx)];
}

}  // namespace plmss
