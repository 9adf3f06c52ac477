// SPDX-License-Identifier: Apache-2.0
#include "plmss/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace plmss {

namespace {

Cell sorted_cell(std::array<VertexId, 4> v, int size) {
  std::sort(v.begin(), v.begin() + size);
  Cell c;
  c.v = v;
  c.size = size;
  return c;
}

// Axis step order of the 6 tetrahedra of one cube, one monotone lattice path
// per permutation of (x, y, z), in lexicographic permutation order.
constexpr int kTetAxisOrder[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

}  // namespace

Cell make_edge(VertexId a, VertexId b) { return sorted_cell({a, b, -1, -1}, 2); }

Cell make_triangle(VertexId a, VertexId b, VertexId c) {
  return sorted_cell({a, b, c, -1}, 3);
}

Cell make_tetrahedron(VertexId a, VertexId b, VertexId c, VertexId d) {
  return sorted_cell({a, b, c, d}, 4);
}

void SimplicialComplex3::check_vertex(VertexId v) const {
  if (v < 0 || v >= nVertices_)
    throw std::out_of_range("vertex id " + std::to_string(v) +
                            " out of range [0, " + std::to_string(nVertices_) +
                            ")");
}

void SimplicialComplex3::build_stencil() {
  nStencil_ = 0;
  auto add = [&](int dx, int dy, int dz) {
    stencil_[nStencil_] = {dx, dy, dz};
    stencilDelta_[nStencil_] =
        dx + dims_[0] * (dy + dims_[1] * static_cast<std::int64_t>(dz));
    ++nStencil_;
  };
  if (dim_ == 3) {
    // Offsets whose nonzero components share a sign; mixed-sign offsets are
    // not edges of the monotone subdivision.
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const bool pos = dx > 0 || dy > 0 || dz > 0;
          const bool neg = dx < 0 || dy < 0 || dz < 0;
          if (pos && neg) continue;
          add(dx, dy, dz);
        }
  } else {
    const int a0 = planeAxes_[0], a1 = planeAxes_[1];
    for (int s1 = -1; s1 <= 1; ++s1)
      for (int s0 = -1; s0 <= 1; ++s0) {
        if (s0 == 0 && s1 == 0) continue;
        if ((s0 > 0 && s1 < 0) || (s0 < 0 && s1 > 0)) continue;
        int d[3] = {0, 0, 0};
        d[a0] = s0;
        d[a1] = s1;
        add(d[0], d[1], d[2]);
      }
  }
  // Ascending id delta gives sorted neighbor enumeration.
  std::array<int, 14> idx{};
  for (int i = 0; i < nStencil_; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.begin() + nStencil_, [&](int a, int b) {
    return stencilDelta_[a] < stencilDelta_[b];
  });
  auto stencil = stencil_;
  auto delta = stencilDelta_;
  for (int i = 0; i < nStencil_; ++i) {
    stencil_[i] = stencil[idx[i]];
    stencilDelta_[i] = delta[idx[i]];
  }
}

SimplicialComplex3 SimplicialComplex3::implicit_grid(
    std::array<std::int64_t, 3> dims, Eigen::Vector3d spacing,
    Eigen::Vector3d origin) {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 1)
      throw std::invalid_argument("grid dims must be positive, got " +
                                  std::to_string(dims[a]) + " on axis " +
                                  std::to_string(a));
    if (spacing[a] <= 0.0)
      throw std::invalid_argument("grid spacing must be positive");
  }
  int wide = 0;
  for (int a = 0; a < 3; ++a) wide += dims[a] >= 2 ? 1 : 0;
  if (wide < 2)
    throw std::invalid_argument(
        "grid needs at least two dims >= 2 to form top-level cells");

  SimplicialComplex3 c;
  c.backend_ = Backend::ImplicitGrid;
  c.dims_ = dims;
  c.spacing_ = std::move(spacing);
  c.origin_ = std::move(origin);
  c.nVertices_ = dims[0] * dims[1] * dims[2];
  if (wide == 3) {
    c.dim_ = 3;
    c.nCells_ = 6 * (dims[0] - 1) * (dims[1] - 1) * (dims[2] - 1);
  } else {
    c.dim_ = 2;
    int k = 0;
    for (int a = 0; a < 3; ++a)
      if (dims[a] >= 2) c.planeAxes_[k++] = a;
    c.nCells_ = 2 * (dims[c.planeAxes_[0]] - 1) * (dims[c.planeAxes_[1]] - 1);
  }
  c.build_stencil();
  return c;
}

SimplicialComplex3 SimplicialComplex3::explicit_mesh(Eigen::Matrix3Xd positions,
                                                     std::vector<Cell> cells) {
  SimplicialComplex3 c;
  c.backend_ = Backend::ExplicitMesh;
  c.nVertices_ = positions.cols();
  c.positions_ = std::move(positions);
  c.nCells_ = static_cast<std::int64_t>(cells.size());
  if (cells.empty()) throw std::invalid_argument("explicit mesh has no cells");

  c.cellArity_ = cells.front().size;
  if (c.cellArity_ < 2 || c.cellArity_ > 4)
    throw std::invalid_argument("cell arity must be 2, 3, or 4");
  c.dim_ = c.cellArity_ - 1;

  c.cellVerts_.reserve(cells.size() * c.cellArity_);
  for (const Cell& cell : cells) {
    if (cell.size != c.cellArity_)
      throw std::invalid_argument("mixed cell arities in one mesh");
    std::array<VertexId, 4> v = cell.v;
    std::sort(v.begin(), v.begin() + cell.size);
    for (int i = 0; i < cell.size; ++i) {
      if (v[i] < 0 || v[i] >= c.nVertices_)
        throw std::invalid_argument("cell references invalid vertex " +
                                    std::to_string(v[i]));
      if (i > 0 && v[i] == v[i - 1])
        throw std::invalid_argument("cell references duplicate vertex " +
                                    std::to_string(v[i]));
      c.cellVerts_.push_back(v[i]);
    }
  }

  // Vertex adjacency as CSR: gather directed edges, sort, unique.
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(c.cellVerts_.size() * (c.cellArity_ - 1));
  for (std::int64_t cellIdx = 0; cellIdx < c.nCells_; ++cellIdx) {
    const VertexId* cv = c.cellVerts_.data() + cellIdx * c.cellArity_;
    for (int i = 0; i < c.cellArity_; ++i)
      for (int j = 0; j < c.cellArity_; ++j)
        if (i != j) edges.emplace_back(cv[i], cv[j]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  c.nbrOffsets_.assign(c.nVertices_ + 1, 0);
  for (const auto& e : edges) ++c.nbrOffsets_[e.first + 1];
  for (std::int64_t v = 0; v < c.nVertices_; ++v)
    c.nbrOffsets_[v + 1] += c.nbrOffsets_[v];
  c.nbrData_.reserve(edges.size());
  for (const auto& e : edges) c.nbrData_.push_back(e.second);

  // Vertex -> incident cell CSR.
  c.v2cOffsets_.assign(c.nVertices_ + 1, 0);
  for (const VertexId v : c.cellVerts_) ++c.v2cOffsets_[v + 1];
  for (std::int64_t v = 0; v < c.nVertices_; ++v)
    c.v2cOffsets_[v + 1] += c.v2cOffsets_[v];
  c.v2cData_.resize(c.cellVerts_.size());
  std::vector<std::int64_t> cursor(c.v2cOffsets_.begin(),
                                   c.v2cOffsets_.end() - 1);
  for (std::int64_t cellIdx = 0; cellIdx < c.nCells_; ++cellIdx)
    for (int i = 0; i < c.cellArity_; ++i)
      c.v2cData_[cursor[c.cellVerts_[cellIdx * c.cellArity_ + i]]++] = cellIdx;

  return c;
}

Cell SimplicialComplex3::cell(CellId id) const {
  if (id < 0 || id >= nCells_)
    throw std::out_of_range("cell id " + std::to_string(id) + " out of range");
  Cell out;
  if (backend_ == Backend::ExplicitMesh) {
    out.size = cellArity_;
    for (int i = 0; i < cellArity_; ++i)
      out.v[i] = cellVerts_[id * cellArity_ + i];
    return out;
  }
  const std::int64_t strideY = dims_[0];
  const std::int64_t strideZ = dims_[0] * dims_[1];
  if (dim_ == 3) {
    const std::int64_t cube = id / 6;
    const int t = static_cast<int>(id % 6);
    const std::int64_t cx = cube % (dims_[0] - 1);
    const std::int64_t cy = (cube / (dims_[0] - 1)) % (dims_[1] - 1);
    const std::int64_t cz = cube / ((dims_[0] - 1) * (dims_[1] - 1));
    const std::int64_t step[3] = {1, strideY, strideZ};
    VertexId v = cx + strideY * cy + strideZ * cz;
    out.size = 4;
    out.v[0] = v;
    for (int i = 0; i < 3; ++i) {
      v += step[kTetAxisOrder[t][i]];
      out.v[i + 1] = v;
    }
  } else {
    const std::int64_t square = id / 2;
    const int t = static_cast<int>(id % 2);
    const int a0 = planeAxes_[0], a1 = planeAxes_[1];
    const std::int64_t step[3] = {1, strideY, strideZ};
    const std::int64_t u = square % (dims_[a0] - 1);
    const std::int64_t w = square / (dims_[a0] - 1);
    const VertexId p = u * step[a0] + w * step[a1];
    out.size = 3;
    out.v[0] = p;
    out.v[1] = p + (t == 0 ? step[a0] : step[a1]);
    out.v[2] = p + step[a0] + step[a1];
  }
  return out;
}

Eigen::Vector3d SimplicialComplex3::position(VertexId v) const {
  check_vertex(v);
  if (backend_ == Backend::ExplicitMesh) return positions_.col(v);
  const std::int64_t x = v % dims_[0];
  const std::int64_t y = (v / dims_[0]) % dims_[1];
  const std::int64_t z = v / (dims_[0] * dims_[1]);
  return origin_ + spacing_.cwiseProduct(Eigen::Vector3d(
                       static_cast<double>(x), static_cast<double>(y),
                       static_cast<double>(z)));
}

std::vector<VertexId> SimplicialComplex3::neighbors(VertexId v) const {
  check_vertex(v);
  std::vector<VertexId> out;
  out.reserve(backend_ == Backend::ImplicitGrid ? nStencil_ : 8);
  for_each_neighbor(v, [&](VertexId u) { out.push_back(u); });
  return out;
}

std::vector<CellId> SimplicialComplex3::cells_of_vertex(VertexId v) const {
  check_vertex(v);
  std::vector<CellId> out;
  if (backend_ == Backend::ExplicitMesh) {
    out.assign(v2cData_.begin() + v2cOffsets_[v],
               v2cData_.begin() + v2cOffsets_[v + 1]);
    return out;
  }
  const std::int64_t x = v % dims_[0];
  const std::int64_t y = (v / dims_[0]) % dims_[1];
  const std::int64_t z = v / (dims_[0] * dims_[1]);
  if (dim_ == 3) {
    for (std::int64_t cz = z - 1; cz <= z; ++cz)
      for (std::int64_t cy = y - 1; cy <= y; ++cy)
        for (std::int64_t cx = x - 1; cx <= x; ++cx) {
          if (cx < 0 || cx >= dims_[0] - 1 || cy < 0 || cy >= dims_[1] - 1 ||
              cz < 0 || cz >= dims_[2] - 1)
            continue;
          const CellId base =
              6 * (cx + (dims_[0] - 1) * (cy + (dims_[1] - 1) * cz));
          for (int t = 0; t < 6; ++t) {
            const Cell tet = cell(base + t);
            for (int i = 0; i < 4; ++i)
              if (tet.v[i] == v) {
                out.push_back(base + t);
                break;
              }
          }
        }
  } else {
    const int a0 = planeAxes_[0], a1 = planeAxes_[1];
    const std::int64_t coord[3] = {x, y, z};
    const std::int64_t u = coord[a0], w = coord[a1];
    for (std::int64_t sw = w - 1; sw <= w; ++sw)
      for (std::int64_t su = u - 1; su <= u; ++su) {
        if (su < 0 || su >= dims_[a0] - 1 || sw < 0 || sw >= dims_[a1] - 1)
          continue;
        const CellId base = 2 * (su + (dims_[a0] - 1) * sw);
        for (int t = 0; t < 2; ++t) {
          const Cell tri = cell(base + t);
          for (int i = 0; i < 3; ++i)
            if (tri.v[i] == v) {
              out.push_back(base + t);
              break;
            }
        }
      }
  }
  return out;
}

std::vector<std::pair<VertexId, VertexId>> SimplicialComplex3::link_edges(
    VertexId v) const {
  check_vertex(v);
  std::vector<std::pair<VertexId, VertexId>> out;
  if (dim_ < 2) return out;
  for (const CellId id : cells_of_vertex(v)) {
    const Cell c = cell(id);
    for (int i = 0; i < c.size; ++i) {
      if (c.v[i] == v) continue;
      for (int j = i + 1; j < c.size; ++j) {
        if (c.v[j] == v) continue;
        out.emplace_back(c.v[i], c.v[j]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace plmss
