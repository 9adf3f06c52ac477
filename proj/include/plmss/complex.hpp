// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "plmss/types.hpp"

namespace plmss {

/// A top-level simplex: an edge, triangle, or tetrahedron. Vertices are kept
/// in ascending VertexId order so downstream code can address corners
/// (a, b, c, d) deterministically.
struct Cell {
  std::array<VertexId, 4> v{-1, -1, -1, -1};
  int size = 0;

  std::span<const VertexId> vertices() const {
    return {v.data(), static_cast<std::size_t>(size)};
  }
  VertexId operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

Cell make_edge(VertexId a, VertexId b);
Cell make_triangle(VertexId a, VertexId b, VertexId c);
Cell make_tetrahedron(VertexId a, VertexId b, VertexId c, VertexId d);

/// Uniform triangulation interface over two backends:
///
///  - implicit grid: a regular lattice whose cubes are split into 6
///    tetrahedra each (the monotone-lattice-path subdivision, which is
///    face-consistent across cubes), or whose squares are split into 2
///    triangles along the min-corner -> max-corner diagonal when one grid
///    dimension is 1. Adjacency is evaluated from a fixed stencil; no edges
///    or cells are materialized.
///
///  - explicit mesh: vertex positions plus a list of uniform-arity cells
///    (edges, triangles, or tetrahedra). Adjacency is precomputed as CSR.
///
/// Immutable after construction; concurrent reads need no synchronization.
class SimplicialComplex3 {
 public:
  enum class Backend { ImplicitGrid, ExplicitMesh };

  /// Builds the implicitly triangulated grid. Requires every dim >= 1 and at
  /// least two dims >= 2; a grid with one dim == 1 is two-dimensional.
  static SimplicialComplex3 implicit_grid(
      std::array<std::int64_t, 3> dims,
      Eigen::Vector3d spacing = Eigen::Vector3d::Ones(),
      Eigen::Vector3d origin = Eigen::Vector3d::Zero());

  /// Wraps an explicit vertex + cell list. All cells must have the same
  /// arity (2, 3, or 4) and reference distinct, valid vertices. Cell
  /// vertices are re-sorted ascending. Non-manifold input is accepted.
  static SimplicialComplex3 explicit_mesh(Eigen::Matrix3Xd positions,
                                          std::vector<Cell> cells);

  Backend backend() const { return backend_; }
  bool is_implicit_grid() const { return backend_ == Backend::ImplicitGrid; }

  /// Dimension of the top-level cells: 1 (edges), 2, or 3.
  int dimension() const { return dim_; }
  std::int64_t num_vertices() const { return nVertices_; }
  std::int64_t num_cells() const { return nCells_; }

  Cell cell(CellId c) const;
  Eigen::Vector3d position(VertexId v) const;

  const std::array<std::int64_t, 3>& grid_dims() const { return dims_; }
  const Eigen::Vector3d& grid_spacing() const { return spacing_; }
  const Eigen::Vector3d& grid_origin() const { return origin_; }

  /// Sorted, duplicate-free vertex adjacency. Throws std::out_of_range for
  /// invalid ids.
  std::vector<VertexId> neighbors(VertexId v) const;

  /// Visits the neighbors of v in ascending id order without allocating.
  template <class F>
  void for_each_neighbor(VertexId v, F&& f) const {
    if (backend_ == Backend::ImplicitGrid) {
      const std::int64_t x = v % dims_[0];
      const std::int64_t y = (v / dims_[0]) % dims_[1];
      const std::int64_t z = v / (dims_[0] * dims_[1]);
      for (int s = 0; s < nStencil_; ++s) {
        const auto& d = stencil_[s];
        const std::int64_t nx = x + d[0], ny = y + d[1], nz = z + d[2];
        if (nx < 0 || nx >= dims_[0] || ny < 0 || ny >= dims_[1] || nz < 0 ||
            nz >= dims_[2])
          continue;
        f(v + stencilDelta_[s]);
      }
    } else {
      const auto begin = nbrOffsets_[v], end = nbrOffsets_[v + 1];
      for (std::int64_t i = begin; i < end; ++i) f(nbrData_[i]);
    }
  }

  /// Edges (u, w) with u < w spanning a 2-face {v, u, w} of the complex,
  /// i.e. the edges of the link of v. Empty for edge meshes.
  std::vector<std::pair<VertexId, VertexId>> link_edges(VertexId v) const;

  /// Top-level cells incident to v, in enumeration order.
  std::vector<CellId> cells_of_vertex(VertexId v) const;

  class CellIterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Cell;
    using difference_type = std::ptrdiff_t;
    using pointer = const Cell*;
    using reference = Cell;

    CellIterator(const SimplicialComplex3* c, CellId i) : c_(c), i_(i) {}
    Cell operator*() const { return c_->cell(i_); }
    CellIterator& operator++() {
      ++i_;
      return *this;
    }
    CellIterator operator++(int) {
      CellIterator prev = *this;
      ++i_;
      return prev;
    }
    bool operator==(const CellIterator& o) const { return i_ == o.i_; }
    bool operator!=(const CellIterator& o) const { return i_ != o.i_; }

   private:
    const SimplicialComplex3* c_;
    CellId i_;
  };

  struct CellRange {
    const SimplicialComplex3* c;
    CellIterator begin() const { return {c, 0}; }
    CellIterator end() const { return {c, c->num_cells()}; }
  };

  /// Range over all top-level cells in deterministic enumeration order.
  CellRange cells() const { return {this}; }

 private:
  SimplicialComplex3() = default;

  void check_vertex(VertexId v) const;
  void build_stencil();

  Backend backend_ = Backend::ImplicitGrid;
  int dim_ = 3;
  std::int64_t nVertices_ = 0;
  std::int64_t nCells_ = 0;

  // implicit grid
  std::array<std::int64_t, 3> dims_{0, 0, 0};
  Eigen::Vector3d spacing_ = Eigen::Vector3d::Ones();
  Eigen::Vector3d origin_ = Eigen::Vector3d::Zero();
  std::array<int, 2> planeAxes_{0, 1};  // active axes when dim_ == 2
  int nStencil_ = 0;
  std::array<std::array<int, 3>, 14> stencil_{};
  std::array<std::int64_t, 14> stencilDelta_{};

  // explicit mesh
  Eigen::Matrix3Xd positions_;
  int cellArity_ = 0;
  std::vector<VertexId> cellVerts_;  // arity-strided, ascending per cell
  std::vector<std::int64_t> nbrOffsets_;
  std::vector<VertexId> nbrData_;
  std::vector<std::int64_t> v2cOffsets_;
  std::vector<CellId> v2cData_;
};

}  // namespace plmss
