// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "plmss/complex.hpp"

using namespace plmss;

namespace {

// Edge set extracted by scanning all emitted cells; the adjacency oracle.
std::set<std::pair<VertexId, VertexId>> edges_from_cells(
    const SimplicialComplex3& c) {
  std::set<std::pair<VertexId, VertexId>> edges;
  for (const Cell cell : c.cells())
    for (int i = 0; i < cell.size; ++i)
      for (int j = i + 1; j < cell.size; ++j) {
        edges.insert({cell.v[i], cell.v[j]});
        edges.insert({cell.v[j], cell.v[i]});
      }
  return edges;
}

void check_neighbors_match_cells(const SimplicialComplex3& c) {
  const auto edges = edges_from_cells(c);
  std::set<std::pair<VertexId, VertexId>> fromNeighbors;
  for (VertexId v = 0; v < c.num_vertices(); ++v) {
    const auto nbrs = c.neighbors(v);
    CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
    CHECK(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end());
    for (const VertexId u : nbrs) fromNeighbors.insert({v, u});
  }
  CHECK(fromNeighbors == edges);
}

double tet_volume(const SimplicialComplex3& c, const Cell& t) {
  const Eigen::Vector3d a = c.position(t.v[0]);
  Eigen::Matrix3d m;
  m.col(0) = c.position(t.v[1]) - a;
  m.col(1) = c.position(t.v[2]) - a;
  m.col(2) = c.position(t.v[3]) - a;
  return std::abs(m.determinant()) / 6.0;
}

}  // namespace

TEST_CASE("implicit grid cell and vertex counts") {
  const auto g222 = SimplicialComplex3::implicit_grid({2, 2, 2});
  CHECK(g222.dimension() == 3);
  CHECK(g222.num_vertices() == 8);
  CHECK(g222.num_cells() == 6);

  const auto g221 = SimplicialComplex3::implicit_grid({2, 2, 1});
  CHECK(g221.dimension() == 2);
  CHECK(g221.num_vertices() == 4);
  CHECK(g221.num_cells() == 2);

  const auto g441 = SimplicialComplex3::implicit_grid({4, 4, 1});
  CHECK(g441.num_vertices() == 16);
  CHECK(g441.num_cells() == 18);

  const auto g443 = SimplicialComplex3::implicit_grid({4, 4, 3});
  CHECK(g443.num_cells() == 6 * 3 * 3 * 2);
}

TEST_CASE("implicit grid rejects degenerate dims") {
  CHECK_THROWS_AS(SimplicialComplex3::implicit_grid({0, 2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex3::implicit_grid({-1, 2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex3::implicit_grid({3, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      SimplicialComplex3::implicit_grid({2, 2, 2}, Eigen::Vector3d(1, 0, 1)),
      std::invalid_argument);
}

TEST_CASE("grid diagonals run from the min corner to the max corner") {
  // Corner (0,0) of the 4x4 sheet sees its two axis neighbors and the
  // diagonal; the anti-diagonal neighbor (0,1)-(1,0) must not exist.
  const auto g = fixtures::fig1_complex();
  CHECK(g.neighbors(0) == std::vector<VertexId>{1, 4, 5});
  CHECK(g.neighbors(3) == std::vector<VertexId>{2, 7});
  const auto inner = g.neighbors(5);  // vertex (1,1)
  CHECK(inner == std::vector<VertexId>{0, 1, 4, 6, 9, 10});
}

TEST_CASE("two-vertex edge mesh adjacency") {
  Eigen::Matrix3Xd pos(3, 2);
  pos.col(0) << 0, 0, 0;
  pos.col(1) << 1, 0, 0;
  const auto mesh = SimplicialComplex3::explicit_mesh(pos, {make_edge(0, 1)});
  CHECK(mesh.dimension() == 1);
  CHECK(mesh.neighbors(0) == std::vector<VertexId>{1});
  CHECK(mesh.neighbors(1) == std::vector<VertexId>{0});
}

TEST_CASE("neighbors equal brute-force edge extraction on implicit grids") {
  for (std::int64_t x = 1; x <= 5; ++x)
    for (std::int64_t y = 1; y <= 5; ++y)
      for (std::int64_t z = 1; z <= 5; ++z) {
        int wide = (x >= 2) + (y >= 2) + (z >= 2);
        if (wide < 2) continue;
        check_neighbors_match_cells(
            SimplicialComplex3::implicit_grid({x, y, z}));
      }
}

TEST_CASE("neighbors equal brute-force edge extraction on a random mesh") {
  std::mt19937_64 rng(7);
  const std::int64_t nVerts = 40;
  Eigen::Matrix3Xd pos(3, nVerts);
  for (std::int64_t i = 0; i < nVerts; ++i)
    pos.col(i) = Eigen::Vector3d(static_cast<double>(rng() % 1000),
                                 static_cast<double>(rng() % 1000),
                                 static_cast<double>(rng() % 1000));
  std::vector<Cell> cells;
  while (cells.size() < 60) {
    std::array<VertexId, 4> v;
    for (auto& id : v) id = static_cast<VertexId>(rng() % nVerts);
    if (v[0] == v[1] || v[0] == v[2] || v[0] == v[3] || v[1] == v[2] ||
        v[1] == v[3] || v[2] == v[3])
      continue;
    cells.push_back(make_tetrahedron(v[0], v[1], v[2], v[3]));
  }
  check_neighbors_match_cells(SimplicialComplex3::explicit_mesh(pos, cells));
}

TEST_CASE("interior faces are shared by exactly two tetrahedra") {
  const auto g = SimplicialComplex3::implicit_grid({4, 3, 3});
  std::map<std::array<VertexId, 3>, int> faceCount;
  for (const Cell tet : g.cells()) {
    for (int skip = 0; skip < 4; ++skip) {
      std::array<VertexId, 3> f;
      int k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f[k++] = tet.v[i];
      ++faceCount[f];
    }
  }
  auto on_boundary_plane = [&](const std::array<VertexId, 3>& f) {
    for (int axis = 0; axis < 3; ++axis) {
      const std::int64_t stride =
          axis == 0 ? 1 : axis == 1 ? g.grid_dims()[0]
                                    : g.grid_dims()[0] * g.grid_dims()[1];
      auto coord = [&](VertexId v) { return (v / stride) % g.grid_dims()[axis]; };
      for (const std::int64_t val : {std::int64_t{0}, g.grid_dims()[axis] - 1})
        if (coord(f[0]) == val && coord(f[1]) == val && coord(f[2]) == val)
          return true;
    }
    return false;
  };
  for (const auto& [face, count] : faceCount) {
    CHECK((count == 1 || count == 2));
    if (count == 1) CHECK(on_boundary_plane(face));
  }
}

TEST_CASE("the six tetrahedra of a cube partition it") {
  const Eigen::Vector3d spacing(0.5, 2.0, 1.25);
  const auto g = SimplicialComplex3::implicit_grid({2, 2, 2}, spacing);
  double total = 0;
  std::vector<Cell> tets;
  for (const Cell t : g.cells()) {
    tets.push_back(t);
    total += tet_volume(g, t);
  }
  CHECK(total == doctest::Approx(spacing.prod()).epsilon(1e-12));

  // Random interior points land strictly inside exactly one tetrahedron.
  std::mt19937_64 rng(11);
  auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector3d p = spacing.cwiseProduct(
        Eigen::Vector3d(uniform(), uniform(), uniform()));
    int strict = 0, loose = 0;
    for (const Cell& t : tets) {
      const Eigen::Vector3d a = g.position(t.v[0]);
      Eigen::Matrix3d m;
      m.col(0) = g.position(t.v[1]) - a;
      m.col(1) = g.position(t.v[2]) - a;
      m.col(2) = g.position(t.v[3]) - a;
      const Eigen::Vector3d bary = m.colPivHouseholderQr().solve(p - a);
      const double w0 = 1.0 - bary.sum();
      const double lo = std::min(w0, bary.minCoeff());
      if (lo > 1e-9) ++strict;
      if (lo > -1e-9) ++loose;
    }
    CHECK(strict <= 1);
    CHECK(loose >= 1);
  }
}

TEST_CASE("cell enumeration is deterministic and tets are ascending") {
  const auto g = SimplicialComplex3::implicit_grid({3, 3, 3});
  std::vector<Cell> first(g.cells().begin(), g.cells().end());
  std::vector<Cell> second(g.cells().begin(), g.cells().end());
  REQUIRE(first.size() == static_cast<std::size_t>(g.num_cells()));
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].v == second[i].v);
    for (int k = 1; k < first[i].size; ++k)
      CHECK(first[i].v[k - 1] < first[i].v[k]);
  }
}

TEST_CASE("explicit one-tet mesh yields exactly that tet") {
  Eigen::Matrix3Xd pos(3, 4);
  pos.col(0) << 0, 0, 0;
  pos.col(1) << 1, 0, 0;
  pos.col(2) << 0, 1, 0;
  pos.col(3) << 0, 0, 1;
  const auto mesh =
      SimplicialComplex3::explicit_mesh(pos, {make_tetrahedron(3, 1, 2, 0)});
  CHECK(mesh.num_cells() == 1);
  const Cell t = mesh.cell(0);
  CHECK(t.v == std::array<VertexId, 4>{0, 1, 2, 3});
  CHECK(mesh.link_edges(0) ==
        std::vector<std::pair<VertexId, VertexId>>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("invalid vertex and cell ids are rejected") {
  const auto g = SimplicialComplex3::implicit_grid({2, 2, 2});
  CHECK_THROWS_AS(g.neighbors(-1), std::out_of_range);
  CHECK_THROWS_AS(g.neighbors(8), std::out_of_range);
  CHECK_THROWS_AS(g.cell(6), std::out_of_range);
  CHECK_THROWS_AS(
      SimplicialComplex3::explicit_mesh(Eigen::Matrix3Xd(3, 2),
                                        {make_edge(0, 2)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      SimplicialComplex3::explicit_mesh(Eigen::Matrix3Xd(3, 3),
                                        {make_triangle(0, 1, 1)}),
      std::invalid_argument);
}

TEST_CASE("flat axis other than z still forms a 2-D sheet") {
  const auto g = SimplicialComplex3::implicit_grid({3, 1, 3});
  CHECK(g.dimension() == 2);
  CHECK(g.num_cells() == 8);
  check_neighbors_match_cells(g);
}
