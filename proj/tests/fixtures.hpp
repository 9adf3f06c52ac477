// SPDX-License-Identifier: Apache-2.0
//
// Shared test fixture: the 4x4 reference triangulation with known order
// values, expected segmentations, and expected separating geometry.
//
// Vertex ids are x + 4*y. Order values per vertex id:
//   y=3 |  1  9 10 15
//   y=2 |  5  6  7  8
//   y=1 | 13 11  3  4
//   y=0 | 14 12  2  0
// Minima are order 0 (id 3) and order 1 (id 12); maxima are order 14 (id 0)
// and order 15 (id 15).
#pragma once

#include <array>
#include <utility>
#include <vector>

#include "plmss/complex.hpp"
#include "plmss/orderfield.hpp"
#include "plmss/types.hpp"

namespace fixtures {

inline constexpr std::array<double, 16> kFig1Order = {
    14, 12, 2, 0, 13, 11, 3, 4, 5, 6, 7, 8, 1, 9, 10, 15};

inline plmss::SimplicialComplex3 fig1_complex() {
  return plmss::SimplicialComplex3::implicit_grid({4, 4, 1});
}

inline plmss::ScalarField fig1_field() {
  plmss::ScalarField f;
  f.values.resize(16);
  for (int i = 0; i < 16; ++i) f.values[i] = kFig1Order[i];
  return f;
}

// Expected descending labels (maximum vertex id reached from each vertex).
inline constexpr std::array<plmss::VertexId, 16> kFig1Desc = {
    0, 0, 0, 15, 0, 0, 0, 15, 0, 0, 15, 15, 15, 15, 15, 15};

// Expected ascending labels (minimum vertex id reached from each vertex).
inline constexpr std::array<plmss::VertexId, 16> kFig1Asc = {
    3, 3, 3, 3, 12, 3, 3, 3, 12, 12, 3, 3, 12, 12, 12, 3};

using Point = std::array<double, 3>;
using Segment = std::pair<Point, Point>;

inline Segment make_segment(Point a, Point b) {
  return a <= b ? Segment{a, b} : Segment{b, a};
}

// The region-separator polyline of the descending segmentation: a staircase
// of edge midpoints from (0, 2.5) to (2.5, 0).
inline std::vector<Segment> fig1_desc_separators() {
  const std::array<std::array<double, 4>, 10> segs = {{
      {0.0, 2.5, 0.5, 2.5},
      {0.5, 2.5, 1.0, 2.5},
      {1.0, 2.5, 1.5, 2.5},
      {1.5, 2.5, 1.5, 2.0},
      {1.5, 2.0, 1.5, 1.5},
      {1.5, 1.5, 2.0, 1.5},
      {2.0, 1.5, 2.5, 1.5},
      {2.5, 1.5, 2.5, 1.0},
      {2.5, 1.0, 2.5, 0.5},
      {2.5, 0.5, 2.5, 0.0},
  }};
  std::vector<Segment> out;
  for (const auto& s : segs)
    out.push_back(make_segment({s[0], s[1], 0.0}, {s[2], s[3], 0.0}));
  return out;
}

// The Morse-Smale separator network: the descending staircase is re-routed
// through two three-label triangles whose barycenters fan out to the edge
// midpoints, plus the two side branches toward (0, 0.5) and (2.5, 3).
inline std::vector<Segment> fig1_ms_separators() {
  const double b1x = 4.0 / 3.0, b1y = 5.0 / 3.0;  // barycenter of {5, 9, 10}
  const double b2x = 5.0 / 3.0, b2y = 7.0 / 3.0;  // barycenter of {9, 10, 14}
  const std::array<std::array<double, 4>, 17> segs = {{
      {0.0, 0.5, 0.5, 1.0},
      {2.5, 0.0, 2.5, 0.5},
      {2.5, 0.5, 2.5, 1.0},
      {0.5, 1.0, 1.0, 1.5},
      {1.5, 1.5, 2.0, 1.5},
      {b1x, b1y, 1.0, 1.5},
      {b1x, b1y, 1.5, 1.5},
      {b1x, b1y, 1.5, 2.0},
      {2.5, 1.0, 2.5, 1.5},
      {2.0, 1.5, 2.5, 1.5},
      {0.5, 2.5, 1.0, 2.5},
      {0.0, 2.5, 0.5, 2.5},
      {b2x, b2y, 1.5, 2.0},
      {b2x, b2y, 1.5, 2.5},
      {b2x, b2y, 2.0, 2.5},
      {1.0, 2.5, 1.5, 2.5},
      {2.0, 2.5, 2.5, 3.0},
  }};
  std::vector<Segment> out;
  for (const auto& s : segs)
    out.push_back(make_segment({s[0], s[1], 0.0}, {s[2], s[3], 0.0}));
  return out;
}

// Region boundaries of the ascending segmentation: the thick diagonals along
// input edges, tagged with the owning minimum.
struct BoundaryEdge {
  plmss::VertexId u, v;
  plmss::Label tag;
};

inline std::vector<BoundaryEdge> fig1_asc_boundaries() {
  return {{0, 5, 3}, {5, 10, 3}, {10, 15, 3}, {4, 9, 12}, {9, 14, 12}};
}

}  // namespace fixtures
