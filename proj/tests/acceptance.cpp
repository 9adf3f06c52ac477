// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the
// scaling criterion is reported as [PASS]/[SOFT-FAIL] because absolute
// speedups depend on the hardware running the suite, while the harness
// output itself is asserted.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "fixtures.hpp"
#include "plmss/bench.hpp"
#include "plmss/io.hpp"
#include "plmss/marching.hpp"
#include "plmss/orderfield.hpp"
#include "plmss/segmentation.hpp"
#include "plmss/synth.hpp"

using namespace plmss;

namespace {

using Clock = std::chrono::steady_clock;
using Point = std::array<double, 3>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, bool pass, double seconds, const char* what) {
  std::printf("[%s] criterion %d (%.2fs): %s\n", pass ? "PASS" : "FAIL",
              criterion, seconds, what);
  std::fflush(stdout);
}

OrderField noise_order(const SimplicialComplex3& c, std::uint64_t seed) {
  return compute_order(
      synth_field(SynthKind::Noise, c.grid_dims(), 0, seed));
}

Point point_at(const SeparatingMesh& mesh, std::int64_t primitive, int corner) {
  const std::int64_t idx =
      mesh.indices[primitive * mesh.verts_per_primitive + corner];
  return {mesh.points(0, idx), mesh.points(1, idx), mesh.points(2, idx)};
}

std::multiset<std::vector<Point>> canonical_multiset(
    const SeparatingMesh& mesh) {
  std::multiset<std::vector<Point>> out;
  for (std::int64_t p = 0; p < mesh.num_primitives(); ++p) {
    std::vector<Point> pts;
    for (int k = 0; k < mesh.verts_per_primitive; ++k)
      pts.push_back(point_at(mesh, p, k));
    std::sort(pts.begin(), pts.end());
    out.insert(pts);
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 1: the reference fixture is reproduced exactly") {
  const auto start = Clock::now();
  const auto grid = fixtures::fig1_complex();
  const OrderField order = compute_order(fixtures::fig1_field());
  SegmentationResult seg = segment(grid, order, Direction::Both, 1);
  combine_ms(seg);

  // Extrema named by their order values: minima {0, 1}, maxima {14, 15}.
  REQUIRE(seg.minima.size() == 2);
  REQUIRE(seg.maxima.size() == 2);
  REQUIRE(order[seg.minima[0]] == 0);
  REQUIRE(order[seg.minima[1]] == 1);
  REQUIRE(order[seg.maxima[0]] == 14);
  REQUIRE(order[seg.maxima[1]] == 15);

  for (int v = 0; v < 16; ++v) {
    REQUIRE(seg.desc[v] == fixtures::kFig1Desc[v]);
    REQUIRE(seg.asc[v] == fixtures::kFig1Asc[v]);
  }
  REQUIRE(seg.num_regions() == 4);

  const double elapsed = seconds_since(start);
  REQUIRE(elapsed < 1.0);
  report(1, true, elapsed,
         "reference 4x4 fixture: extrema, both label fields, 4 regions");
}

TEST_CASE("criterion 2: labels equal the steepest-walk oracle, 100 seeds") {
  const auto start = Clock::now();
  std::int64_t vertices = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::int64_t side = 8 + static_cast<std::int64_t>(seed % 25);
    const auto grid = SimplicialComplex3::implicit_grid({side, side, side});
    const OrderField order = noise_order(grid, seed);
    const SegmentationResult seg = segment(grid, order, Direction::Both, 2);
    for (VertexId v = 0; v < grid.num_vertices(); ++v) {
      REQUIRE(seg.desc[v] ==
              oracle_integral_walk(grid, order, v, Direction::Descending));
      REQUIRE(seg.asc[v] ==
              oracle_integral_walk(grid, order, v, Direction::Ascending));
    }
    vertices += grid.num_vertices();
  }
  const double elapsed = seconds_since(start);
  REQUIRE(elapsed < 60.0);
  char msg[128];
  std::snprintf(msg, sizeof msg,
                "oracle equivalence on 100 random grids (%lld vertices)",
                static_cast<long long>(vertices));
  report(2, true, elapsed, msg);
}

TEST_CASE("criterion 3: identical output for 1, 2, 4, and 8 workers") {
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto grid = SimplicialComplex3::implicit_grid({16, 16, 16});
    const OrderField order = noise_order(grid, 1000 + seed);
    SegmentationResult base = segment(grid, order, Direction::Both, 1);
    combine_ms(base, 1);
    const auto baseMesh = canonical_multiset(
        emit_separators(grid, base.ms_region, 1));
    for (const int workers : {2, 4, 8}) {
      SegmentationResult seg = segment(grid, order, Direction::Both, workers);
      combine_ms(seg, workers);
      REQUIRE(seg.desc == base.desc);
      REQUIRE(seg.asc == base.asc);
      REQUIRE(seg.ms_region == base.ms_region);
      REQUIRE(canonical_multiset(emit_separators(grid, seg.ms_region,
                                                 workers)) == baseMesh);
    }
  }
  report(3, true, seconds_since(start),
         "labels and separator multisets identical across worker counts");
}

TEST_CASE("criterion 4: exhaustive lookup-table validity") {
  const auto start = Clock::now();
  const std::set<std::uint8_t> validTri(tables::kValidTriangleCodes.begin(),
                                        tables::kValidTriangleCodes.end());
  for (Label a = 0; a < 3; ++a)
    for (Label b = 0; b < 3; ++b)
      for (Label c = 0; c < 3; ++c) {
        const auto code = triangle_code({a, b, c});
        REQUIRE(validTri.count(code.code) == 1);
        const std::size_t n = tables::triangle_case(code.code).size();
        if (code.code == 0) REQUIRE(n == 0);
        if (code.code == 2 || code.code == 4 || code.code == 5)
          REQUIRE(n == 1);
        if (code.code == 6) REQUIRE(n == 3);
      }

  const std::set<std::uint8_t> validTet(tables::kValidTetraCodes.begin(),
                                        tables::kValidTetraCodes.end());
  const std::map<std::uint8_t, std::size_t> expected = {
      {0, 0},  {3, 1},  {8, 1},  {16, 1}, {21, 1},
      {10, 2}, {17, 2}, {20, 2}, {11, 5}, {19, 5},
      {23, 5}, {24, 5}, {25, 5}, {26, 5}, {27, 12}};
  std::set<std::uint8_t> seen;
  for (Label a = 0; a < 4; ++a)
    for (Label b = 0; b < 4; ++b)
      for (Label c = 0; c < 4; ++c)
        for (Label d = 0; d < 4; ++d) {
          const auto code = tetra_code({a, b, c, d});
          REQUIRE(validTet.count(code.code) == 1);
          REQUIRE(tables::tetra_case(code.code).size() ==
                  expected.at(code.code));
          seen.insert(code.code);
        }
  REQUIRE(seen == validTet);

  const double elapsed = seconds_since(start);
  REQUIRE(elapsed < 1.0);
  report(4, true, elapsed,
         "all label patterns map to the 5 + 15 valid codes with counts "
         "{0,1,3} / {0,1,2,5,12}");
}

TEST_CASE("criterion 5: separation soundness and crack-free faces") {
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto grid = SimplicialComplex3::implicit_grid({12, 12, 12});
    const OrderField order = noise_order(grid, 2000 + seed);
    SegmentationResult seg = segment(grid, order, Direction::Both, 2);
    combine_ms(seg, 2);
    const std::vector<Label>& labels = seg.ms_region;
    const SeparatingMesh mesh = emit_separators(grid, labels, 2);

    std::map<CellId, std::vector<std::int64_t>> byCell;
    for (std::int64_t p = 0; p < mesh.num_primitives(); ++p)
      byCell[mesh.source_cells[p]].push_back(p);

    // Mixed edges are touched exactly at their midpoints, uniform edges not
    // at all.
    for (CellId c = 0; c < grid.num_cells(); ++c) {
      const Cell cell = grid.cell(c);
      std::set<Point> cellPoints;
      if (const auto it = byCell.find(c); it != byCell.end())
        for (const std::int64_t p : it->second)
          for (int k = 0; k < 3; ++k) cellPoints.insert(point_at(mesh, p, k));
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          const Eigen::Vector3d a = grid.position(cell.v[i]);
          const Eigen::Vector3d b = grid.position(cell.v[j]);
          const Eigen::Vector3d mid = (a + b) / 2.0;
          const Point midPt = {mid.x(), mid.y(), mid.z()};
          const bool mixed = labels[cell.v[i]] != labels[cell.v[j]];
          REQUIRE(cellPoints.count(midPt) == (mixed ? 1u : 0u));
          for (const auto& pt : cellPoints) {
            if (pt == midPt) continue;
            const Eigen::Vector3d x(pt[0], pt[1], pt[2]);
            const double t = (x - a).dot(b - a) / (b - a).squaredNorm();
            if (t < -1e-9 || t > 1 + 1e-9) continue;
            REQUIRE((a + t * (b - a) - x).norm() > 1e-6);
          }
        }
    }

    // Face-restricted splits from both incident tets coincide.
    std::map<std::array<VertexId, 3>, std::vector<CellId>> faces;
    for (CellId c = 0; c < grid.num_cells(); ++c) {
      const Cell tet = grid.cell(c);
      for (int skip = 0; skip < 4; ++skip) {
        std::array<VertexId, 3> f;
        int k = 0;
        for (int i = 0; i < 4; ++i)
          if (i != skip) f[k++] = tet.v[i];
        faces[f].push_back(c);
      }
    }
    auto face_segments = [&](CellId c, const std::array<VertexId, 3>& face) {
      std::set<std::pair<Point, Point>> out;
      const auto it = byCell.find(c);
      if (it == byCell.end()) return out;
      const Eigen::Vector3d p = grid.position(face[0]);
      const Eigen::Vector3d q = grid.position(face[1]);
      const Eigen::Vector3d r = grid.position(face[2]);
      Eigen::Matrix<double, 3, 2> basis;
      basis.col(0) = q - p;
      basis.col(1) = r - p;
      const auto solver = basis.colPivHouseholderQr();
      auto onFace = [&](const Point& pt) {
        const Eigen::Vector3d x(pt[0], pt[1], pt[2]);
        const Eigen::Vector2d st = solver.solve(x - p);
        return (p + basis * st - x).norm() < 1e-9 && st[0] > -1e-9 &&
               st[1] > -1e-9 && st[0] + st[1] < 1 + 1e-9;
      };
      for (const std::int64_t prim : it->second) {
        std::array<Point, 3> pts;
        std::array<bool, 3> on;
        for (int k = 0; k < 3; ++k) {
          pts[k] = point_at(mesh, prim, k);
          on[k] = onFace(pts[k]);
        }
        for (int k = 0; k < 3; ++k) {
          const int k2 = (k + 1) % 3;
          if (on[k] && on[k2])
            out.insert(pts[k] <= pts[k2] ? std::make_pair(pts[k], pts[k2])
                                         : std::make_pair(pts[k2], pts[k]));
        }
      }
      return out;
    };
    for (const auto& [face, cells] : faces) {
      if (cells.size() != 2) continue;
      REQUIRE(face_segments(cells[0], face) == face_segments(cells[1], face));
    }
  }
  report(5, true, seconds_since(start),
         "20 random volumes: midpoint crossings exact, shared faces "
         "crack-free");
}

TEST_CASE("criterion 6: indexing counts equal geometry writes") {
  const auto start = Clock::now();
  const std::array<std::int64_t, 3> dims = {24, 24, 24};
  const auto grid = SimplicialComplex3::implicit_grid(dims);
  const ScalarField field = synth_field(SynthKind::Gaussians, dims, 4, 11);
  const OrderField order = compute_order(field);
  SegmentationResult seg = segment(grid, order, Direction::Both, 2);
  combine_ms(seg, 2);

  for (const int workers : {1, 2, 3, 4, 8}) {
    SeparatorIndex index = index_separators(grid, seg.ms_region, workers);
    const SeparatingMesh mesh = emit_geometry(grid, seg.ms_region, index);
    REQUIRE(index.plan.written == index.plan.counts);
    REQUIRE(index.plan.total() == mesh.num_primitives());
  }
  // The benchmark harness itself runs the same verification on every run.
  run_benchmark(grid, field, {1, 2}, 3, "allocation check");
  report(6, true, seconds_since(start),
         "per-worker phase-1 counts match phase-2 writes, benchmark included");
}

TEST_CASE("criterion 7: the whole domain, boundary included, is labeled") {
  const auto start = Clock::now();
  std::int64_t boundaryMaxima = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::array<std::int64_t, 3> dims = {12, 12, 12};
    const auto grid = SimplicialComplex3::implicit_grid(dims);
    const OrderField order =
        compute_order(synth_field(seed % 2 == 0 ? SynthKind::Noise
                                                : SynthKind::Gaussians,
                                  dims, 3, 3000 + seed));
    const SegmentationResult seg = segment(grid, order, Direction::Both, 2);

    const std::set<VertexId> maxima(seg.maxima.begin(), seg.maxima.end());
    const std::set<VertexId> minima(seg.minima.begin(), seg.minima.end());
    const std::set<VertexId> descLabels(seg.desc.begin(), seg.desc.end());

    for (VertexId v = 0; v < grid.num_vertices(); ++v) {
      REQUIRE(maxima.count(seg.desc[v]) == 1);  // no sentinel anywhere
      REQUIRE(minima.count(seg.asc[v]) == 1);
    }

    // Every boundary-vertex maximum of the link classification shows up as
    // a descending label.
    const auto& d = grid.grid_dims();
    for (VertexId v = 0; v < grid.num_vertices(); ++v) {
      const std::int64_t x = v % d[0];
      const std::int64_t y = (v / d[0]) % d[1];
      const std::int64_t z = v / (d[0] * d[1]);
      const bool boundary = x == 0 || x == d[0] - 1 || y == 0 ||
                            y == d[1] - 1 || z == 0 || z == d[2] - 1;
      if (!boundary) continue;
      if (classify_vertex(grid, order, v).kind == VertexKind::Maximum) {
        REQUIRE(descLabels.count(v) == 1);
        ++boundaryMaxima;
      }
    }
  }
  char msg[128];
  std::snprintf(msg, sizeof msg,
                "full segmentation incl. %lld boundary maxima across 10 "
                "volumes",
                static_cast<long long>(boundaryMaxima));
  REQUIRE(boundaryMaxima > 0);
  report(7, true, seconds_since(start), msg);
}

TEST_CASE("criterion 8: scaling table on a 128^3 volume (soft 3x bar)") {
  const auto start = Clock::now();
  const std::array<std::int64_t, 3> dims = {128, 128, 128};
  const auto grid = SimplicialComplex3::implicit_grid(dims);
  const ScalarField field = synth_field(SynthKind::Gaussians, dims, 4, 1);

  const BenchReport report8 =
      run_benchmark(grid, field, {1, 2, 4, 8}, 10, "gaussians:4 128^3");

  write_benchmark_table(report8, std::cout);
  write_benchmark_csv(report8, std::cout);

  REQUIRE(report8.rows.size() == 4);
  for (const auto& row : report8.rows) {
    REQUIRE(row.repeats == 10);
    REQUIRE(row.mean.segmentation > 0);
    REQUIRE(row.mean.index > 0);
    REQUIRE(row.speedup > 0);
    REQUIRE(row.efficiency > 0);
  }

  const auto segIndex = [](const BenchRow& r) {
    return r.mean.segmentation + r.mean.index;
  };
  const double speedup =
      segIndex(report8.rows.front()) / segIndex(report8.rows.back());
  const double elapsed = seconds_since(start);
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "segmentation+index speedup at 8 workers: %.2fx (bar: 3x, "
                "hardware threads: %u)",
                speedup, std::thread::hardware_concurrency());
  if (speedup >= 3.0) {
    report(8, true, elapsed, msg);
  } else {
    std::printf("[SOFT-FAIL] criterion 8 (%.2fs): %s\n", elapsed, msg);
    std::fflush(stdout);
  }
}
