// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: reads a raw volume, an ASCII mesh, or a synthetic
// field, runs order -> segmentation -> combination -> geometry, writes label
// and surface artifacts, and optionally sweeps worker counts under the
// benchmark protocol.
//
// Exit codes: 0 success, 1 usage/config, 2 malformed input, 3 compute error,
// 4 output failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plmss/bench.hpp"
#include "plmss/io.hpp"
#include "plmss/parallel.hpp"
#include "plmss/segmentation.hpp"
#include "plmss/synth.hpp"

namespace {

using namespace plmss;

struct Options {
  std::string input, mesh, synth;
  std::string dims, spacing = "1,1,1", origin = "0,0,0";
  std::string dtype = "f32le";
  std::string mode = "ms", geometry = "separators";
  std::string workers;
  std::string outLabels, outSurface;
  bool weld = false, benchmark = false;
  int repeats = 10;
  std::uint64_t seed = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::array<std::int64_t, 3> parse_triplet_i(const std::string& text,
                                            const char* what) {
  std::array<std::int64_t, 3> out{};
  char c1 = 0, c2 = 0;
  std::istringstream s(text);
  if (!(s >> out[0] >> c1 >> out[1] >> c2 >> out[2]) || c1 != ',' || c2 != ',')
    throw UsageError(std::string(what) + " must be 'X,Y,Z', got '" + text +
                     "'");
  return out;
}

Eigen::Vector3d parse_triplet_d(const std::string& text, const char* what) {
  Eigen::Vector3d out;
  char c1 = 0, c2 = 0;
  std::istringstream s(text);
  if (!(s >> out[0] >> c1 >> out[1] >> c2 >> out[2]) || c1 != ',' || c2 != ',')
    throw UsageError(std::string(what) + " must be 'x,y,z', got '" + text +
                     "'");
  return out;
}

std::vector<int> parse_workers(const std::string& text) {
  if (text.empty()) return {default_workers()};
  std::vector<int> out;
  std::istringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    const int w = std::stoi(item);
    if (w < 1) throw UsageError("worker counts must be >= 1");
    out.push_back(w);
  }
  if (out.empty()) throw UsageError("empty worker list");
  return out;
}

SegMode parse_mode(const std::string& text) {
  if (text == "asc") return SegMode::Ascending;
  if (text == "desc") return SegMode::Descending;
  if (text == "ms") return SegMode::MorseSmale;
  if (text == "union") return SegMode::Union;
  throw UsageError("mode must be asc, desc, ms, or union");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

struct LoadedInput {
  SimplicialComplex3 complex;
  ScalarField field;
  std::string descriptor;
};

LoadedInput load_input(const Options& opt) {
  if (!opt.synth.empty()) {
    if (opt.dims.empty()) throw UsageError("--synth requires --dims");
    const auto dims = parse_triplet_i(opt.dims, "--dims");
    int nGaussians = 4;
    const SynthKind kind = parse_synth_kind(opt.synth, nGaussians);
    ScalarField field = synth_field(kind, dims, nGaussians, opt.seed);
    auto complex =
        SimplicialComplex3::implicit_grid(dims,
                                          parse_triplet_d(opt.spacing, "--spacing"),
                                          parse_triplet_d(opt.origin, "--origin"));
    if (!opt.input.empty()) {
      // Persist the generated volume so the run is reproducible from a file.
      VolumeSpec spec;
      spec.path = opt.input;
      spec.dims = dims;
      spec.dtype = VolumeDtype::F64le;
      spec.spacing = complex.grid_spacing();
      spec.origin = complex.grid_origin();
      write_volume(spec, field);
    }
    std::ostringstream name;
    name << opt.synth << " seed=" << opt.seed << ' ' << dims[0] << 'x'
         << dims[1] << 'x' << dims[2];
    return {std::move(complex), std::move(field), name.str()};
  }
  if (!opt.mesh.empty() || (!opt.input.empty() && opt.dims.empty())) {
    const std::string path = opt.mesh.empty() ? opt.input : opt.mesh;
    MeshData data = read_mesh_ascii(path);
    return {std::move(data.complex), std::move(data.field), path};
  }
  if (!opt.input.empty()) {
    VolumeSpec spec;
    spec.path = opt.input;
    spec.dims = parse_triplet_i(opt.dims, "--dims");
    spec.dtype = parse_dtype(opt.dtype);
    spec.spacing = parse_triplet_d(opt.spacing, "--spacing");
    spec.origin = parse_triplet_d(opt.origin, "--origin");
    VolumeData data = read_volume(spec);
    return {std::move(data.complex), std::move(data.field), opt.input};
  }
  throw UsageError("no input: pass --input, --mesh, or --synth");
}

int run(const Options& opt) {
  const SegMode mode = parse_mode(opt.mode);
  if (opt.geometry != "separators" && opt.geometry != "boundaries" &&
      opt.geometry != "none")
    throw UsageError("geometry must be separators, boundaries, or none");
  if (opt.geometry == "none" && !opt.outSurface.empty())
    throw UsageError("--out-surface requires --geometry separators|boundaries");
  const std::vector<int> workerList = parse_workers(opt.workers);

  const LoadedInput in = load_input(opt);

  if (opt.benchmark) {
    if (opt.repeats < 3)
      throw UsageError("--benchmark needs --repeats >= 3 for trimming");
    const SegMode benchMode = mode;
    BenchReport report = run_benchmark(in.complex, in.field, workerList,
                                       opt.repeats, in.descriptor, benchMode);
    write_benchmark_table(report, std::cerr);
    write_benchmark_csv(report, std::cout);
  }

  const bool wantArtifacts =
      !opt.outLabels.empty() || !opt.outSurface.empty() || !opt.benchmark;
  if (!wantArtifacts) return 0;
  if (!opt.benchmark && workerList.size() != 1)
    throw UsageError("a worker sweep requires --benchmark");
  const int workers = workerList.back();

  PhaseTimes t;
  auto mark = std::chrono::steady_clock::now();
  const OrderField order = compute_order(in.field);
  t.order = seconds_since(mark);

  mark = std::chrono::steady_clock::now();
  SegmentationResult seg = segment(in.complex, order, Direction::Both, workers);
  t.segmentation = seconds_since(mark);

  mark = std::chrono::steady_clock::now();
  combine_ms(seg, workers);
  t.combine = seconds_since(mark);

  SeparatingMesh surface;
  if (opt.geometry != "none") {
    for (const auto& labels : select_labels(seg, mode)) {
      SeparatingMesh part;
      if (opt.geometry == "separators") {
        mark = std::chrono::steady_clock::now();
        SeparatorIndex index = index_separators(in.complex, labels, workers);
        t.index += seconds_since(mark);
        mark = std::chrono::steady_clock::now();
        part = emit_geometry(in.complex, labels, index);
        t.geometry += seconds_since(mark);
      } else {
        mark = std::chrono::steady_clock::now();
        part = emit_boundaries(in.complex, labels, {}, workers);
        t.geometry += seconds_since(mark);
      }
      append_mesh(surface, part);
    }
    if (opt.weld) weld_points(surface);
  }

  std::printf(
      "phases[s]: order=%.4f segmentation=%.4f ms=%.4f index=%.4f "
      "geometry=%.4f total=%.4f (workers=%d)\n",
      t.order, t.segmentation, t.combine, t.index, t.geometry, t.total(),
      workers);

  if (!opt.outLabels.empty()) write_labels(seg, opt.outLabels);
  if (!opt.outSurface.empty()) write_surface_obj(surface, opt.outSurface);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "plmss: parallel Morse-Smale segmentation of piecewise linear scalar "
      "fields, with region separator/boundary extraction and a strong-scaling "
      "benchmark harness"};
  Options opt;
  app.add_option("--input", opt.input,
                 "Raw volume path (with --dims), ASCII mesh path (without "
                 "--dims), or destination of the generated volume (--synth)");
  app.add_option("--mesh", opt.mesh, "ASCII mesh path ('v x y z s' / 'c i j k [l]')");
  app.add_option("--dims", opt.dims, "Volume dims X,Y,Z");
  app.add_option("--dtype", opt.dtype,
                 "Volume scalar type: f32le, f64le, u8, u16le, i16le");
  app.add_option("--spacing", opt.spacing, "Grid spacing sx,sy,sz");
  app.add_option("--origin", opt.origin, "Grid origin ox,oy,oz");
  app.add_option("--mode", opt.mode, "Segmentation: asc, desc, ms, union");
  app.add_option("--geometry", opt.geometry,
                 "Geometry: separators, boundaries, none");
  app.add_option("--workers", opt.workers,
                 "Worker count, or comma list with --benchmark "
                 "(default: PLMSS_WORKERS or hardware)");
  app.add_flag("--weld", opt.weld, "Merge bitwise-identical surface points");
  app.add_option("--out-labels", opt.outLabels, "Label file destination");
  app.add_option("--out-surface", opt.outSurface, "Surface file destination");
  app.add_flag("--benchmark", opt.benchmark,
               "Measure phase times per worker count (CSV on stdout, table on "
               "stderr)");
  app.add_option("--repeats", opt.repeats,
                 "Benchmark repetitions per worker count (>= 3)");
  app.add_option("--synth", opt.synth,
                 "Synthetic field: ramp, noise, gaussians[:N]");
  app.add_option("--seed", opt.seed, "Seed for synthetic fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return run(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
