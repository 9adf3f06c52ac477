// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plmss/complex.hpp"
#include "plmss/marching.hpp"
#include "plmss/orderfield.hpp"
#include "plmss/segmentation.hpp"

namespace plmss {

/// Malformed input: wrong sizes, bad magic, unparsable lines. The message
/// names the first offending byte count or line.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Underlying read/write failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class VolumeDtype { F32le, F64le, U8, U16le, I16le };

std::size_t dtype_size(VolumeDtype t);
VolumeDtype parse_dtype(const std::string& name);  // "f32le", "u8", ...
std::string dtype_name(VolumeDtype t);

/// Headerless raw volume, little-endian, x fastest then y then z. The file
/// size must equal X*Y*Z*sizeof(dtype); dims/dtype/origin/spacing travel out
/// of band (command line).
struct VolumeSpec {
  std::filesystem::path path;
  std::array<std::int64_t, 3> dims{0, 0, 0};
  VolumeDtype dtype = VolumeDtype::F32le;
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d spacing = Eigen::Vector3d::Ones();
};

struct VolumeData {
  SimplicialComplex3 complex;
  ScalarField field;
};

VolumeData read_volume(const VolumeSpec& spec);
void write_volume(const VolumeSpec& spec, const ScalarField& field);

/// ASCII mesh: "v x y z s" vertex lines (s = scalar) and "c i j k [l]" cell
/// lines with 0-based indices; 3 indices form triangles, 4 tetrahedra, one
/// arity per file. '#' lines and blank lines are skipped.
struct MeshData {
  SimplicialComplex3 complex;
  ScalarField field;
};

MeshData read_mesh_ascii(const std::filesystem::path& path);

/// Label file: magic "PLMSSLBL", u32 version = 1, u64 nVertices, then one
/// (u64 asc, u64 desc) record per vertex, all little-endian.
void write_labels(const SegmentationResult& seg,
                  const std::filesystem::path& path);

struct LabelsData {
  std::vector<VertexId> asc;
  std::vector<VertexId> desc;
};

LabelsData read_labels(const std::filesystem::path& path);

/// OBJ-style output: "v x y z" lines, then "f i j k" (triangles) or "l i j"
/// (segments) with 1-based indices. Region tags become "g rA_rB" group
/// headers emitted whenever the tag changes.
void write_surface_obj(const SeparatingMesh& mesh,
                       const std::filesystem::path& path);

}  // namespace plmss
