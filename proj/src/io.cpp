// SPDX-License-Identifier: Apache-2.0
#include "plmss/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace plmss {

namespace {

std::uint64_t load_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_le(unsigned char* p, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    p[i] = static_cast<unsigned char>(v & 0xff);
    v >>= 8;
  }
}

std::vector<unsigned char> read_file(const std::filesystem::path& path,
                                     std::uint64_t expectedBytes) {
  std::error_code ec;
  const auto actual = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
  if (actual != expectedBytes)
    throw FormatError(path.string() + ": expected " +
                      std::to_string(expectedBytes) + " bytes, got " +
                      std::to_string(actual));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes(expectedBytes);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!in) throw IoError("short read on " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path,
                const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed on " + path.string());
}

constexpr char kLabelMagic[8] = {'P', 'L', 'M', 'S', 'S', 'L', 'B', 'L'};

}  // namespace

std::size_t dtype_size(VolumeDtype t) {
  switch (t) {
    case VolumeDtype::F32le: return 4;
    case VolumeDtype::F64le: return 8;
    case VolumeDtype::U8: return 1;
    case VolumeDtype::U16le: return 2;
    case VolumeDtype::I16le: return 2;
  }
  return 0;
}

VolumeDtype parse_dtype(const std::string& name) {
  if (name == "f32le") return VolumeDtype::F32le;
  if (name == "f64le") return VolumeDtype::F64le;
  if (name == "u8") return VolumeDtype::U8;
  if (name == "u16le") return VolumeDtype::U16le;
  if (name == "i16le") return VolumeDtype::I16le;
  throw FormatError("unknown dtype '" + name +
                    "' (expected f32le, f64le, u8, u16le, or i16le)");
}

std::string dtype_name(VolumeDtype t) {
  switch (t) {
    case VolumeDtype::F32le: return "f32le";
    case VolumeDtype::F64le: return "f64le";
    case VolumeDtype::U8: return "u8";
    case VolumeDtype::U16le: return "u16le";
    case VolumeDtype::I16le: return "i16le";
  }
  return "?";
}

VolumeData read_volume(const VolumeSpec& spec) {
  const std::int64_t n = spec.dims[0] * spec.dims[1] * spec.dims[2];
  if (n <= 0) throw FormatError("volume dims must be positive");
  const std::size_t elem = dtype_size(spec.dtype);
  const auto bytes =
      read_file(spec.path, static_cast<std::uint64_t>(n) * elem);

  ScalarField field;
  field.values.resize(n);
  const unsigned char* p = bytes.data();
  for (std::int64_t i = 0; i < n; ++i, p += elem) {
    switch (spec.dtype) {
      case VolumeDtype::F32le:
        field.values[i] = std::bit_cast<float>(
            static_cast<std::uint32_t>(load_le(p, 4)));
        break;
      case VolumeDtype::F64le:
        field.values[i] = std::bit_cast<double>(load_le(p, 8));
        break;
      case VolumeDtype::U8:
        field.values[i] = static_cast<double>(p[0]);
        break;
      case VolumeDtype::U16le:
        field.values[i] = static_cast<double>(load_le(p, 2));
        break;
      case VolumeDtype::I16le:
        field.values[i] = static_cast<double>(
            static_cast<std::int16_t>(static_cast<std::uint16_t>(load_le(p, 2))));
        break;
    }
  }
  return {SimplicialComplex3::implicit_grid(spec.dims, spec.spacing,
                                            spec.origin),
          std::move(field)};
}

void write_volume(const VolumeSpec& spec, const ScalarField& field) {
  const std::int64_t n = spec.dims[0] * spec.dims[1] * spec.dims[2];
  if (field.values.size() != n)
    throw std::invalid_argument("field size does not match volume dims");
  const std::size_t elem = dtype_size(spec.dtype);
  std::vector<unsigned char> bytes(static_cast<std::size_t>(n) * elem);
  unsigned char* p = bytes.data();
  for (std::int64_t i = 0; i < n; ++i, p += elem) {
    const double v = field.values[i];
    switch (spec.dtype) {
      case VolumeDtype::F32le:
        store_le(p, std::bit_cast<std::uint32_t>(static_cast<float>(v)), 4);
        break;
      case VolumeDtype::F64le:
        store_le(p, std::bit_cast<std::uint64_t>(v), 8);
        break;
      case VolumeDtype::U8:
        p[0] = static_cast<unsigned char>(v);
        break;
      case VolumeDtype::U16le:
        store_le(p, static_cast<std::uint16_t>(v), 2);
        break;
      case VolumeDtype::I16le:
        store_le(p, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)),
                 2);
        break;
    }
  }
  write_file(spec.path, bytes);
}

MeshData read_mesh_ascii(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::vector<Eigen::Vector3d> positions;
  std::vector<double> scalars;
  std::vector<Cell> cells;
  int arity = 0;

  std::string line;
  std::int64_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto fail = [&](const std::string& why) -> void {
      throw FormatError(path.string() + ":" + std::to_string(lineNo) + ": " +
                        why);
    };
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "v") {
      double x, y, z, s;
      if (!(ls >> x >> y >> z >> s))
        fail("vertex line needs 'v x y z s'");
      positions.emplace_back(x, y, z);
      scalars.push_back(s);
    } else if (head == "c") {
      std::vector<VertexId> ids;
      VertexId id;
      while (ls >> id) ids.push_back(id);
      if (ids.size() != 3 && ids.size() != 4)
        fail("cell line needs 3 or 4 indices, got " +
             std::to_string(ids.size()));
      if (arity == 0)
        arity = static_cast<int>(ids.size());
      else if (arity != static_cast<int>(ids.size()))
        fail("mixed cell arities (file started with " + std::to_string(arity) +
             ")");
      for (const VertexId v : ids)
        if (v < 0 || v >= static_cast<VertexId>(positions.size()))
          fail("cell index " + std::to_string(v) + " out of range");
      Cell c;
      c.size = arity;
      for (int i = 0; i < arity; ++i) c.v[i] = ids[i];
      cells.push_back(c);
    } else {
      fail("unknown record '" + head + "'");
    }
  }
  if (positions.empty()) throw FormatError(path.string() + ": no vertices");
  if (cells.empty()) throw FormatError(path.string() + ": no cells");

  Eigen::Matrix3Xd pos(3, static_cast<std::int64_t>(positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i)
    pos.col(static_cast<std::int64_t>(i)) = positions[i];
  ScalarField field;
  field.values =
      Eigen::Map<const Eigen::VectorXd>(scalars.data(), scalars.size());
  return {SimplicialComplex3::explicit_mesh(std::move(pos), std::move(cells)),
          std::move(field)};
}

void write_labels(const SegmentationResult& seg,
                  const std::filesystem::path& path) {
  if (!seg.has_asc() || !seg.has_desc() || seg.asc.size() != seg.desc.size())
    throw std::invalid_argument(
        "label output needs matching ascending and descending arrays");
  const std::uint64_t n = seg.asc.size();
  std::vector<unsigned char> bytes(8 + 4 + 8 + n * 16);
  unsigned char* p = bytes.data();
  std::memcpy(p, kLabelMagic, 8);
  p += 8;
  store_le(p, 1, 4);
  p += 4;
  store_le(p, n, 8);
  p += 8;
  for (std::uint64_t i = 0; i < n; ++i) {
    store_le(p, static_cast<std::uint64_t>(seg.asc[i]), 8);
    store_le(p + 8, static_cast<std::uint64_t>(seg.desc[i]), 8);
    p += 16;
  }
  write_file(path, bytes);
}

LabelsData read_labels(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
  if (size < 20)
    throw FormatError(path.string() + ": too small for a label header (" +
                      std::to_string(size) + " bytes, need 20)");
  const auto bytes = read_file(path, size);
  const unsigned char* p = bytes.data();
  if (std::memcmp(p, kLabelMagic, 8) != 0)
    throw FormatError(path.string() + ": bad magic at byte 0");
  const std::uint64_t version = load_le(p + 8, 4);
  if (version != 1)
    throw FormatError(path.string() + ": unsupported version " +
                      std::to_string(version));
  const std::uint64_t n = load_le(p + 12, 8);
  const std::uint64_t expected = 20 + n * 16;
  if (size != expected)
    throw FormatError(path.string() + ": expected " +
                      std::to_string(expected) + " bytes for " +
                      std::to_string(n) + " records, got " +
                      std::to_string(size));
  LabelsData out;
  out.asc.resize(n);
  out.desc.resize(n);
  p += 20;
  for (std::uint64_t i = 0; i < n; ++i, p += 16) {
    out.asc[i] = static_cast<VertexId>(load_le(p, 8));
    out.desc[i] = static_cast<VertexId>(load_le(p + 8, 8));
  }
  return out;
}

void write_surface_obj(const SeparatingMesh& mesh,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  char buf[128];
  out << "# separating geometry: " << mesh.num_points() << " points, "
      << mesh.num_primitives()
      << (mesh.verts_per_primitive == 3 ? " triangles\n" : " segments\n");
  for (std::int64_t i = 0; i < mesh.num_points(); ++i) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n",
                  mesh.points(0, i), mesh.points(1, i), mesh.points(2, i));
    out << buf;
  }
  std::array<Label, 2> current{-2, -2};
  for (std::int64_t prim = 0; prim < mesh.num_primitives(); ++prim) {
    if (mesh.regions[prim] != current) {
      current = mesh.regions[prim];
      out << "g r" << current[0];
      if (current[1] >= 0) out << "_r" << current[1];
      out << '\n';
    }
    const std::int64_t base = prim * mesh.verts_per_primitive;
    out << (mesh.verts_per_primitive == 3 ? 'f' : 'l');
    for (int k = 0; k < mesh.verts_per_primitive; ++k)
      out << ' ' << mesh.indices[base + k] + 1;
    out << '\n';
  }
  if (!out) throw IoError("write failed on " + path.string());
}

}  // namespace plmss
