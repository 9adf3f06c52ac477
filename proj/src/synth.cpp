// SPDX-License-Identifier: Apache-2.0
#include "plmss/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace plmss {

namespace {

// Fixed mapping from generator output to [0,1); distribution classes are
// implementation-defined and would break reproducibility guarantees.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SynthKind parse_synth_kind(const std::string& text, int& nGaussians) {
  if (text == "ramp") return SynthKind::Ramp;
  if (text == "noise") return SynthKind::Noise;
  if (text == "gaussians") return SynthKind::Gaussians;
  if (text.rfind("gaussians:", 0) == 0) {
    nGaussians = std::stoi(text.substr(10));
    if (nGaussians < 1)
      throw std::invalid_argument("gaussians count must be >= 1");
    return SynthKind::Gaussians;
  }
  throw std::invalid_argument("unknown synthetic field '" + text +
                              "' (expected ramp, noise, or gaussians[:N])");
}

ScalarField synth_field(SynthKind kind, std::array<std::int64_t, 3> dims,
                        int nGaussians, std::uint64_t seed) {
  const std::int64_t n = dims[0] * dims[1] * dims[2];
  if (n <= 0) throw std::invalid_argument("dims must be positive");
  ScalarField field;
  field.values.resize(n);

  switch (kind) {
    case SynthKind::Ramp:
      for (std::int64_t i = 0; i < n; ++i)
        field.values[i] = static_cast<double>(i);
      break;
    case SynthKind::Noise: {
      std::mt19937_64 rng(seed);
      for (std::int64_t i = 0; i < n; ++i) field.values[i] = uniform01(rng);
      break;
    }
    case SynthKind::Gaussians: {
      std::mt19937_64 rng(seed);
      struct Bump {
        double cx, cy, cz, invTwoSigmaSq, amplitude;
      };
      const double extent = static_cast<double>(
          std::max(dims[0], std::max(dims[1], dims[2])) - 1);
      std::vector<Bump> bumps(static_cast<std::size_t>(nGaussians));
      for (auto& b : bumps) {
        b.cx = (0.15 + 0.7 * uniform01(rng)) * static_cast<double>(dims[0] - 1);
        b.cy = (0.15 + 0.7 * uniform01(rng)) * static_cast<double>(dims[1] - 1);
        b.cz = (0.15 + 0.7 * uniform01(rng)) * static_cast<double>(dims[2] - 1);
        const double sigma = (0.08 + 0.10 * uniform01(rng)) * extent;
        b.invTwoSigmaSq = 1.0 / (2.0 * sigma * sigma);
        b.amplitude = 0.5 + 0.5 * uniform01(rng);
      }
      std::int64_t i = 0;
      for (std::int64_t z = 0; z < dims[2]; ++z)
        for (std::int64_t y = 0; y < dims[1]; ++y)
          for (std::int64_t x = 0; x < dims[0]; ++x, ++i) {
            double v = 0.0;
            for (const auto& b : bumps) {
              const double dx = static_cast<double>(x) - b.cx;
              const double dy = static_cast<double>(y) - b.cy;
              const double dz = static_cast<double>(z) - b.cz;
              v += b.amplitude *
                   std::exp(-(dx * dx + dy * dy + dz * dz) * b.invTwoSigmaSq);
            }
            field.values[i] = v;
          }
      break;
    }
  }
  return field;
}

}  // namespace plmss
