// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "plmss/orderfield.hpp"

namespace plmss {

enum class SynthKind { Ramp, Noise, Gaussians };

/// Parses "ramp", "noise", or "gaussians[:N]" (N bumps, default 4).
SynthKind parse_synth_kind(const std::string& text, int& nGaussians);

/// Deterministic synthetic scalar fields for testing and benchmarking:
///  - ramp: strictly increasing with vertex id (one minimum, one maximum);
///  - noise: independent uniform values per vertex;
///  - gaussians: n random-centered bumps, so the field has about n maxima
///    before boundary effects.
/// The result depends only on (kind, dims, nGaussians, seed).
ScalarField synth_field(SynthKind kind, std::array<std::int64_t, 3> dims,
                        int nGaussians = 4, std::uint64_t seed = 0);

}  // namespace plmss
