// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "plmss/complex.hpp"
#include "plmss/marching.hpp"
#include "plmss/orderfield.hpp"

namespace plmss {

/// Wall-clock seconds of one pipeline pass, split at the phase boundaries
/// the benchmark tables report.
struct PhaseTimes {
  double order = 0;
  double segmentation = 0;  // ascending + descending, fused
  double combine = 0;       // extremum-pair combination
  double index = 0;         // marching phase 1
  double geometry = 0;      // marching phase 2

  double total() const {
    return order + segmentation + combine + index + geometry;
  }
};

struct BenchRow {
  int workers = 1;
  int repeats = 0;
  PhaseTimes mean;    // trimmed mean over the repeats
  double speedup = 1; // baseline total / this total
  double efficiency = 1;
};

struct BenchReport {
  std::string dataset;
  std::vector<BenchRow> rows;  // one per requested worker count
};

/// Drops exactly the best and the worst run by total time and averages the
/// remaining runs phase by phase. Needs at least 3 runs.
PhaseTimes trimmed_mean_by_total(std::span<const PhaseTimes> runs);

/// Runs the full pipeline `repeats` times per worker count and reduces each
/// sweep entry with the trimmed-mean protocol. Speedup is measured against
/// the first worker count in the list (pass 1 first for absolute speedups);
/// efficiency is speedup divided by workers.
BenchReport run_benchmark(const SimplicialComplex3& complex,
                          const ScalarField& field,
                          const std::vector<int>& workerCounts, int repeats,
                          std::string dataset,
                          SegMode mode = SegMode::MorseSmale);

inline constexpr const char* kBenchCsvHeader =
    "dataset,workers,repeats,order_s,segmentation_s,combine_s,index_s,"
    "geometry_s,total_s,speedup,efficiency";

void write_benchmark_csv(const BenchReport& report, std::ostream& out);
void write_benchmark_table(const BenchReport& report, std::ostream& out);

}  // namespace plmss
