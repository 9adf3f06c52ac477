// SPDX-License-Identifier: Apache-2.0
#include "plmss/bench.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "plmss/segmentation.hpp"

namespace plmss {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

PhaseTimes trimmed_mean_by_total(std::span<const PhaseTimes> runs) {
  if (runs.size() < 3)
    throw std::invalid_argument(
        "trimmed mean needs at least 3 runs to drop best and worst");
  std::size_t best = 0, worst = runs.size() - 1;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].total() < runs[best].total()) best = i;
  worst = best == runs.size() - 1 ? 0 : runs.size() - 1;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (i != best && runs[i].total() >= runs[worst].total()) worst = i;

  PhaseTimes mean;
  const double k = 1.0 / static_cast<double>(runs.size() - 2);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i == best || i == worst) continue;
    mean.order += k * runs[i].order;
    mean.segmentation += k * runs[i].segmentation;
    mean.combine += k * runs[i].combine;
    mean.index += k * runs[i].index;
    mean.geometry += k * runs[i].geometry;
  }
  return mean;
}

BenchReport run_benchmark(const SimplicialComplex3& complex,
                          const ScalarField& field,
                          const std::vector<int>& workerCounts, int repeats,
                          std::string dataset, SegMode mode) {
  if (repeats < 3)
    throw std::invalid_argument("benchmark needs repeats >= 3");
  if (workerCounts.empty())
    throw std::invalid_argument("benchmark needs at least one worker count");

  BenchReport report;
  report.dataset = std::move(dataset);

  for (const int workers : workerCounts) {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    std::vector<PhaseTimes> runs;
    runs.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
      PhaseTimes t;
      auto mark = std::chrono::steady_clock::now();

      const OrderField order = compute_order(field);
      t.order = seconds_since(mark);

      mark = std::chrono::steady_clock::now();
      SegmentationResult seg =
          segment(complex, order, Direction::Both, workers);
      t.segmentation = seconds_since(mark);

      mark = std::chrono::steady_clock::now();
      combine_ms(seg, workers);
      t.combine = seconds_since(mark);

      const auto fields = select_labels(seg, mode);
      for (const auto& labels : fields) {
        mark = std::chrono::steady_clock::now();
        SeparatorIndex index = index_separators(complex, labels, workers);
        t.index += seconds_since(mark);

        mark = std::chrono::steady_clock::now();
        emit_geometry(complex, labels, index);
        t.geometry += seconds_since(mark);
      }
      runs.push_back(t);
    }
    BenchRow row;
    row.workers = workers;
    row.repeats = repeats;
    row.mean = trimmed_mean_by_total(runs);
    report.rows.push_back(row);
  }

  const double base = report.rows.front().mean.total();
  for (auto& row : report.rows) {
    row.speedup = row.mean.total() > 0 ? base / row.mean.total() : 1.0;
    row.efficiency = row.speedup / static_cast<double>(row.workers);
  }
  return report;
}

void write_benchmark_csv(const BenchReport& report, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  char line[256];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line,
                  "%s,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.3f,%.3f\n",
                  report.dataset.c_str(), r.workers, r.repeats, r.mean.order,
                  r.mean.segmentation, r.mean.combine, r.mean.index,
                  r.mean.geometry, r.mean.total(), r.speedup, r.efficiency);
    out << line;
  }
}

void write_benchmark_table(const BenchReport& report, std::ostream& out) {
  out << "dataset: " << report.dataset << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%8s %9s %9s %9s %9s %9s %9s %8s %6s\n",
                "workers", "order", "seg", "ms", "index", "geom", "total",
                "speedup", "eff");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line,
                  "%8d %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %8.2f %6.2f\n",
                  r.workers, r.mean.order, r.mean.segmentation, r.mean.combine,
                  r.mean.index, r.mean.geometry, r.mean.total(), r.speedup,
                  r.efficiency);
    out << line;
  }
}

}  // namespace plmss
