#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pbcdbscan/dbscan.hpp"
#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

struct BenchRow {
    std::size_t n = 0;
    double seconds = 0.0;         // median over repetitions
    double padded_fraction = 0.0; // padded points / n
};

struct BenchResult {
    std::vector<BenchRow> rows;
    // Least-squares slope of log(seconds) vs log(n); absent below 2 sizes.
    std::optional<double> exponent;
};

// Times dbscan_periodic on uniform data of each size. Sizes must be
// ascending. Progress lines go to *progress when given, keeping the table
// stream clean.
BenchResult run_scaling_benchmark(std::span<const std::size_t> sizes, const DomainSpec& domain,
                                  const DbscanParams& params, int repetitions,
                                  std::uint64_t seed, std::ostream* progress = nullptr);

double fit_power_law_exponent(std::span<const BenchRow> rows);

// CSV table with header "n,seconds,padded_fraction".
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

} // namespace pbcdbscan
