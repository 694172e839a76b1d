#include "pbcdbscan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "pbcdbscan/datagen.hpp"
#include "pbcdbscan/pbc.hpp"

namespace pbcdbscan {

BenchResult run_scaling_benchmark(std::span<const std::size_t> sizes, const DomainSpec& domain,
                                  const DbscanParams& params, int repetitions,
                                  std::uint64_t seed, std::ostream* progress) {
    params.validate();
    domain.require_epsilon_valid(params.epsilon);
    if (repetitions < 1) {
        throw std::invalid_argument("repetitions must be >= 1");
    }
    if (!std::is_sorted(sizes.begin(), sizes.end())) {
        throw std::invalid_argument("benchmark sizes must be ascending");
    }

    BenchResult result;
    std::vector<PointSet> inputs;
    inputs.reserve(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        inputs.push_back(generate_uniform(sizes[k], domain, seed + k));
    }

    // Round-robin over the sizes so slow machine-state drift (frequency,
    // competing load) spreads evenly instead of biasing the large sizes,
    // with one untimed warmup ladder for page faults and allocator growth.
    std::vector<std::vector<double>> times(sizes.size());
    std::vector<std::size_t> padded(sizes.size(), 0);
    for (int rep = -1; rep < repetitions; ++rep) {
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const PeriodicRun run = dbscan_periodic_run(inputs[k], domain, params);
            const auto t1 = std::chrono::steady_clock::now();
            if (rep >= 0) {
                times[k].push_back(std::chrono::duration<double>(t1 - t0).count());
                padded[k] = run.padded_count;
            }
        }
    }

    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::sort(times[k].begin(), times[k].end());
        BenchRow row;
        row.n = sizes[k];
        row.seconds = times[k][times[k].size() / 2];
        row.padded_fraction =
            row.n == 0 ? 0.0 : static_cast<double>(padded[k]) / static_cast<double>(row.n);
        result.rows.push_back(row);
        if (progress) {
            *progress << "bench n=" << row.n << " seconds=" << row.seconds
                      << " padded_fraction=" << row.padded_fraction << '\n';
        }
    }
    if (result.rows.size() >= 2) {
        result.exponent = fit_power_law_exponent(result.rows);
    }
    return result;
}

double fit_power_law_exponent(std::span<const BenchRow> rows) {
    if (rows.size() < 2) {
        throw std::invalid_argument("power-law fit needs at least two sizes");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(rows.size());
    for (const BenchRow& r : rows) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(std::max(r.seconds, 1e-9));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
    out << "n,seconds,padded_fraction\n";
    char buf[80];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6g,%.6g\n", r.n, r.seconds, r.padded_fraction);
        out << buf;
    }
}

} // namespace pbcdbscan
