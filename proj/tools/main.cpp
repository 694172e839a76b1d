// pbc-dbscan: DBSCAN clustering for point clouds in open and periodic
// domains. Subcommands: cluster, generate, verify, bench.
//
// Exit codes: 0 success (verify: clusterings equivalent), 1 verification
// failure, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pbcdbscan/bench.hpp"
#include "pbcdbscan/csv.hpp"
#include "pbcdbscan/datagen.hpp"
#include "pbcdbscan/oracle.hpp"
#include "pbcdbscan/pbc.hpp"
#include "pbcdbscan/run_config.hpp"

namespace {

using namespace pbcdbscan;

void add_boundary_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--dim", cfg.dim_flags,
                    "Boundary for one dimension, in order: \"open\" or \"periodic:LO:HI\"; "
                    "repeat once per dimension");
    cmd->add_option("--all-periodic", cfg.all_periodic,
                    "Shorthand: every dimension periodic on [LO:HI)");
}

void add_dbscan_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("-e,--epsilon", cfg.epsilon, "Neighborhood radius (domain units)")
        ->required();
    cmd->add_option("-m,--min-points", cfg.min_points,
                    "Core threshold, neighbor count including the point itself (default 5)");
}

int cmd_cluster(const RunConfig& cfg) {
    const PointSet points = read_points_csv(cfg.input_path);
    if (points.empty()) {
        write_labels(cfg.output_path, {});
        std::cout << SummaryLine("cluster")
                         .field("n", std::size_t{0})
                         .field("dim", points.dim())
                         .field("clusters", 0)
                         .field("noise", 0)
                         .field("padded", std::size_t{0})
                         .field("seconds", 0.0)
                         .str()
                  << '\n';
        return 0;
    }

    const DomainSpec domain = build_domain(cfg, points.dim());
    const DbscanParams params{cfg.epsilon, cfg.min_points};

    const auto t0 = std::chrono::steady_clock::now();
    const PeriodicRun run = dbscan_periodic_run(points, domain, params);
    const auto t1 = std::chrono::steady_clock::now();

    write_labels(cfg.output_path, run.labels);

    int noise = 0;
    for (int l : run.labels) noise += l == kNoise;
    std::cout << SummaryLine("cluster")
                     .field("n", points.size())
                     .field("dim", points.dim())
                     .field("clusters", run.cluster_count)
                     .field("noise", noise)
                     .field("padded", run.padded_count)
                     .field("seconds", std::chrono::duration<double>(t1 - t0).count())
                     .str()
              << '\n';
    return 0;
}

int cmd_generate(const RunConfig& cfg) {
    PointSet points;
    if (!cfg.preset.empty()) {
        const Preset* preset = find_preset(cfg.preset);
        if (!preset) {
            std::cerr << "unknown preset \"" << cfg.preset << "\"; available: " << preset_names()
                      << '\n';
            return 2;
        }
        const std::uint64_t seed = cfg.seed != 1 ? cfg.seed : preset->seed;
        points = generate_blobs(preset->blobs, preset->domain, seed);
    } else if (!cfg.blob_file.empty()) {
        const std::vector<BlobSpec> blobs = read_blob_specs_csv(cfg.blob_file);
        const std::size_t dim = blobs.empty() ? 0 : blobs.front().center.size();
        const DomainSpec domain = build_domain(cfg, dim);
        points = generate_blobs(blobs, domain, cfg.seed);
    } else {
        std::cerr << "generate needs --preset or --blobs\n";
        return 2;
    }

    write_points_csv(cfg.output_path, points);
    std::cout << SummaryLine("generate")
                     .field("n", points.size())
                     .field("dim", points.dim())
                     .field("output", cfg.output_path)
                     .str()
              << '\n';
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const PointSet points = read_points_csv(cfg.input_path);
    if (points.size() > 5000) {
        std::cerr << "warning: verification is O(N^2) and the input has " << points.size()
                  << " points; expect it to be slow\n";
    }
    const DomainSpec domain =
        points.empty() ? DomainSpec{} : build_domain(cfg, points.dim());
    const DbscanParams params{cfg.epsilon, cfg.min_points};

    const std::vector<int> fast = dbscan_periodic(points, domain, params);
    const std::vector<int> reference = dbscan_bruteforce(points, domain, params);
    const ClusterComparison cmp = compare_clusterings(fast, reference, points, domain, params);

    std::cout << "fast:      clusters=" << cmp.summary_a.clusters
              << " core=" << cmp.summary_a.core << " border=" << cmp.summary_a.border
              << " noise=" << cmp.summary_a.noise << '\n';
    std::cout << "reference: clusters=" << cmp.summary_b.clusters
              << " core=" << cmp.summary_b.core << " border=" << cmp.summary_b.border
              << " noise=" << cmp.summary_b.noise << '\n';
    if (!cmp.border_violations.empty()) {
        std::cout << "border violations:";
        for (int i : cmp.border_violations) std::cout << ' ' << i;
        std::cout << '\n';
    }
    std::cout << SummaryLine("verify")
                     .field("n", points.size())
                     .field("core_partition_match", cmp.core_partition_match)
                     .field("noise_match", cmp.noise_match)
                     .field("border_violations", cmp.border_violations.size())
                     .field("equivalent", cmp.equivalent())
                     .str()
              << '\n';
    return cmp.equivalent() ? 0 : 1;
}

int cmd_bench(const RunConfig& cfg) {
    if (cfg.dim_flags.empty() && cfg.all_periodic.empty()) {
        std::cerr << "bench needs --dim flags (their count sets the dimensionality)\n";
        return 2;
    }
    // --all-periodic alone leaves D unknown; default to 3.
    const std::size_t dim = cfg.dim_flags.empty() ? 3 : cfg.dim_flags.size();
    const DomainSpec domain = build_domain(cfg, dim);
    const DbscanParams params{cfg.epsilon, cfg.min_points};

    const BenchResult result =
        run_scaling_benchmark(cfg.sizes, domain, params, cfg.repetitions, cfg.seed, &std::cerr);

    if (cfg.output_path.empty()) {
        write_bench_csv(std::cout, result.rows);
    } else {
        std::ofstream out(cfg.output_path);
        if (!out) {
            std::cerr << "cannot open output file: " << cfg.output_path << '\n';
            return 2;
        }
        write_bench_csv(out, result.rows);
    }

    SummaryLine summary("bench");
    summary.field("sizes", result.rows.size());
    if (result.exponent) summary.field("exponent", *result.exponent);
    std::cout << summary.str() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DBSCAN clustering for open and periodic domains"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* cluster = app.add_subcommand("cluster", "Cluster a CSV point cloud");
    cluster->add_option("-i,--input", cfg.input_path, "Input CSV, one point per row")
        ->required();
    cluster->add_option("-o,--output", cfg.output_path, "Label file, one integer per row")
        ->required();
    add_boundary_options(cluster, cfg);
    add_dbscan_options(cluster, cfg);

    CLI::App* generate = app.add_subcommand("generate", "Emit a synthetic CSV point cloud");
    generate->add_option("-o,--output", cfg.output_path, "Output CSV path")->required();
    generate->add_option("--preset", cfg.preset, "Named demo setup (see README)");
    generate->add_option("--blobs", cfg.blob_file,
                         "Blob table CSV: D centers, D sigmas, count per row");
    generate->add_option("--seed", cfg.seed, "RNG seed (presets carry their own default)");
    add_boundary_options(generate, cfg);

    CLI::App* verify = app.add_subcommand(
        "verify", "Cluster twice (indexed and brute-force) and compare structurally");
    verify->add_option("-i,--input", cfg.input_path, "Input CSV, one point per row")->required();
    add_boundary_options(verify, cfg);
    add_dbscan_options(verify, cfg);

    CLI::App* bench = app.add_subcommand("bench", "Time clustering over a range of sizes");
    bench->add_option("--sizes", cfg.sizes, "Ascending point counts")->required()->delimiter(',');
    bench->add_option("-o,--output", cfg.output_path, "Write the timing table here (default stdout)");
    bench->add_option("--reps", cfg.repetitions, "Repetitions per size, median reported");
    bench->add_option("--seed", cfg.seed, "RNG seed");
    add_boundary_options(bench, cfg);
    add_dbscan_options(bench, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cluster)) return cmd_cluster(cfg);
        if (app.got_subcommand(generate)) return cmd_generate(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        if (app.got_subcommand(bench)) return cmd_bench(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
