#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

// Parsed command-line options shared by the CLI subcommands.
struct RunConfig {
    std::string input_path;
    std::string output_path;
    std::vector<std::string> dim_flags; // raw --dim values, in order
    std::string all_periodic;           // raw --all-periodic "LO:HI", empty if unset
    double epsilon = 0.0;
    int min_points = 5;
    std::string preset;
    std::string blob_file;
    std::uint64_t seed = 1;
    std::vector<std::size_t> sizes;
    int repetitions = 3;
};

// "open" or "periodic:LO:HI".
BoundarySpec parse_boundary_flag(const std::string& text);

// Builds the domain from --dim / --all-periodic against the data
// dimensionality; throws std::invalid_argument on any mismatch.
DomainSpec build_domain(const RunConfig& cfg, std::size_t data_dim);

// Single machine-parsable summary line:
//   pbcdbscan v1 <command> key=value [key=value ...]
class SummaryLine {
public:
    explicit SummaryLine(std::string_view command);

    SummaryLine& field(std::string_view key, std::size_t value);
    SummaryLine& field(std::string_view key, int value);
    SummaryLine& field(std::string_view key, double value);
    SummaryLine& field(std::string_view key, std::string_view value);
    SummaryLine& field(std::string_view key, bool value);

    const std::string& str() const { return line_; }

private:
    std::string line_;
};

} // namespace pbcdbscan
