#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

// Axis-aligned Gaussian blob; sigma is the per-dimension standard deviation.
struct BlobSpec {
    std::vector<double> center;
    std::vector<double> sigma;
    std::size_t count = 0;
};

// Draws each blob's points from an axis-aligned Gaussian and wraps periodic
// coordinates, so blobs centered near a face straddle it. Points are emitted
// blob-by-blob in draw order; identical inputs and seed give identical
// output. Blob centers must lie inside the domain (periodic dimensions).
PointSet generate_blobs(std::span<const BlobSpec> specs, const DomainSpec& domain,
                        std::uint64_t seed);

// n i.i.d. uniform points. Periodic dimensions use [lower, upper); open
// dimensions default to the unit interval [0, 1).
PointSet generate_uniform(std::size_t n, const DomainSpec& domain, std::uint64_t seed);

// Seeded demo setups: boundary-straddling blobs in 1, 2 and 3 dimensions,
// with the neighborhood radius and min_points each demo is meant to be
// clustered with. Preset names are part of the CLI contract.
struct Preset {
    std::string name;
    std::string description;
    DomainSpec domain;
    std::vector<BlobSpec> blobs;
    double epsilon = 0.0;
    int min_points = 5;
    std::uint64_t seed = 0;
    // Points of the boundary-straddling blob occupy [0, straddler_count).
    std::size_t straddler_count = 0;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);
std::string preset_names(); // comma-separated, for error messages

} // namespace pbcdbscan
