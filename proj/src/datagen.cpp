#include "pbcdbscan/datagen.hpp"

#include <random>
#include <stdexcept>

namespace pbcdbscan {

PointSet generate_blobs(std::span<const BlobSpec> specs, const DomainSpec& domain,
                        std::uint64_t seed) {
    const std::size_t dim = domain.dim();
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const BlobSpec& blob = specs[s];
        if (blob.center.size() != dim || blob.sigma.size() != dim) {
            throw std::invalid_argument("blob " + std::to_string(s) +
                                        " does not match the domain dimension");
        }
        for (std::size_t d = 0; d < dim; ++d) {
            if (!(blob.sigma[d] > 0.0)) {
                throw std::invalid_argument("blob " + std::to_string(s) +
                                            " needs positive sigma in every dimension");
            }
            const BoundarySpec& b = domain.dims[d];
            if (b.is_periodic() && (blob.center[d] < b.lower || blob.center[d] >= b.upper)) {
                throw std::invalid_argument("blob " + std::to_string(s) +
                                            " center lies outside the domain in dimension " +
                                            std::to_string(d));
            }
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    PointSet points(dim);
    std::vector<double> p(dim);
    for (const BlobSpec& blob : specs) {
        points.reserve(points.size() + blob.count);
        for (std::size_t k = 0; k < blob.count; ++k) {
            for (std::size_t d = 0; d < dim; ++d) {
                p[d] = blob.center[d] + blob.sigma[d] * unit_normal(rng);
            }
            points.add(p);
        }
    }
    return wrap_points(points, domain);
}

PointSet generate_uniform(std::size_t n, const DomainSpec& domain, std::uint64_t seed) {
    const std::size_t dim = domain.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointSet points(dim);
    points.reserve(n);
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t d = 0; d < dim; ++d) {
            const BoundarySpec& b = domain.dims[d];
            const double lo = b.is_periodic() ? b.lower : 0.0;
            const double hi = b.is_periodic() ? b.upper : 1.0;
            p[d] = lo + (hi - lo) * unit(rng);
        }
        points.add(p);
    }
    return wrap_points(points, domain);
}

namespace {

std::vector<Preset> make_presets() {
    std::vector<Preset> out;

    // 1D, one blob across the seam, one interior, light scatter.
    {
        Preset p;
        p.name = "fig2";
        p.description = "1D periodic demo, one cluster across the boundary (eps = 0.05 L)";
        p.domain = DomainSpec::all_periodic(1, 0.0, 1.0);
        p.blobs = {
            {{0.0}, {0.04}, 80},
            {{0.45}, {0.04}, 80},
            {{0.7}, {0.30}, 14},
        };
        p.epsilon = 0.05;
        p.seed = 20240101;
        p.straddler_count = 80;
        out.push_back(std::move(p));
    }

    // 2D doubly periodic, blob across a corner.
    {
        Preset p;
        p.name = "fig1";
        p.description = "2D doubly periodic demo, one cluster across a corner (eps = 0.06 L)";
        p.domain = DomainSpec::all_periodic(2, 0.0, 1.0);
        p.blobs = {
            {{0.0, 0.0}, {0.05, 0.05}, 200},
            {{0.45, 0.6}, {0.07, 0.07}, 180},
            {{0.8, 0.25}, {0.05, 0.05}, 140},
            {{0.5, 0.5}, {0.6, 0.6}, 50},
        };
        p.epsilon = 0.06;
        p.seed = 20240102;
        p.straddler_count = 200;
        out.push_back(std::move(p));
    }

    // 2D doubly periodic, blob across one edge.
    {
        Preset p;
        p.name = "fig3";
        p.description = "2D doubly periodic demo, one cluster across an edge (eps = 0.08 L)";
        p.domain = DomainSpec::all_periodic(2, 0.0, 1.0);
        p.blobs = {
            {{0.0, 0.35}, {0.05, 0.06}, 160},
            {{0.55, 0.75}, {0.06, 0.06}, 160},
            {{0.6, 0.12}, {0.05, 0.05}, 120},
            {{0.5, 0.5}, {0.6, 0.6}, 40},
        };
        p.epsilon = 0.08;
        p.seed = 20240103;
        p.straddler_count = 160;
        out.push_back(std::move(p));
    }

    // Same layout with the second dimension open.
    {
        Preset p;
        p.name = "fig3-mixed";
        p.description =
            "2D demo with dim 0 periodic and dim 1 open, cluster across the seam (eps = 0.08 L)";
        p.domain.dims = {BoundarySpec::periodic(0.0, 1.0), BoundarySpec::open()};
        p.blobs = {
            {{0.0, 0.35}, {0.05, 0.06}, 160},
            {{0.55, 0.75}, {0.06, 0.06}, 160},
            {{0.6, 0.12}, {0.05, 0.05}, 120},
            {{0.5, 0.5}, {0.6, 0.6}, 40},
        };
        p.epsilon = 0.08;
        p.seed = 20240103;
        p.straddler_count = 160;
        out.push_back(std::move(p));
    }

    // 3D triply periodic, blob across one face.
    {
        Preset p;
        p.name = "fig4";
        p.description = "3D triply periodic demo, one cluster across a face (eps = 0.08 L)";
        p.domain = DomainSpec::all_periodic(3, 0.0, 1.0);
        p.blobs = {
            {{0.5, 0.02, 0.45}, {0.06, 0.06, 0.06}, 250},
            {{0.3, 0.55, 0.7}, {0.06, 0.06, 0.06}, 220},
            {{0.75, 0.4, 0.2}, {0.05, 0.05, 0.05}, 180},
            {{0.5, 0.5, 0.5}, {0.6, 0.6, 0.6}, 60},
        };
        p.epsilon = 0.08;
        p.seed = 20240104;
        p.straddler_count = 250;
        out.push_back(std::move(p));
    }

    return out;
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = make_presets();
    return all;
}

const Preset* find_preset(std::string_view name) {
    for (const Preset& p : presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

std::string preset_names() {
    std::string names;
    for (const Preset& p : presets()) {
        if (!names.empty()) names += ", ";
        names += p.name;
    }
    return names;
}

} // namespace pbcdbscan
