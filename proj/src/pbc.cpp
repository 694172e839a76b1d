#include "pbcdbscan/pbc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace pbcdbscan {

LinkTable::LinkTable(int n_ids) : parent_(n_ids) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int LinkTable::find(int id) const {
    if (id < 0 || id >= static_cast<int>(parent_.size())) return id; // unknown ids are singletons
    int root = id;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[id] != root) {
        id = std::exchange(parent_[id], root);
    }
    return root;
}

void LinkTable::link(int a, int b) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) return;
    parent_[std::max(ra, rb)] = std::min(ra, rb);
}

PaddedSet extend_periodic(const PointSet& points, const DomainSpec& domain, double epsilon) {
    if (points.dim() != domain.dim()) {
        throw std::invalid_argument("point dimension does not match domain dimension");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be > 0");
    }
    domain.require_epsilon_valid(epsilon);

    const std::size_t n = points.size();
    const std::size_t dim = domain.dim();

    // Hoisted per-dimension face thresholds; points clear of every face are
    // dismissed with two compares per periodic dimension.
    struct Face {
        std::size_t d;
        double near_lower; // lower + eps
        double near_upper; // upper - eps
        double lower, upper, period;
    };
    std::vector<Face> faces;
    for (std::size_t d = 0; d < dim; ++d) {
        const BoundarySpec& b = domain.dims[d];
        if (b.is_periodic()) {
            faces.push_back({d, b.lower + epsilon, b.upper - epsilon, b.lower, b.upper,
                             b.period()});
        }
    }

    PaddedSet padded;
    padded.points = PointSet(dim);
    if (n == 0 || faces.empty()) return padded;

    const double* coords = points.coords().data();
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = coords + i * dim;
        for (const Face& f : faces) {
            if (p[f.d] < f.lower || p[f.d] >= f.upper) {
                throw std::invalid_argument("point " + std::to_string(i) +
                                            " is not wrapped into the domain (dimension " +
                                            std::to_string(f.d) + "); call wrap_points first");
            }
        }
    }

    // Per-dimension shift candidates in ascending order. With 2*eps < period
    // at most one nonzero shift applies per dimension: +period near the lower
    // face (boundary-exact points included), -period near the upper face.
    std::vector<std::array<double, 2>> shifts(dim);
    std::vector<int> n_shifts(dim);
    std::vector<int> pick(dim);
    std::vector<double> copy(dim);

    for (std::size_t i = 0; i < n; ++i) {
        const double* p = coords + i * dim;
        bool near_face = false;
        for (const Face& f : faces) {
            near_face |= p[f.d] <= f.near_lower || p[f.d] >= f.near_upper;
        }
        if (!near_face) continue;

        for (std::size_t d = 0; d < dim; ++d) {
            const BoundarySpec& b = domain.dims[d];
            const double x = p[d];
            int cnt = 0;
            if (b.is_periodic() && x >= b.upper - epsilon) shifts[d][cnt++] = -b.period();
            shifts[d][cnt++] = 0.0;
            if (b.is_periodic() && x <= b.lower + epsilon) shifts[d][cnt++] = b.period();
            n_shifts[d] = cnt;
        }

        // Odometer over the shift combinations, most significant dimension
        // first, skipping the all-zero combination.
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            bool all_zero = true;
            for (std::size_t d = 0; d < dim; ++d) {
                const double s = shifts[d][pick[d]];
                double c = points.coord(i, d) + s;
                // Rounding may pull a copy of a face-exact point back inside
                // the domain by an ulp; keep copies strictly outside.
                if (s > 0.0 && c < domain.dims[d].upper) {
                    c = domain.dims[d].upper;
                } else if (s < 0.0 && c >= domain.dims[d].lower) {
                    c = std::nextafter(domain.dims[d].lower,
                                       -std::numeric_limits<double>::infinity());
                }
                copy[d] = c;
                all_zero &= s == 0.0;
            }
            if (!all_zero) {
                padded.points.add(copy);
                padded.origin_index.push_back(static_cast<int>(i));
            }
            std::size_t d = dim;
            while (d > 0 && pick[d - 1] + 1 == n_shifts[d - 1]) pick[--d] = 0;
            if (d == 0) break;
            ++pick[d - 1];
        }
    }
    return padded;
}

LinkTable link_labels(std::span<const int> labels_all, const PaddedSet& padded,
                      std::size_t n_original) {
    if (labels_all.size() != n_original + padded.size()) {
        throw std::invalid_argument("label vector length " + std::to_string(labels_all.size()) +
                                    " does not equal original count " +
                                    std::to_string(n_original) + " + padded count " +
                                    std::to_string(padded.size()));
    }
    int max_label = -1;
    for (int l : labels_all) max_label = std::max(max_label, l);
    LinkTable links(max_label + 1);

    for (std::size_t j = 0; j < padded.size(); ++j) {
        const int l_pad = labels_all[n_original + j];
        const int l_orig = labels_all[padded.origin_index[j]];
        if (l_pad >= 0 && l_orig >= 0 && l_pad != l_orig) {
            links.link(l_pad, l_orig);
        }
    }
    return links;
}

std::vector<int> resolve_labels(std::span<const int> labels_all, const LinkTable& links,
                                const PaddedSet& padded, std::size_t n_original) {
    if (labels_all.size() != n_original + padded.size()) {
        throw std::invalid_argument("label vector length does not match original + padded counts");
    }

    std::vector<int> resolved(n_original, kNoise);
    for (std::size_t i = 0; i < n_original; ++i) {
        if (labels_all[i] >= 0) resolved[i] = links.find(labels_all[i]);
    }

    // Noise adoption: a noise original whose copy landed in a cluster joins
    // that cluster; ties across copies go to the smallest resolved id.
    for (std::size_t j = 0; j < padded.size(); ++j) {
        const int orig = padded.origin_index[j];
        const int l_pad = labels_all[n_original + j];
        if (l_pad < 0 || labels_all[orig] >= 0) continue;
        const int rep = links.find(l_pad);
        if (resolved[orig] < 0 || rep < resolved[orig]) resolved[orig] = rep;
    }

    // Compact to consecutive ids, preserving representative order.
    int max_rep = -1;
    for (int r : resolved) max_rep = std::max(max_rep, r);
    std::vector<int> dense(max_rep + 1, 0);
    for (int r : resolved) {
        if (r >= 0) dense[r] = 1;
    }
    int next = 0;
    for (int& slot : dense) {
        if (slot) slot = next++;
    }
    for (int& r : resolved) {
        if (r >= 0) r = dense[r];
    }
    return resolved;
}

PeriodicRun dbscan_periodic_run(const PointSet& points, const DomainSpec& domain,
                                const DbscanParams& params) {
    params.validate();
    if (points.dim() != domain.dim() && points.size() > 0) {
        throw std::invalid_argument("point dimension " + std::to_string(points.dim()) +
                                    " does not match domain dimension " +
                                    std::to_string(domain.dim()));
    }
    domain.require_epsilon_valid(params.epsilon);

    const std::size_t n = points.size();
    PeriodicRun run;
    if (n == 0) return run;

    PointSet all = wrap_points(points, domain);
    const PaddedSet padded = extend_periodic(all, domain, params.epsilon);
    all.append(padded.points);

    const std::vector<int> labels_all = dbscan(all, params);
    const LinkTable links = link_labels(labels_all, padded, n);
    run.labels = resolve_labels(labels_all, links, padded, n);
    run.padded_count = padded.size();
    run.cluster_count = cluster_count(run.labels);
    return run;
}

std::vector<int> dbscan_periodic(const PointSet& points, const DomainSpec& domain,
                                 const DbscanParams& params) {
    return dbscan_periodic_run(points, domain, params).labels;
}

} // namespace pbcdbscan
