#pragma once

#include <span>
#include <vector>

#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

inline constexpr int kNoise = -1;

struct DbscanParams {
    double epsilon = 0.0;
    // Neighborhood size threshold, counting the point itself (the
    // Scikit-learn convention, not the exclusive 1996 reading).
    int min_points = 1;

    void validate() const;
};

// Classic open-boundary DBSCAN. A point is core iff its inclusive
// epsilon-neighborhood (itself included) has at least min_points members;
// clusters are connected components of core points under epsilon-adjacency
// plus the non-core points within epsilon of them; everything else is noise.
// Cluster ids are assigned 0-based in order of first-discovered core point,
// scanning seeds in input order.
std::vector<int> dbscan(const PointSet& points, const DbscanParams& params);

// Number of distinct clusters in a label vector (max label + 1).
int cluster_count(std::span<const int> labels);

} // namespace pbcdbscan
