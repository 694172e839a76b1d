#pragma once

#include <span>
#include <vector>

#include "pbcdbscan/dbscan.hpp"
#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

struct ClusteringSummary {
    int clusters = 0;
    int core = 0;
    int border = 0;
    int noise = 0;
};

// Structural comparison of two labelings of the same point set. Exact label
// equality would be the wrong test: DBSCAN border assignment is
// order-dependent, so equivalence is defined as (i) identical noise sets,
// (ii) identical partitions of the core points up to label permutation, and
// (iii) every border point within epsilon (torus metric) of a core point of
// its assigned cluster.
struct ClusterComparison {
    bool core_partition_match = false;
    bool noise_match = false;
    std::vector<int> border_violations; // offending point indices, both sides
    ClusteringSummary summary_a;
    ClusteringSummary summary_b;

    bool equivalent() const {
        return core_partition_match && noise_match && border_violations.empty();
    }
};

// Reference DBSCAN with neighborhoods found by exhaustive pairwise
// minimum-image distances. Semantics match dbscan() exactly (same seed-scan
// order, same border rule); with an all-open domain the output is identical.
// Deliberately O(N^2); meant for verification at small N.
std::vector<int> dbscan_bruteforce(const PointSet& points, const DomainSpec& domain,
                                   const DbscanParams& params);

// Core status is recomputed from scratch under the torus metric rather than
// trusted from either labeling, so this works against third-party outputs.
ClusterComparison compare_clusterings(std::span<const int> a, std::span<const int> b,
                                      const PointSet& points, const DomainSpec& domain,
                                      const DbscanParams& params);

} // namespace pbcdbscan
