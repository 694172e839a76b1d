#pragma once

#include <span>
#include <vector>

#include "pbcdbscan/dbscan.hpp"
#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

// Periodic copies of boundary-adjacent points. Each copy lives in the
// extended domain [lower - eps, upper + eps], outside the original domain,
// and remembers which original point it came from.
struct PaddedSet {
    PointSet points;
    std::vector<int> origin_index;

    std::size_t size() const { return origin_index.size(); }
};

// Disjoint-set over cluster ids, recording which ids name the same cluster
// across the periodic seam. Linking attaches the larger root under the
// smaller, so find() returns the minimum id of the equivalence class. The
// noise sentinel -1 is never a member. find() uses path compression, so a
// LinkTable is confined to one thread at a time.
class LinkTable {
public:
    LinkTable() = default;
    explicit LinkTable(int n_ids);

    int size() const { return static_cast<int>(parent_.size()); }
    int find(int id) const;
    void link(int a, int b);

private:
    mutable std::vector<int> parent_;
};

// Step 1: copy every point lying within eps of a periodic face to the strip
// just outside the opposite face. A point near k faces yields 2^k - 1 copies
// (edges and corners included). Copies are emitted by origin index, then in
// lexicographic order of the per-dimension shift vector. Input must already
// be wrapped; requires 2*eps < period in every periodic dimension.
PaddedSet extend_periodic(const PointSet& points, const DomainSpec& domain, double epsilon);

// Step 3: for every padded point whose cluster label differs from its
// origin's, record the two ids as equivalent. Pairs involving noise create
// no link. labels_all must hold the original labels first, padded after.
LinkTable link_labels(std::span<const int> labels_all, const PaddedSet& padded,
                      std::size_t n_original);

// Step 4: map each original point's label to the minimum id of its linked
// class, then compact to consecutive ids 0..k-1 preserving representative
// order. An original labeled noise whose padded copy was clustered adopts
// the copy's resolved label (smallest across copies): originals always have
// complete neighborhoods in the extended set, so the copy's evidence stands.
std::vector<int> resolve_labels(std::span<const int> labels_all, const LinkTable& links,
                                const PaddedSet& padded, std::size_t n_original);

struct PeriodicRun {
    std::vector<int> labels; // one per input point, input order
    std::size_t padded_count = 0;
    int cluster_count = 0;
};

// The full pipeline: wrap -> extend -> open-boundary DBSCAN on the union ->
// link labels across the seam -> resolve. Unwrapped input is accepted.
// With an all-open domain this reduces exactly to dbscan().
PeriodicRun dbscan_periodic_run(const PointSet& points, const DomainSpec& domain,
                                const DbscanParams& params);
std::vector<int> dbscan_periodic(const PointSet& points, const DomainSpec& domain,
                                 const DbscanParams& params);

} // namespace pbcdbscan
