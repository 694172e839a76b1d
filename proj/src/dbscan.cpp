#include "pbcdbscan/dbscan.hpp"

#include <algorithm>
#include <stdexcept>

#include "pbcdbscan/neighbor_index.hpp"

namespace pbcdbscan {

namespace {

constexpr int kUnvisited = -2;
// Pair lists above this many entries (~256 MB) are not stored; clustering
// then falls back to recomputing neighborhoods on the fly.
constexpr std::size_t kMaxStoredPairs = std::size_t{32} * 1024 * 1024;

// The scans below gather from arrays far larger than cache; telling the
// prefetcher where the next few dependent loads land keeps them overlapped.
inline void prefetch(const void* p) {
#if defined(__GNUC__) || defined(__clang__)
    __builtin_prefetch(p);
#else
    (void)p;
#endif
}

inline int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// Main path: one streamed pass over the half-pair list per step. Borders
// join the lowest-numbered cluster that has a core neighbor, which is
// exactly the cluster that would reach them first under seed-order
// expansion, since ids are issued in seed-scan order.
std::vector<int> cluster_from_pairs(const NeighborPairs& nb, std::span<const int> slot_of,
                                    int min_points) {
    const std::size_t n = slot_of.size();
    std::vector<char> core(n);
    for (std::size_t s = 0; s < n; ++s) core[s] = nb.degree[s] >= min_points;

    // connected components of the core-core adjacency
    std::vector<int> parent(n);
    for (std::size_t s = 0; s < n; ++s) parent[s] = static_cast<int>(s);
    for (const auto& [s, o] : nb.pairs) {
        if (core[s] && core[o]) {
            const int rs = uf_find(parent, s);
            const int ro = uf_find(parent, o);
            if (rs != ro) parent[std::max(rs, ro)] = std::min(rs, ro);
        }
    }

    // cluster ids in order of each component's first core point, seed order
    std::vector<int> labels(n, kNoise);
    int next_cluster = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 16 < n) prefetch(&core[slot_of[i + 16]]);
        const int s = slot_of[i];
        if (!core[s]) continue;
        const int root = uf_find(parent, s);
        if (labels[root] == kNoise) labels[root] = next_cluster++;
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (core[s]) labels[s] = labels[uf_find(parent, static_cast<int>(s))];
    }

    // border points: lowest cluster id among core neighbors
    for (const auto& [s, o] : nb.pairs) {
        if (core[s] == core[o]) continue;
        const int border = core[s] ? o : s;
        const int cid = labels[core[s] ? s : o];
        if (labels[border] == kNoise || cid < labels[border]) labels[border] = cid;
    }
    return labels;
}

// Fallback for pair lists past the memory budget: classic seed scan with an
// explicit queue, recomputing each core point's neighborhood on demand.
std::vector<int> cluster_with_queries(const NeighborIndex& index, const NeighborPairs& nb,
                                      const PointSet& points, std::span<const int> order,
                                      std::span<const int> slot_of, int min_points) {
    const std::size_t n = slot_of.size();
    std::vector<int> labels(n, kUnvisited);
    std::vector<int> nbrs;
    std::vector<int> queue;
    int next_cluster = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const int seed = slot_of[i];
        if (labels[seed] != kUnvisited) continue;
        if (nb.degree[seed] < min_points) {
            labels[seed] = kNoise;
            continue;
        }

        const int cid = next_cluster++;
        labels[seed] = cid;
        queue.clear();
        queue.push_back(seed);

        for (std::size_t head = 0; head < queue.size(); ++head) {
            index.query_radius(points.point(order[queue[head]]), nbrs);
            for (int point_idx : nbrs) {
                const int q = slot_of[point_idx];
                if (labels[q] == kUnvisited) {
                    labels[q] = cid;
                    // border points expand no further
                    if (nb.degree[q] >= min_points) queue.push_back(q);
                } else if (labels[q] == kNoise) {
                    labels[q] = cid; // border point
                }
            }
        }
    }
    return labels;
}

} // namespace

void DbscanParams::validate() const {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be > 0");
    }
    if (min_points < 1) {
        throw std::invalid_argument("min_points must be >= 1");
    }
}

std::vector<int> dbscan(const PointSet& points, const DbscanParams& params) {
    params.validate();
    const std::size_t n = points.size();
    if (n == 0) return {};

    // The whole run works in the index's locality order so neighbor pairs,
    // component merges and label passes all touch nearby memory; labels are
    // mapped back to input order at the end.
    const NeighborIndex index(points, params.epsilon);
    const NeighborPairs nb = index.build_neighbor_pairs(kMaxStoredPairs);
    const std::span<const int> order = index.locality_order(); // slot -> point
    std::vector<int> slot_of(n);
    for (std::size_t s = 0; s < n; ++s) slot_of[order[s]] = static_cast<int>(s);

    const std::vector<int> labels =
        nb.has_pairs ? cluster_from_pairs(nb, slot_of, params.min_points)
                     : cluster_with_queries(index, nb, points, order, slot_of,
                                            params.min_points);

    // labels are slot-indexed
    std::vector<int> out(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (s + 16 < n) prefetch(&out[order[s + 16]]);
        out[order[s]] = labels[s];
    }
    return out;
}

int cluster_count(std::span<const int> labels) {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return max_label + 1;
}

} // namespace pbcdbscan
