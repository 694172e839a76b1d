#pragma once

#include <span>
#include <vector>

#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

// Neighborhood structure under one radius, in the grid's locality order:
// entries are locality positions ("slots"), not input indices. Every
// unordered pair of distinct points within the radius appears exactly once
// in pairs; degrees count the point itself. Consumers that stream over the
// pairs stay cache-local because nearby slots hold nearby points; map
// results back through locality_order() at the end. The pair list may be
// dropped when it would not fit the caller's budget; degrees survive.
struct NeighborPairs {
    std::vector<int> degree;               // per slot, includes the point itself
    std::vector<std::pair<int, int>> pairs; // slot pairs, first < second
    bool has_pairs = false;                // false if the budget was exceeded
};

// Exact fixed-radius neighbor search over an open coordinate space, backed
// by a uniform cell grid with cell edge >= epsilon, so a query never has to
// look past the adjacent cells. The radius is fixed at build time: DBSCAN
// only ever queries a single epsilon, and the grid needs it to size cells.
//
// The cell count is capped at a small multiple of N; sparse data relative
// to epsilon just gets coarser cells, never a blown-up table. Build is
// O(N), queries are exact and inclusive: every point at Euclidean distance
// <= eps from the center is returned, the query point itself included when
// present. A built index is immutable; concurrent queries are safe.
class NeighborIndex {
public:
    NeighborIndex(const PointSet& points, double epsilon);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }
    double epsilon() const { return epsilon_; }

    std::vector<int> query_radius(std::span<const double> center) const;
    void query_radius(std::span<const double> center, std::vector<int>& out) const;

    // Enumerates every in-radius pair in one cache-friendly sweep over the
    // grid, keeping the pair list unless it would exceed max_pairs. Far
    // cheaper than n query_radius calls.
    NeighborPairs build_neighbor_pairs(std::size_t max_pairs) const;

    // Permutation of the point indices that visits them cell by cell.
    // Batched queries issued in this order keep the touched cells in cache.
    std::span<const int> locality_order() const { return order_; }

private:
    std::size_t cell_of(std::span<const double> p) const;

    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    double epsilon_ = 0.0;
    double eps_sq_ = 0.0;
    std::vector<double> box_min_;
    std::vector<double> inv_cell_;   // 1 / cell edge per dimension
    std::vector<std::size_t> cells_; // cell count per dimension
    std::vector<std::size_t> stride_;
    std::vector<int> starts_;        // cell id -> first slot, size #cells + 1
    std::vector<double> coords_;     // points reordered cell by cell
    std::vector<int> order_;         // slot -> original index
};

} // namespace pbcdbscan
