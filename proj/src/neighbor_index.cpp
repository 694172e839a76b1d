#include "pbcdbscan/neighbor_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pbcdbscan {

namespace {
inline void prefetch(const void* p) {
#if defined(__GNUC__) || defined(__clang__)
    __builtin_prefetch(p);
#else
    (void)p;
#endif
}
} // namespace

NeighborIndex::NeighborIndex(const PointSet& points, double epsilon)
    : n_(points.size()), dim_(points.dim()), epsilon_(epsilon), eps_sq_(epsilon * epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("neighbor index requires epsilon > 0");
    }
    if (n_ > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
        throw std::invalid_argument("point count exceeds index capacity");
    }
    if (n_ == 0) return;

    box_min_.assign(dim_, 0.0);
    std::vector<double> box_max(dim_, 0.0);
    for (std::size_t d = 0; d < dim_; ++d) {
        box_min_[d] = box_max[d] = points.coord(0, d);
    }
    for (std::size_t i = 1; i < n_; ++i) {
        for (std::size_t d = 0; d < dim_; ++d) {
            const double x = points.coord(i, d);
            box_min_[d] = std::min(box_min_[d], x);
            box_max[d] = std::max(box_max[d], x);
        }
    }

    // As many cells of edge >= eps as fit, capped so the table stays O(N).
    const double cap = std::max(64.0, 2.0 * static_cast<double>(n_));
    cells_.assign(dim_, 1);
    for (std::size_t d = 0; d < dim_; ++d) {
        const double extent = box_max[d] - box_min_[d];
        const double ideal = extent > epsilon ? extent / epsilon : 1.0;
        cells_[d] = static_cast<std::size_t>(std::min(ideal, cap));
    }
    while (true) {
        double total = 1.0;
        std::size_t shrinkable = 0;
        for (std::size_t d = 0; d < dim_; ++d) {
            total *= static_cast<double>(cells_[d]);
            shrinkable += cells_[d] > 1;
        }
        if (total <= cap || shrinkable == 0) break;
        const double shrink = std::pow(total / cap, 1.0 / static_cast<double>(shrinkable));
        for (std::size_t d = 0; d < dim_; ++d) {
            if (cells_[d] > 1) {
                cells_[d] = std::max<std::size_t>(
                    1, static_cast<std::size_t>(static_cast<double>(cells_[d]) / shrink));
            }
        }
    }

    inv_cell_.assign(dim_, 0.0);
    stride_.assign(dim_, 1);
    std::size_t n_cells = 1;
    for (std::size_t d = 0; d < dim_; ++d) {
        const double extent = box_max[d] - box_min_[d];
        inv_cell_[d] = extent > 0.0 ? static_cast<double>(cells_[d]) / extent : 0.0;
        stride_[d] = n_cells;
        n_cells *= cells_[d];
    }

    // Stable counting sort of points into cells, cell-major ascending. The
    // permutation passes gather from well beyond cache at large n;
    // prefetching keeps them overlapped.
    const double* src = points.coords().data();
    std::vector<std::size_t> cell_ids(n_);
    starts_.assign(n_cells + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        cell_ids[i] = cell_of(points.point(i));
        ++starts_[cell_ids[i] + 1];
    }
    for (std::size_t c = 1; c <= n_cells; ++c) starts_[c] += starts_[c - 1];
    order_.resize(n_);
    std::vector<int> cursor(starts_.begin(), starts_.end() - 1);
    for (std::size_t i = 0; i < n_; ++i) {
        if (i + 16 < n_) prefetch(&cursor[cell_ids[i + 16]]);
        order_[cursor[cell_ids[i]]++] = static_cast<int>(i);
    }
    coords_.resize(n_ * dim_);
    for (std::size_t slot = 0; slot < n_; ++slot) {
        if (slot + 16 < n_) prefetch(src + order_[slot + 16] * dim_);
        const double* p = src + order_[slot] * dim_;
        std::copy(p, p + dim_, coords_.begin() + slot * dim_);
    }
}

std::size_t NeighborIndex::cell_of(std::span<const double> p) const {
    std::size_t id = 0;
    for (std::size_t d = 0; d < dim_; ++d) {
        const double f = (p[d] - box_min_[d]) * inv_cell_[d];
        std::size_t c = f <= 0.0 ? 0 : static_cast<std::size_t>(f);
        c = std::min(c, cells_[d] - 1); // the box_max edge belongs to the last cell
        id += c * stride_[d];
    }
    return id;
}

namespace {

// Cell-pair sweep over half the pairs: every cell is paired with itself
// and with its forward stencil, the neighbor cells of larger id. Each
// unordered in-radius pair surfaces exactly once with the smaller slot
// first, and the pass only ever looks ahead in memory, so the live window
// stays a thin slice of the grid. StaticDim > 0 unrolls the per-dimension
// loops.
template <std::size_t StaticDim, typename PairFn>
void sweep_cell_pairs(std::size_t n_cells, std::size_t dyn_dim, const double* coords,
                      const int* starts, const std::size_t* cells, const std::size_t* stride,
                      double eps_sq, PairFn&& pair) {
    const std::size_t dim = StaticDim > 0 ? StaticDim : dyn_dim;

    // Forward rows: per-dimension deltas over dims >= 1, lexicographically
    // positive; each row covers the contiguous three-cell run along dim 0.
    // The all-zero row is the cell's own, handled separately.
    struct Row {
        std::ptrdiff_t base = 0;  // flat id delta of the run's middle cell
        std::size_t delta_at = 0; // into row_deltas, dim entries
    };
    std::vector<Row> rows;
    std::vector<int> row_deltas;
    {
        std::vector<int> delta(dim, 0);
        while (true) {
            std::size_t d = 1;
            while (d < dim && delta[d] == 1) delta[d++] = -1;
            if (d >= dim) break;
            ++delta[d];
            // counting up from the all-zero state only ever yields deltas
            // whose most significant nonzero entry is positive
            Row row;
            row.delta_at = row_deltas.size();
            for (std::size_t k = 1; k < dim; ++k) {
                row.base += static_cast<std::ptrdiff_t>(delta[k]) *
                            static_cast<std::ptrdiff_t>(stride[k]);
            }
            row_deltas.insert(row_deltas.end(), delta.begin(), delta.end());
            rows.push_back(row);
        }
    }

    auto scan = [&](int i_begin, int i_end, int j_begin, int j_end) {
        for (int i = i_begin; i < i_end; ++i) {
            const double* a = coords + static_cast<std::size_t>(i) * dim;
            for (int j = j_begin > i ? j_begin : i + 1; j < j_end; ++j) {
                const double* b = coords + static_cast<std::size_t>(j) * dim;
                double dist_sq = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    const double delta = a[d] - b[d];
                    dist_sq += delta * delta;
                }
                if (dist_sq <= eps_sq) pair(i, j);
            }
        }
    };

    std::vector<std::size_t> coord(dim, 0);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        const int begin = starts[cell];
        const int end = starts[cell + 1];
        if (begin != end) {
            // own row: pairs inside the cell and with the next cell along dim 0
            const int right_end = coord[0] + 1 < cells[0] ? starts[cell + 2] : end;
            scan(begin, end, begin, right_end);

            for (const Row& row : rows) {
                const int* delta = row_deltas.data() + row.delta_at;
                bool valid = true;
                for (std::size_t d = 1; d < dim; ++d) {
                    // unsigned wrap rejects a step below zero
                    valid &= coord[d] + static_cast<std::size_t>(delta[d]) < cells[d];
                }
                if (!valid) continue;
                const std::size_t mid = cell + static_cast<std::size_t>(row.base);
                const std::size_t run_lo = coord[0] > 0 ? mid - 1 : mid;
                const std::size_t run_hi = coord[0] + 1 < cells[0] ? mid + 1 : mid;
                scan(begin, end, starts[run_lo], starts[run_hi + 1]);
            }
        }
        std::size_t d = 0;
        while (d < dim && ++coord[d] == cells[d]) coord[d++] = 0;
    }
}

} // namespace

NeighborPairs NeighborIndex::build_neighbor_pairs(std::size_t max_pairs) const {
    NeighborPairs out;
    out.degree.assign(n_, 1); // self
    out.has_pairs = true;
    if (n_ == 0) return out;

    out.pairs.reserve(std::min(max_pairs, 4 * n_));
    auto pair = [&](int slot, int other) {
        ++out.degree[slot];
        ++out.degree[other];
        if (out.has_pairs) {
            if (out.pairs.size() < max_pairs) {
                out.pairs.emplace_back(slot, other);
            } else {
                out.has_pairs = false;
                out.pairs = {};
            }
        }
    };
    auto run_sweep = [&]<std::size_t D>() {
        sweep_cell_pairs<D>(starts_.size() - 1, dim_, coords_.data(), starts_.data(),
                            cells_.data(), stride_.data(), eps_sq_, pair);
    };
    switch (dim_) {
        case 1: run_sweep.template operator()<1>(); break;
        case 2: run_sweep.template operator()<2>(); break;
        case 3: run_sweep.template operator()<3>(); break;
        default: run_sweep.template operator()<0>(); break;
    }
    return out;
}

std::vector<int> NeighborIndex::query_radius(std::span<const double> center) const {
    std::vector<int> out;
    query_radius(center, out);
    return out;
}

void NeighborIndex::query_radius(std::span<const double> center, std::vector<int>& out) const {
    if (center.size() != dim_ && n_ > 0) {
        throw std::invalid_argument("query point has " + std::to_string(center.size()) +
                                    " coordinates, index holds " + std::to_string(dim_) +
                                    "-dimensional points");
    }
    out.clear();
    if (n_ == 0) return;

    // Cell ranges touched by the ball [center - eps, center + eps].
    std::size_t buf[24];
    std::vector<std::size_t> spill;
    std::size_t* lo = buf;
    if (dim_ > 8) {
        spill.resize(3 * dim_);
        lo = spill.data();
    }
    std::size_t* hi = lo + dim_;
    std::size_t* at = hi + dim_;
    for (std::size_t d = 0; d < dim_; ++d) {
        const double flo = (center[d] - epsilon_ - box_min_[d]) * inv_cell_[d];
        const double fhi = (center[d] + epsilon_ - box_min_[d]) * inv_cell_[d];
        if (fhi < 0.0 || flo >= static_cast<double>(cells_[d])) return; // ball misses the box
        lo[d] = flo <= 0.0 ? 0 : std::min(static_cast<std::size_t>(flo), cells_[d] - 1);
        hi[d] = fhi <= 0.0 ? 0 : std::min(static_cast<std::size_t>(fhi), cells_[d] - 1);
        at[d] = lo[d];
    }

    // Dimension 0 has stride 1, so each run of adjacent cells along it maps
    // to one contiguous slot range; scan those in a single sweep.
    while (true) {
        std::size_t base = 0;
        for (std::size_t d = 1; d < dim_; ++d) base += at[d] * stride_[d];
        const int begin = starts_[base + lo[0]];
        const int end = starts_[base + hi[0] + 1];
        for (int slot = begin; slot < end; ++slot) {
            const double* p = coords_.data() + static_cast<std::size_t>(slot) * dim_;
            double dist_sq = 0.0;
            for (std::size_t d = 0; d < dim_; ++d) {
                const double delta = center[d] - p[d];
                dist_sq += delta * delta;
            }
            if (dist_sq <= eps_sq_) out.push_back(order_[slot]);
        }
        std::size_t d = 1;
        while (d < dim_ && at[d] == hi[d]) {
            at[d] = lo[d];
            ++d;
        }
        if (d >= dim_) break;
        ++at[d];
    }
}

} // namespace pbcdbscan
