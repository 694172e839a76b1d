#include "pbcdbscan/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pbcdbscan {

namespace {

constexpr int kUnvisited = -2;

std::vector<int> torus_neighbors(const PointSet& points, const DomainSpec& domain,
                                 std::size_t i, double eps_sq) {
    std::vector<int> nbrs;
    const auto center = points.point(i);
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (min_image_distance_sq(center, points.point(j), domain) <= eps_sq) {
            nbrs.push_back(static_cast<int>(j));
        }
    }
    return nbrs;
}

} // namespace

std::vector<int> dbscan_bruteforce(const PointSet& points, const DomainSpec& domain,
                                   const DbscanParams& params) {
    params.validate();
    if (points.dim() != domain.dim() && points.size() > 0) {
        throw std::invalid_argument("point dimension does not match domain dimension");
    }
    domain.require_epsilon_valid(params.epsilon);

    const std::size_t n = points.size();
    std::vector<int> labels(n, kUnvisited);
    if (n == 0) return labels;

    const PointSet wrapped = wrap_points(points, domain);
    const double eps_sq = params.epsilon * params.epsilon;
    const std::size_t min_points = static_cast<std::size_t>(params.min_points);

    std::vector<int> queue;
    int next_cluster = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != kUnvisited) continue;
        std::vector<int> nbrs = torus_neighbors(wrapped, domain, i, eps_sq);
        if (nbrs.size() < min_points) {
            labels[i] = kNoise;
            continue;
        }

        const int cid = next_cluster++;
        labels[i] = cid;
        queue.clear();
        for (int q : nbrs) {
            if (labels[q] == kUnvisited) {
                labels[q] = cid;
                queue.push_back(q);
            } else if (labels[q] == kNoise) {
                labels[q] = cid;
            }
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            nbrs = torus_neighbors(wrapped, domain, queue[head], eps_sq);
            if (nbrs.size() < min_points) continue;
            for (int q : nbrs) {
                if (labels[q] == kUnvisited) {
                    labels[q] = cid;
                    queue.push_back(q);
                } else if (labels[q] == kNoise) {
                    labels[q] = cid;
                }
            }
        }
    }
    return labels;
}

ClusterComparison compare_clusterings(std::span<const int> a, std::span<const int> b,
                                      const PointSet& points, const DomainSpec& domain,
                                      const DbscanParams& params) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("label vectors have different lengths");
    }
    if (a.size() != points.size()) {
        throw std::invalid_argument("label vector length does not match point count");
    }
    params.validate();
    domain.require_epsilon_valid(params.epsilon);

    const std::size_t n = points.size();
    const PointSet wrapped = wrap_points(points, domain);
    const double eps_sq = params.epsilon * params.epsilon;

    std::vector<char> core(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (min_image_distance_sq(wrapped.point(i), wrapped.point(j), domain) <= eps_sq) {
                ++count;
            }
        }
        core[i] = count >= static_cast<std::size_t>(params.min_points);
    }

    ClusterComparison cmp;

    cmp.noise_match = true;
    for (std::size_t i = 0; i < n; ++i) {
        if ((a[i] == kNoise) != (b[i] == kNoise)) {
            cmp.noise_match = false;
            break;
        }
    }

    // Bijection over core-point labels. A core point must carry a cluster
    // label on both sides for the partitions to be comparable at all.
    cmp.core_partition_match = true;
    std::unordered_map<int, int> fwd, bwd;
    for (std::size_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        if (a[i] < 0 || b[i] < 0) {
            cmp.core_partition_match = false;
            break;
        }
        auto [fit, fnew] = fwd.try_emplace(a[i], b[i]);
        auto [bit, bnew] = bwd.try_emplace(b[i], a[i]);
        if (fit->second != b[i] || bit->second != a[i]) {
            cmp.core_partition_match = false;
            break;
        }
    }

    // Border validity, each side against its own labeling.
    auto check_borders = [&](std::span<const int> labels) {
        std::unordered_map<int, std::vector<int>> core_by_label;
        for (std::size_t i = 0; i < n; ++i) {
            if (core[i] && labels[i] >= 0) core_by_label[labels[i]].push_back(static_cast<int>(i));
        }
        std::vector<int> bad;
        for (std::size_t i = 0; i < n; ++i) {
            if (core[i] || labels[i] < 0) continue;
            bool reachable = false;
            auto it = core_by_label.find(labels[i]);
            if (it != core_by_label.end()) {
                for (int j : it->second) {
                    if (min_image_distance_sq(wrapped.point(i), wrapped.point(j), domain) <=
                        eps_sq) {
                        reachable = true;
                        break;
                    }
                }
            }
            if (!reachable) bad.push_back(static_cast<int>(i));
        }
        return bad;
    };
    cmp.border_violations = check_borders(a);
    const std::vector<int> bad_b = check_borders(b);
    cmp.border_violations.insert(cmp.border_violations.end(), bad_b.begin(), bad_b.end());
    std::sort(cmp.border_violations.begin(), cmp.border_violations.end());
    cmp.border_violations.erase(
        std::unique(cmp.border_violations.begin(), cmp.border_violations.end()),
        cmp.border_violations.end());

    auto summarize = [&](std::span<const int> labels) {
        ClusteringSummary s;
        std::unordered_set<int> ids;
        for (int l : labels) {
            if (l >= 0) ids.insert(l);
        }
        s.clusters = static_cast<int>(ids.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] == kNoise) {
                ++s.noise;
            } else if (core[i]) {
                ++s.core;
            } else {
                ++s.border;
            }
        }
        return s;
    };
    cmp.summary_a = summarize(a);
    cmp.summary_b = summarize(b);
    return cmp;
}

} // namespace pbcdbscan
