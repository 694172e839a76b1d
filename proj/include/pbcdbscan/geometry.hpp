#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pbcdbscan {

enum class BoundaryKind { Open, Periodic };

// Per-dimension boundary description. A periodic dimension carries the
// primary interval [lower, upper); an open dimension is unbounded and
// ignores lower/upper.
struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::Open;
    double lower = 0.0;
    double upper = 0.0;

    static BoundarySpec open() { return {}; }
    static BoundarySpec periodic(double lower, double upper);

    bool is_periodic() const { return kind == BoundaryKind::Periodic; }
    double period() const { return upper - lower; }

    bool operator==(const BoundarySpec&) const = default;
};

struct DomainSpec {
    std::vector<BoundarySpec> dims;

    std::size_t dim() const { return dims.size(); }
    bool any_periodic() const;

    static DomainSpec all_open(std::size_t d);
    static DomainSpec all_periodic(std::size_t d, double lower, double upper);

    // The single-copy periodic extension and the minimum-image metric both
    // need epsilon below half the period. Throws std::invalid_argument when
    // 2*epsilon >= period in some periodic dimension.
    void require_epsilon_valid(double epsilon) const;

    bool operator==(const DomainSpec&) const = default;
};

// N points in D dimensions, contiguous row-major storage.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> coords);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    double coord(std::size_t i, std::size_t d) const { return coords_[i * dim_ + d]; }
    double& coord(std::size_t i, std::size_t d) { return coords_[i * dim_ + d]; }

    void add(std::span<const double> p);
    void add(std::initializer_list<double> p) { add(std::span<const double>(p.begin(), p.size())); }
    void append(const PointSet& other);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    const std::vector<double>& coords() const { return coords_; }

    bool operator==(const PointSet&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

// Maps x into [lower, upper) for periodic boundaries; identity for open.
// floor-based so negative inputs wrap correctly.
double wrap_coord(double x, const BoundarySpec& boundary);

// Canonicalizes every periodic coordinate into [lower, upper); open
// coordinates and point order are untouched.
PointSet wrap_points(const PointSet& points, const DomainSpec& domain);

// Euclidean distance where each periodic per-dimension difference d is
// replaced by min(|d|, period - |d|). Both points must already be wrapped;
// the result is the torus metric only for radii up to half the period.
double min_image_distance(std::span<const double> a, std::span<const double> b,
                          const DomainSpec& domain);
double min_image_distance_sq(std::span<const double> a, std::span<const double> b,
                             const DomainSpec& domain);

} // namespace pbcdbscan
