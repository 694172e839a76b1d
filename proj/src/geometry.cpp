#include "pbcdbscan/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pbcdbscan {

BoundarySpec BoundarySpec::periodic(double lower, double upper) {
    if (!(lower < upper)) {
        throw std::invalid_argument("periodic boundary requires lower < upper, got [" +
                                    std::to_string(lower) + ", " + std::to_string(upper) + ")");
    }
    return {BoundaryKind::Periodic, lower, upper};
}

bool DomainSpec::any_periodic() const {
    for (const auto& b : dims) {
        if (b.is_periodic()) return true;
    }
    return false;
}

DomainSpec DomainSpec::all_open(std::size_t d) {
    return {std::vector<BoundarySpec>(d, BoundarySpec::open())};
}

DomainSpec DomainSpec::all_periodic(std::size_t d, double lower, double upper) {
    return {std::vector<BoundarySpec>(d, BoundarySpec::periodic(lower, upper))};
}

void DomainSpec::require_epsilon_valid(double epsilon) const {
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (dims[d].is_periodic() && !(2.0 * epsilon < dims[d].period())) {
            throw std::invalid_argument(
                "epsilon " + std::to_string(epsilon) + " too large for periodic dimension " +
                std::to_string(d) + " with period " + std::to_string(dims[d].period()) +
                " (need 2*epsilon < period)");
        }
    }
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0 && !coords_.empty()) {
        throw std::invalid_argument("zero-dimensional PointSet cannot hold coordinates");
    }
    if (dim_ != 0 && coords_.size() % dim_ != 0) {
        throw std::invalid_argument("coordinate count " + std::to_string(coords_.size()) +
                                    " is not a multiple of dimension " + std::to_string(dim_));
    }
}

void PointSet::add(std::span<const double> p) {
    if (p.size() != dim_) {
        throw std::invalid_argument("point has " + std::to_string(p.size()) +
                                    " coordinates, expected " + std::to_string(dim_));
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointSet::append(const PointSet& other) {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("cannot append " + std::to_string(other.dim_) +
                                    "-dimensional points to a " + std::to_string(dim_) +
                                    "-dimensional set");
    }
    coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

double wrap_coord(double x, const BoundarySpec& boundary) {
    if (!boundary.is_periodic()) return x;
    if (x >= boundary.lower && x < boundary.upper) return x;
    const double period = boundary.period();
    double y = x - period * std::floor((x - boundary.lower) / period);
    // Rounding can land exactly on the upper bound or one ulp below lower.
    if (y >= boundary.upper) y -= period;
    if (y < boundary.lower) y = boundary.lower;
    return y;
}

PointSet wrap_points(const PointSet& points, const DomainSpec& domain) {
    if (points.dim() != domain.dim()) {
        throw std::invalid_argument("point dimension " + std::to_string(points.dim()) +
                                    " does not match domain dimension " +
                                    std::to_string(domain.dim()));
    }
    PointSet wrapped = points;
    const std::size_t n = points.size();
    const std::size_t dim = domain.dim();
    if (n == 0 || !domain.any_periodic()) return wrapped;

    double* coords = &wrapped.coord(0, 0);
    for (std::size_t i = 0; i < n; ++i, coords += dim) {
        for (std::size_t d = 0; d < dim; ++d) {
            const BoundarySpec& b = domain.dims[d];
            if (b.is_periodic()) coords[d] = wrap_coord(coords[d], b);
        }
    }
    return wrapped;
}

double min_image_distance_sq(std::span<const double> a, std::span<const double> b,
                             const DomainSpec& domain) {
    if (a.size() != b.size() || a.size() != domain.dim()) {
        throw std::invalid_argument("coordinate/domain dimension mismatch in min_image_distance");
    }
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double delta = std::abs(a[d] - b[d]);
        const BoundarySpec& bd = domain.dims[d];
        if (bd.is_periodic()) {
            delta = std::min(delta, bd.period() - delta);
        }
        sum += delta * delta;
    }
    return sum;
}

double min_image_distance(std::span<const double> a, std::span<const double> b,
                          const DomainSpec& domain) {
    return std::sqrt(min_image_distance_sq(a, b, domain));
}

} // namespace pbcdbscan
