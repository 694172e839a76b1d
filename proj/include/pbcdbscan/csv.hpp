#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbcdbscan/datagen.hpp"
#include "pbcdbscan/geometry.hpp"

namespace pbcdbscan {

// Parse failure with 1-based row/column location.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& message, std::size_t row, std::size_t column);

    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_ = 0;
    std::size_t column_ = 0;
};

// Headerless CSV, one point per row, comma-separated decimal coordinates.
// Dimensionality is inferred from the first row and enforced on the rest;
// non-finite values are rejected. An empty file yields an empty set.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv(const std::string& path);

void write_points_csv(std::ostream& out, const PointSet& points);
void write_points_csv(const std::string& path, const PointSet& points);

// One integer label per line, input order, noise = -1.
void write_labels(std::ostream& out, std::span<const int> labels);
void write_labels(const std::string& path, std::span<const int> labels);

// Blob table: D center coordinates, D sigmas, then a count column; D is
// inferred from the (odd) column count.
std::vector<BlobSpec> read_blob_specs_csv(const std::string& path);

} // namespace pbcdbscan
