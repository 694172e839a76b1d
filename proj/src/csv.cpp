#include "pbcdbscan/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pbcdbscan {

namespace {

std::string location(std::size_t row, std::size_t column) {
    return "row " + std::to_string(row) + ", column " + std::to_string(column);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_field(std::string_view field, std::size_t row, std::size_t column) {
    const std::string_view token = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        throw CsvError("expected a number, got \"" + std::string(field) + "\"", row, column);
    }
    if (!std::isfinite(value)) {
        throw CsvError("non-finite value \"" + std::string(field) + "\"", row, column);
    }
    return value;
}

// Splits a line on commas and parses every field; returns the field count.
std::size_t parse_row(const std::string& line, std::size_t row, std::vector<double>& out) {
    out.clear();
    std::size_t begin = 0;
    std::size_t column = 1;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        const std::size_t end = comma == std::string::npos ? line.size() : comma;
        out.push_back(parse_field({line.data() + begin, end - begin}, row, column));
        if (comma == std::string::npos) break;
        begin = comma + 1;
        ++column;
    }
    return out.size();
}

template <typename RowFn>
void for_each_csv_row(std::istream& in, RowFn&& fn) {
    std::string line;
    std::size_t row = 0;
    std::vector<double> fields;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue; // blank lines (incl. trailing newline)
        parse_row(line, row, fields);
        fn(row, fields);
    }
}

} // namespace

CsvError::CsvError(const std::string& message, std::size_t row, std::size_t column)
    : std::runtime_error("CSV error at " + location(row, column) + ": " + message),
      row_(row),
      column_(column) {}

PointSet read_points_csv(std::istream& in) {
    PointSet points;
    for_each_csv_row(in, [&](std::size_t row, const std::vector<double>& fields) {
        if (points.dim() == 0 && points.empty()) {
            points = PointSet(fields.size());
        } else if (fields.size() != points.dim()) {
            throw CsvError("row has " + std::to_string(fields.size()) +
                               " columns, expected " + std::to_string(points.dim()),
                           row, fields.size());
        }
        points.add(std::span<const double>(fields));
    });
    return points;
}

PointSet read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
    char buf[32];
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t d = 0; d < points.dim(); ++d) {
            // %.17g round-trips doubles exactly
            std::snprintf(buf, sizeof(buf), "%.17g", points.coord(i, d));
            if (d > 0) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

void write_points_csv(const std::string& path, const PointSet& points) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    write_points_csv(out, points);
}

void write_labels(std::ostream& out, std::span<const int> labels) {
    for (int l : labels) out << l << '\n';
}

void write_labels(const std::string& path, std::span<const int> labels) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    write_labels(out, labels);
}

std::vector<BlobSpec> read_blob_specs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open blob file: " + path);
    }
    std::vector<BlobSpec> blobs;
    std::size_t dim = 0;
    for_each_csv_row(in, [&](std::size_t row, const std::vector<double>& fields) {
        if (blobs.empty()) {
            if (fields.size() < 3 || fields.size() % 2 == 0) {
                throw CsvError("blob rows need 2*D + 1 columns (centers, sigmas, count)", row,
                               fields.size());
            }
            dim = (fields.size() - 1) / 2;
        } else if (fields.size() != 2 * dim + 1) {
            throw CsvError("row has " + std::to_string(fields.size()) + " columns, expected " +
                               std::to_string(2 * dim + 1),
                           row, fields.size());
        }
        BlobSpec blob;
        blob.center.assign(fields.begin(), fields.begin() + dim);
        blob.sigma.assign(fields.begin() + dim, fields.begin() + 2 * dim);
        const double count = fields[2 * dim];
        if (count < 0 || count != std::floor(count)) {
            throw CsvError("count must be a non-negative integer", row, 2 * dim + 1);
        }
        blob.count = static_cast<std::size_t>(count);
        blobs.push_back(std::move(blob));
    });
    return blobs;
}

} // namespace pbcdbscan
