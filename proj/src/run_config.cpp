#include "pbcdbscan/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace pbcdbscan {

namespace {

double parse_number(std::string_view text, const std::string& what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("cannot parse " + what + " from \"" + std::string(text) +
                                    "\"");
    }
    return value;
}

std::pair<double, double> parse_interval(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("expected LO:HI, got \"" + std::string(text) + "\"");
    }
    const double lo = parse_number(text.substr(0, colon), "lower bound");
    const double hi = parse_number(text.substr(colon + 1), "upper bound");
    return {lo, hi};
}

} // namespace

BoundarySpec parse_boundary_flag(const std::string& text) {
    if (text == "open") return BoundarySpec::open();
    const std::string_view prefix = "periodic:";
    if (text.rfind(prefix, 0) == 0) {
        const auto [lo, hi] = parse_interval(std::string_view(text).substr(prefix.size()));
        return BoundarySpec::periodic(lo, hi);
    }
    throw std::invalid_argument("boundary must be \"open\" or \"periodic:LO:HI\", got \"" + text +
                                "\"");
}

DomainSpec build_domain(const RunConfig& cfg, std::size_t data_dim) {
    if (!cfg.all_periodic.empty() && !cfg.dim_flags.empty()) {
        throw std::invalid_argument("--all-periodic and --dim are mutually exclusive");
    }
    if (!cfg.all_periodic.empty()) {
        const auto [lo, hi] = parse_interval(cfg.all_periodic);
        return DomainSpec::all_periodic(data_dim, lo, hi);
    }
    if (cfg.dim_flags.empty()) {
        throw std::invalid_argument("no boundaries given; pass --dim per dimension or "
                                    "--all-periodic LO:HI");
    }
    if (cfg.dim_flags.size() != data_dim) {
        throw std::invalid_argument("got " + std::to_string(cfg.dim_flags.size()) +
                                    " --dim flags for " + std::to_string(data_dim) +
                                    "-dimensional data");
    }
    DomainSpec domain;
    for (const std::string& flag : cfg.dim_flags) {
        domain.dims.push_back(parse_boundary_flag(flag));
    }
    return domain;
}

SummaryLine::SummaryLine(std::string_view command) {
    line_ = "pbcdbscan v1 ";
    line_ += command;
}

SummaryLine& SummaryLine::field(std::string_view key, std::size_t value) {
    return field(key, std::string_view(std::to_string(value)));
}

SummaryLine& SummaryLine::field(std::string_view key, int value) {
    return field(key, std::string_view(std::to_string(value)));
}

SummaryLine& SummaryLine::field(std::string_view key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return field(key, std::string_view(buf));
}

SummaryLine& SummaryLine::field(std::string_view key, std::string_view value) {
    line_ += ' ';
    line_ += key;
    line_ += '=';
    line_ += value;
    return *this;
}

SummaryLine& SummaryLine::field(std::string_view key, bool value) {
    return field(key, std::string_view(value ? "true" : "false"));
}

} // namespace pbcdbscan
