#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbcdbscan/run_config.hpp"

using namespace pbcdbscan;

TEST_CASE("boundary flags parse") {
    CHECK(parse_boundary_flag("open") == BoundarySpec::open());
    CHECK(parse_boundary_flag("periodic:0:1") == BoundarySpec::periodic(0.0, 1.0));
    CHECK(parse_boundary_flag("periodic:-2.5:1e1") == BoundarySpec::periodic(-2.5, 10.0));
    CHECK_THROWS_AS(parse_boundary_flag("periodic:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_boundary_flag("periodic:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_boundary_flag("sideways"), std::invalid_argument);
    CHECK_THROWS_AS(parse_boundary_flag("periodic:a:b"), std::invalid_argument);
}

TEST_CASE("build_domain expands --all-periodic to the data dimension") {
    RunConfig cfg;
    cfg.all_periodic = "0:1";
    const DomainSpec domain = build_domain(cfg, 3);
    CHECK(domain.dim() == 3);
    for (const auto& b : domain.dims) CHECK(b == BoundarySpec::periodic(0.0, 1.0));
}

TEST_CASE("build_domain uses --dim flags in order") {
    RunConfig cfg;
    cfg.dim_flags = {"periodic:0:1", "open"};
    const DomainSpec domain = build_domain(cfg, 2);
    CHECK(domain.dims[0].is_periodic());
    CHECK_FALSE(domain.dims[1].is_periodic());
}

TEST_CASE("build_domain rejects mismatch and ambiguity") {
    RunConfig cfg;
    CHECK_THROWS_AS(build_domain(cfg, 2), std::invalid_argument); // no flags at all
    cfg.dim_flags = {"open"};
    CHECK_THROWS_AS(build_domain(cfg, 2), std::invalid_argument); // wrong count
    cfg.all_periodic = "0:1";
    CHECK_THROWS_AS(build_domain(cfg, 1), std::invalid_argument); // both forms
}

TEST_CASE("summary lines are versioned key=value records") {
    const std::string line = SummaryLine("cluster")
                                 .field("n", std::size_t{42})
                                 .field("seconds", 0.25)
                                 .field("equivalent", true)
                                 .str();
    CHECK(line == "pbcdbscan v1 cluster n=42 seconds=0.25 equivalent=true");
}
