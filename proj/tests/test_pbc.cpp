#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pbcdbscan/datagen.hpp"
#include "pbcdbscan/oracle.hpp"
#include "pbcdbscan/pbc.hpp"

using namespace pbcdbscan;

namespace {

DomainSpec unit_periodic(std::size_t d) { return DomainSpec::all_periodic(d, 0.0, 1.0); }

PointSet points_1d(std::initializer_list<double> xs) {
    PointSet p(1);
    for (double x : xs) p.add({x});
    return p;
}

} // namespace

TEST_CASE("link table unions to the minimum id") {
    LinkTable links(6);
    CHECK(links.find(3) == 3);
    links.link(4, 2);
    CHECK(links.find(4) == 2);
    links.link(2, 5);
    CHECK(links.find(5) == 2);
    links.link(0, 1);
    links.link(1, 4); // transitively joins {0,1} with {2,4,5}
    for (int id : {0, 1, 2, 4, 5}) CHECK(links.find(id) == 0);
    CHECK(links.find(3) == 3);
    // idempotent and commutative in effect
    links.link(5, 0);
    CHECK(links.find(5) == 0);
    // ids beyond the table are singletons
    CHECK(links.find(42) == 42);
}

TEST_CASE("extend_periodic copies a point near the lower face") {
    const PaddedSet padded = extend_periodic(points_1d({0.02}), unit_periodic(1), 0.05);
    REQUIRE(padded.size() == 1);
    CHECK(padded.points.coord(0, 0) == doctest::Approx(1.02));
    CHECK(padded.origin_index[0] == 0);
}

TEST_CASE("extend_periodic ignores interior points") {
    CHECK(extend_periodic(points_1d({0.50}), unit_periodic(1), 0.05).size() == 0);
}

TEST_CASE("extend_periodic emits corner copies in lexicographic shift order") {
    PointSet pts(2);
    pts.add({0.01, 0.99});
    const PaddedSet padded = extend_periodic(pts, unit_periodic(2), 0.05);
    REQUIRE(padded.size() == 3);
    // shift tuples in ascending lexicographic order: (0,-1), (+1,-1), (+1,0)
    CHECK(padded.points.coord(0, 0) == doctest::Approx(0.01));
    CHECK(padded.points.coord(0, 1) == doctest::Approx(-0.01));
    CHECK(padded.points.coord(1, 0) == doctest::Approx(1.01));
    CHECK(padded.points.coord(1, 1) == doctest::Approx(-0.01));
    CHECK(padded.points.coord(2, 0) == doctest::Approx(1.01));
    CHECK(padded.points.coord(2, 1) == doctest::Approx(0.99));
    CHECK(padded.origin_index == std::vector<int>{0, 0, 0});
}

TEST_CASE("a point exactly on the lower boundary is copied") {
    const PaddedSet padded = extend_periodic(points_1d({0.0}), unit_periodic(1), 0.05);
    REQUIRE(padded.size() == 1);
    CHECK(padded.points.coord(0, 0) == 1.0);
}

TEST_CASE("extend_periodic validates its inputs") {
    CHECK_THROWS_AS(extend_periodic(points_1d({0.5}), unit_periodic(1), 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(extend_periodic(points_1d({1.5}), unit_periodic(1), 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(extend_periodic(points_1d({-0.1}), unit_periodic(1), 0.05),
                    std::invalid_argument);
    PointSet pts2(2);
    pts2.add({0.5, 0.5});
    CHECK_THROWS_AS(extend_periodic(pts2, unit_periodic(1), 0.05), std::invalid_argument);
}

TEST_CASE("padded copies stay in the extended shell, outside the domain") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DomainSpec domain;
    domain.dims = {BoundarySpec::periodic(0.0, 1.0), BoundarySpec::open(),
                   BoundarySpec::periodic(-2.0, 0.5)};
    const double eps = 0.07;
    PointSet pts(3);
    for (int i = 0; i < 4000; ++i) {
        pts.add({u(rng), u(rng), -2.0 + 2.5 * u(rng)});
    }
    const PaddedSet padded = extend_periodic(pts, domain, eps);
    CHECK(padded.size() > 0);
    for (std::size_t j = 0; j < padded.size(); ++j) {
        int shifted_dims = 0;
        for (std::size_t d = 0; d < 3; ++d) {
            const BoundarySpec& b = domain.dims[d];
            const double copy = padded.points.coord(j, d);
            const double orig = pts.coord(padded.origin_index[j], d);
            if (!b.is_periodic()) {
                CHECK(copy == orig);
                continue;
            }
            const double shift = copy - orig;
            if (shift != 0.0) {
                ++shifted_dims;
                CHECK(std::abs(std::abs(shift) - b.period()) < 1e-12);
                // inside the extended shell for that dimension
                CHECK(copy >= b.lower - eps - 1e-12);
                CHECK(copy <= b.upper + eps + 1e-12);
                CHECK((copy < b.lower || copy >= b.upper));
            }
        }
        CHECK(shifted_dims > 0);
    }
}

TEST_CASE("link_labels records disagreements between copies and originals") {
    PointSet pts(1);
    pts.add({0.01});
    pts.add({0.5});
    PaddedSet padded;
    padded.points = points_1d({1.01});
    padded.origin_index = {0};

    SUBCASE("single disagreement unions the two ids") {
        const std::vector<int> labels_all = {0, 1, 1};
        const LinkTable links = link_labels(labels_all, padded, 2);
        CHECK(links.find(0) == 0);
        CHECK(links.find(1) == 0);
    }
    SUBCASE("agreement leaves singletons") {
        const std::vector<int> labels_all = {0, 1, 0};
        const LinkTable links = link_labels(labels_all, padded, 2);
        CHECK(links.find(0) == 0);
        CHECK(links.find(1) == 1);
    }
    SUBCASE("noise on either side never links") {
        for (auto labels_all : {std::vector<int>{-1, 1, 0}, std::vector<int>{0, 1, -1}}) {
            const LinkTable links = link_labels(labels_all, padded, 2);
            CHECK(links.find(0) == 0);
            CHECK(links.find(1) == 1);
        }
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(link_labels(std::vector<int>{0, 1}, padded, 2), std::invalid_argument);
    }
}

TEST_CASE("link_labels chains transitive links") {
    PaddedSet padded;
    padded.points = points_1d({-0.01, -0.02, -0.03});
    padded.origin_index = {0, 1, 2};
    // copies labeled 1,2,2 against originals 0,1,2: links (0,1) and (1,2)
    const std::vector<int> labels_all = {0, 1, 2, 1, 2, 2};
    const LinkTable links = link_labels(labels_all, padded, 3);
    CHECK(links.find(0) == 0);
    CHECK(links.find(1) == 0);
    CHECK(links.find(2) == 0);
}

TEST_CASE("resolve_labels applies the minimum representative and compacts") {
    PaddedSet none;
    none.points = PointSet(1);

    SUBCASE("linked classes collapse to the minimum") {
        LinkTable links(2);
        links.link(0, 1);
        const std::vector<int> labels_all = {0, 1, -1};
        CHECK(resolve_labels(labels_all, links, none, 3) == std::vector<int>{0, 0, -1});
    }
    SUBCASE("unlinked sparse labels are compacted in order") {
        const std::vector<int> labels_all = {5, 7};
        CHECK(resolve_labels(labels_all, LinkTable(8), none, 2) == std::vector<int>{0, 1});
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(resolve_labels(std::vector<int>{0}, LinkTable(1), none, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("resolve_labels adopts a clustered copy for a noise original") {
    // constructed so the original is torus-reachable only through a copy
    // whose own left-side image is not core
    PaddedSet padded;
    padded.points = points_1d({1.01, -0.02});
    padded.origin_index = {0, 3};
    const std::vector<int> labels_all = {-1, 0, 0, 0, 0, -1};
    const std::vector<int> resolved = resolve_labels(labels_all, LinkTable(1), padded, 4);
    CHECK(resolved == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("dbscan_periodic matches the hand-worked 1d example") {
    const PointSet pts = points_1d({0.02, 0.98, 0.95, 0.50});
    const DbscanParams params{0.05, 2};

    const std::vector<int> periodic = dbscan_periodic(pts, unit_periodic(1), params);
    CHECK(periodic == std::vector<int>{0, 0, 0, -1});
    CHECK(periodic == dbscan_bruteforce(pts, unit_periodic(1), params));

    const std::vector<int> open = dbscan_periodic(pts, DomainSpec::all_open(1), params);
    CHECK(open == std::vector<int>{-1, 0, 0, -1});
    CHECK(open == dbscan(pts, params));
}

TEST_CASE("the noise-adoption instance ends up matching the torus reference") {
    const PointSet pts = points_1d({0.01, 0.89, 0.935, 0.98});
    const DomainSpec domain = unit_periodic(1);
    const DbscanParams params{0.05, 3};

    // the raw extended-domain run must leave the original at 0.01 as noise
    // while its copy at 1.01 lands in the cluster
    PointSet all = wrap_points(pts, domain);
    const PaddedSet padded = extend_periodic(all, domain, params.epsilon);
    all.append(padded.points);
    const std::vector<int> labels_all = dbscan(all, params);
    REQUIRE(padded.size() == 2);
    CHECK(labels_all[0] == -1);         // original
    CHECK(labels_all[4] == 0);          // its +L copy
    CHECK(labels_all[5] == -1);         // truncated copy of 0.98 is not core

    const std::vector<int> resolved =
        resolve_labels(labels_all, link_labels(labels_all, padded, 4), padded, 4);
    CHECK(resolved == dbscan_bruteforce(pts, domain, params));
    CHECK(resolved == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("a 2d blob across the seam forms a single cluster") {
    const DomainSpec domain = unit_periodic(2);
    const std::vector<BlobSpec> blobs = {{{0.0, 0.5}, {0.03, 0.03}, 80}};
    const PointSet pts = generate_blobs(blobs, domain, 12345);
    const DbscanParams params{0.06, 5};

    const std::vector<int> periodic = dbscan_periodic(pts, domain, params);
    std::set<int> periodic_ids(periodic.begin(), periodic.end());
    periodic_ids.erase(-1);
    CHECK(periodic_ids.size() == 1);

    const std::vector<int> open = dbscan(pts, params);
    std::set<int> open_ids(open.begin(), open.end());
    open_ids.erase(-1);
    CHECK(open_ids.size() >= 2);

    const ClusterComparison cmp = compare_clusterings(
        periodic, dbscan_bruteforce(pts, domain, params), pts, domain, params);
    CHECK(cmp.equivalent());
}

TEST_CASE("all-open domains reduce to plain dbscan bit for bit") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 1 + rng() % 3;
        const std::size_t n = 5 + rng() % 200;
        PointSet pts(dim);
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& x : p) x = u(rng);
            pts.add(p);
        }
        const DbscanParams params{0.02 + 0.1 * u(rng), static_cast<int>(2 + rng() % 5)};
        const PeriodicRun run = dbscan_periodic_run(pts, DomainSpec::all_open(dim), params);
        CHECK(run.padded_count == 0);
        CHECK(run.labels == dbscan(pts, params));
    }
}

TEST_CASE("unwrapped input is wrapped internally") {
    const PointSet raw = points_1d({1.02, -0.02, 0.95, 2.5});
    const PointSet wrapped = points_1d({0.02, 0.98, 0.95, 0.5});
    const DbscanParams params{0.05, 2};
    CHECK(dbscan_periodic(raw, unit_periodic(1), params) ==
          dbscan_periodic(wrapped, unit_periodic(1), params));
}

TEST_CASE("deep-interior clusters are identical between open and periodic runs") {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const DomainSpec domain = unit_periodic(2);
        const DbscanParams params{0.05, 4};
        // one seam blob plus interior blobs well away from every face
        std::vector<BlobSpec> blobs = {
            {{0.0, u(rng)}, {0.02, 0.02}, 40},
            {{0.3 + 0.4 * u(rng), 0.3 + 0.4 * u(rng)}, {0.02, 0.02}, 40},
            {{0.3 + 0.4 * u(rng), 0.3 + 0.4 * u(rng)}, {0.02, 0.02}, 40},
        };
        const PointSet pts = generate_blobs(blobs, domain, rng());
        const std::vector<int> periodic = dbscan_periodic(pts, domain, params);
        const std::vector<int> open = dbscan(pts, params);

        auto members_by_label = [&](const std::vector<int>& labels) {
            std::map<int, std::set<std::size_t>> m;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (labels[i] >= 0) m[labels[i]].insert(i);
            }
            return m;
        };
        auto is_deep = [&](const std::set<std::size_t>& members) {
            for (std::size_t i : members) {
                for (std::size_t d = 0; d < 2; ++d) {
                    const double x = pts.coord(i, d);
                    if (x < params.epsilon || x > 1.0 - params.epsilon) return false;
                }
            }
            return true;
        };

        const auto periodic_clusters = members_by_label(periodic);
        const auto open_clusters = members_by_label(open);
        auto check_deep_clusters_appear =
            [&](const auto& from, const auto& in) {
                for (const auto& [label, members] : from) {
                    if (!is_deep(members)) continue;
                    bool found = false;
                    for (const auto& [other_label, other_members] : in) {
                        if (members == other_members) {
                            found = true;
                            break;
                        }
                    }
                    CHECK(found);
                }
            };
        check_deep_clusters_appear(periodic_clusters, open_clusters);
        check_deep_clusters_appear(open_clusters, periodic_clusters);
    }
}

TEST_CASE("padded fraction on uniform data tracks the expected volume ratio") {
    const DomainSpec domain = unit_periodic(3);
    const double eps = 0.03;
    const std::size_t n = 20000;
    const PointSet pts = generate_uniform(n, domain, 9001);
    const PaddedSet padded = extend_periodic(pts, domain, eps);
    const double expected = std::pow(1.0 + 2.0 * eps, 3) - 1.0;
    const double measured = static_cast<double>(padded.size()) / static_cast<double>(n);
    CHECK(measured == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("dbscan_periodic propagates parameter errors") {
    const PointSet pts = points_1d({0.1, 0.2});
    CHECK_THROWS_AS(dbscan_periodic(pts, unit_periodic(1), {0.6, 2}), std::invalid_argument);
    CHECK_THROWS_AS(dbscan_periodic(pts, unit_periodic(1), {0.05, 0}), std::invalid_argument);
    CHECK_THROWS_AS(dbscan_periodic(pts, unit_periodic(2), {0.05, 2}), std::invalid_argument);
}

TEST_CASE("empty input yields an empty run") {
    const PeriodicRun run = dbscan_periodic_run(PointSet(1), unit_periodic(1), {0.05, 2});
    CHECK(run.labels.empty());
    CHECK(run.padded_count == 0);
    CHECK(run.cluster_count == 0);
}
