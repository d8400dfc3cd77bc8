#include <doctest.h>

#include <bit>
#include <random>

#include <dynmatch/degmatch.hpp>
#include <dynmatch/oracle.hpp>

using namespace dynmatch;
using namespace dynmatch::oracle;

namespace {

DynamicGraph from_pairs(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
    DynamicGraph g(n);
    for (auto [u, v] : pairs) g.insert_edge(u, v);
    return g;
}

DynamicGraph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    DynamicGraph g(n);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    m = std::min(m, n * (n - 1) / 2);
    while (g.edge_count() < m) {
        NodeId a = pick(rng), b = pick(rng);
        if (a != b) g.insert_edge(a, b);
    }
    return g;
}

// Smallest cover by trying every node subset.
std::size_t cover_by_subsets(const DynamicGraph& g) {
    const std::size_t n = g.node_count();
    std::size_t best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (const auto& e : g.edges()) {
            if (!((mask >> e.u) & 1) && !((mask >> e.v) & 1)) {
                ok = false;
                break;
            }
        }
        if (ok) best = std::min<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("maximum matching on small graphs") {
    CHECK(max_matching_exact(from_pairs(3, {{0, 1}, {1, 2}, {0, 2}})).value == 1);
    CHECK(max_matching_exact(from_pairs(4, {{0, 1}, {1, 2}, {2, 3}})).value == 2);
    CHECK(max_matching_bruteforce(from_pairs(2, {{0, 1}})).value == 1);
    auto k4 = from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(max_matching_bruteforce(k4).value == 2);
    CHECK(max_matching_exact(k4).value == 2);
}

TEST_CASE("petersen graph has a perfect matching") {
    DynamicGraph g(10);
    for (NodeId i = 0; i < 5; ++i) {
        g.insert_edge(i, (i + 1) % 5);
        g.insert_edge(i, i + 5);
        g.insert_edge(5 + i, 5 + (i + 2) % 5);
    }
    REQUIRE(g.edge_count() == 15);
    auto exact = max_matching_exact(g);
    CHECK(exact.value == 5);
    CHECK(max_matching_bruteforce(g).value == 5);
    CHECK(is_matching(g, exact.witness));
    CHECK(exact.witness.size() == 5);
}

TEST_CASE("blossom agrees with exhaustive search") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(2, 14)(rng);
        std::size_t m = std::uniform_int_distribution<std::size_t>(0, 20)(rng);
        DynamicGraph g = random_graph(n, m, rng);
        auto a = max_matching_exact(g);
        auto b = max_matching_bruteforce(g);
        REQUIRE(a.value == b.value);
        REQUIRE(is_matching(g, a.witness));
        REQUIRE(is_matching(g, b.witness));
        REQUIRE(b.witness.size() == b.value);
    }
}

TEST_CASE("minimum vertex cover") {
    CHECK(min_vertex_cover_exact(from_pairs(3, {{0, 1}, {1, 2}, {0, 2}})).value == 2);
    CHECK(min_vertex_cover_exact(from_pairs(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}})).value == 1);
    auto c5 = from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    auto r = min_vertex_cover_exact(c5);
    CHECK(r.value == 3);
    CHECK(is_valid_cover(c5, r.witness));
    CHECK(min_vertex_cover_exact(DynamicGraph(4)).value == 0);
}

TEST_CASE("cover agrees with subset enumeration") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 150; ++i) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        std::size_t m = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
        DynamicGraph g = random_graph(n, m, rng);
        auto r = min_vertex_cover_exact(g);
        REQUIRE(r.value == cover_by_subsets(g));
        REQUIRE(is_valid_cover(g, r.witness));
    }
}

TEST_CASE("size caps") {
    CHECK_THROWS_AS(max_matching_exact(DynamicGraph(kBlossomNodeCap + 1)), CapExceeded);
    DynamicGraph dense(10);
    for (NodeId u = 0; u < 10; ++u)
        for (NodeId v = u + 1; v < 10; ++v) dense.insert_edge(u, v);
    CHECK_THROWS_AS(max_matching_bruteforce(dense), CapExceeded);
    CHECK_THROWS_AS(min_vertex_cover_exact(DynamicGraph(kCoverNodeCap + 1)), CapExceeded);
}

TEST_CASE("feasibility checks") {
    auto g = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
    std::vector<NodeId> all{0, 1, 2, 3};
    CHECK(is_valid_cover(g, all));
    CHECK_FALSE(is_valid_cover(g, {}));
    CHECK(is_valid_cover(DynamicGraph(3), {}));
    std::vector<EdgeKey> middle{{1, 2}};
    CHECK(is_maximal_matching(g, middle));
    std::vector<EdgeKey> first{{0, 1}};
    CHECK_FALSE(is_maximal_matching(g, first));
    std::vector<EdgeKey> clash{{0, 1}, {1, 2}};
    CHECK_FALSE(is_matching(g, clash));
}

TEST_CASE("maximality agrees with the length-one path search") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        DynamicGraph g = random_graph(10, 12, rng);
        MatchState m(10);
        for (const auto& e : g.edges()) {
            if (m.is_free(e.u) && m.is_free(e.v) && std::bernoulli_distribution(0.7)(rng)) m.match(e.u, e.v);
        }
        CHECK(is_maximal_matching(g, m.edges()) == !find_augmenting_path(g, m, 1).has_value());
    }
}

TEST_CASE("tightness fixture") {
    CHECK_THROWS_AS(build_tightness_fixture(3), std::invalid_argument);
    CHECK_THROWS_AS(build_tightness_fixture(0), std::invalid_argument);
    for (std::size_t c : {2u, 4u, 8u, 12u}) {
        CAPTURE(c);
        auto fx = build_tightness_fixture(c);
        CHECK(fx.graph.node_count() == 4 * c);
        CHECK(fx.left.size() == c / 2);
        CHECK(fx.right.size() == c / 2);
        CHECK(fx.hub.size() == c);
        CHECK(fx.outer_hub.size() == c);
        CHECK(fx.outer_left.size() == c / 2);
        CHECK(fx.outer_right.size() == c / 2);
        CHECK(fx.kernel_matching.size() == c / 2);
        CHECK(fx.large_matching.size() == 2 * c);
        CHECK(is_matching(fx.graph, fx.large_matching));
        CHECK(is_maximal_matching(fx.kernel_graph(), fx.kernel_matching));
        CHECK(max_matching_exact(fx.graph).value >= 2 * c);
        auto report = audit_kernel(fx.kernel(), fx.graph, 1.0 / static_cast<double>(c));
        INFO(report.violation);
        CHECK(report);
    }
    auto four = build_tightness_fixture(4);
    CHECK(four.graph.node_count() == 16);
    CHECK(max_matching_exact(four.graph).value == 8);
    CHECK(max_matching_exact(build_tightness_fixture(2).graph).value == 4);
}

}
