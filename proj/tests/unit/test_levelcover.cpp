#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <dynmatch/levelcover.hpp>
#include <dynmatch/oracle.hpp>

#include "support.hpp"

using dynmatch::DynamicVertexCover;
using dynmatch::LevelPartition;
using dynmatch::NodeId;

namespace {

// Independent floating-point recomputation of node weights from levels alone.
std::vector<double> recompute_weights(const DynamicVertexCover& dc) {
    const auto& p = dc.partition();
    const double beta = p.params().beta;
    std::vector<double> w(dc.graph().node_count(), 0.0);
    for (const auto& e : dc.graph().edges()) {
        double x = std::pow(beta, -std::max(p.level(e.u), p.level(e.v)));
        w[e.u] += x;
        w[e.v] += x;
    }
    return w;
}

void check_against_model(const DynamicVertexCover& dc) {
    const auto& p = dc.partition();
    const double ab = p.params().alpha_beta();
    auto w = recompute_weights(dc);
    double total = 0.0;
    std::size_t cover = 0;
    for (NodeId v = 0; v < w.size(); ++v) {
        REQUIRE(p.weight(v) == doctest::Approx(w[v]).epsilon(1e-9));
        REQUIRE(w[v] <= ab * (1 + 1e-12));
        if (p.level(v) > 0) REQUIRE(w[v] >= 1.0 - 1e-12);
        REQUIRE(p.in_cover(v) == (w[v] >= 1.0 - 1e-12));
        cover += w[v] >= 1.0 - 1e-12;
        total += w[v];
    }
    REQUIRE(p.cover_size() == cover);
    REQUIRE(p.fractional_value() == doctest::Approx(total / 2.0 / ab).epsilon(1e-9));
    for (const auto& e : dc.graph().edges()) REQUIRE((p.in_cover(e.u) || p.in_cover(e.v)));
}

} // namespace

TEST_SUITE("levelcover") {

TEST_CASE("parameters") {
    CHECK(dynmatch::CoverParams::make(10, 1.0).top_level == 2);
    CHECK(dynmatch::CoverParams::make(4, 1.0).top_level == 0);
    auto p = dynmatch::CoverParams::make(100, 0.5);
    CHECK(p.alpha == doctest::Approx(2.5));
    CHECK(p.beta == doctest::Approx(1.5));
    CHECK(p.top_level == static_cast<int>(std::ceil(std::log(100 / 2.5) / std::log(1.5))));
    CHECK_THROWS_AS(LevelPartition(10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LevelPartition(10, 1.5), std::invalid_argument);
    CHECK_NOTHROW(LevelPartition(10, 1.0));
}

TEST_CASE("empty structure") {
    DynamicVertexCover dc(7, 0.3);
    CHECK(dc.partition().cover_size() == 0);
    CHECK(dc.partition().fractional_value() == 0.0);
    CHECK(dc.audit());
}

TEST_CASE("single edge") {
    DynamicVertexCover dc(5, 1.0);
    dc.insert_edge(0, 1);
    const auto& p = dc.partition();
    CHECK(p.level(0) == 0);
    CHECK(p.weight(0) == 1.0);
    CHECK(p.weight(1) == 1.0);
    CHECK(p.cover_size() == 2);
    CHECK(p.fractional_value() == doctest::Approx(1.0 / 8.0));
    CHECK(p.certificate_holds());
    CHECK(dc.audit());
    dc.delete_edge(0, 1);
    CHECK(p.weight(0) == 0.0);
    CHECK(p.cover_size() == 0);
    CHECK(p.level(0) == 0);
}

TEST_CASE("star climbs after exceeding alpha beta") {
    DynamicVertexCover dc(10, 1.0);
    const auto& p = dc.partition();
    for (NodeId leaf = 1; leaf <= 8; ++leaf) {
        dc.insert_edge(0, leaf);
        CHECK(p.level(0) == 0);
    }
    CHECK(p.weight(0) == 8.0);
    CHECK_FALSE(p.is_dirty(0));
    CHECK(p.ledger().level_moves_up == 0);
    dc.insert_edge(0, 9);
    CHECK(p.level(0) == 1);
    CHECK(p.ledger().level_moves_up == 1);
    CHECK(p.ledger().edge_weight_changes == 9);
    CHECK(p.weight(0) == 4.5);
    CHECK(dc.audit());

    SUBCASE("losing weight moves the center back down") {
        const auto moves = p.ledger().level_moves();
        dc.delete_edge(0, 9); // clean node stays put
        CHECK(p.ledger().level_moves() == moves);
        for (NodeId leaf = 1; leaf <= 6; ++leaf) dc.delete_edge(0, leaf);
        CHECK(p.level(0) == 1);
        CHECK(p.weight(0) == 1.0);
        dc.delete_edge(0, 7);
        CHECK(p.level(0) == 0);
        CHECK(p.ledger().level_moves_down == 1);
        CHECK(p.weight(0) == 1.0);
        CHECK(dc.audit());
    }
}

TEST_CASE("edge to a high node adds only the top-level weight") {
    DynamicVertexCover dc(20, 1.0);
    const auto& p = dc.partition();
    for (NodeId leaf = 1; leaf <= 17; ++leaf) dc.insert_edge(0, leaf);
    REQUIRE(p.level(0) == 2);
    const double before = p.weight(0);
    const auto moves = p.ledger().level_moves();
    dc.insert_edge(0, 18);
    CHECK(p.weight(0) == before + 0.25);
    CHECK(p.weight(18) == 0.25);
    CHECK(p.level(18) == 0);
    CHECK(p.ledger().level_moves() == moves);
    CHECK(dc.audit());
}

TEST_CASE("moving down can push a neighbor up") {
    // v and w climb to level 1 sharing neighbor x, then x fills to exactly 8.
    DynamicVertexCover dc(26, 1.0);
    const auto& p = dc.partition();
    const NodeId v = 0, w = 1, x = 2;
    dc.insert_edge(v, x);
    for (NodeId a = 3; a <= 10; ++a) dc.insert_edge(v, a);
    dc.insert_edge(w, x);
    for (NodeId d = 11; d <= 18; ++d) dc.insert_edge(w, d);
    REQUIRE(p.level(v) == 1);
    REQUIRE(p.level(w) == 1);
    for (NodeId b = 19; b <= 25; ++b) dc.insert_edge(x, b);
    REQUIRE(p.level(x) == 0);
    REQUIRE(p.weight(x) == 8.0);
    for (NodeId a = 3; a <= 9; ++a) dc.delete_edge(v, a);
    CHECK(p.level(v) == 1); // weight exactly 1 is allowed above level 0
    CHECK(p.weight(v) == 1.0);
    dc.delete_edge(v, 10);
    CHECK(p.level(v) == 0);
    CHECK(p.level(x) == 1);
    CHECK(p.weight(x) == 4.5);
    CHECK(p.ledger().level_moves_up == 3);
    CHECK(p.ledger().level_moves_down == 1);
    CHECK(dc.audit());
    check_against_model(dc);
}

TEST_CASE("long random stream against the model") {
    const std::size_t n = 100;
    DynamicVertexCover dc(n, 0.5);
    testing::RandomUpdates gen(n, 0.6, 5);
    for (int t = 1; t <= 10000; ++t) {
        auto [ins, e] = gen.next();
        if (ins) {
            dc.insert_edge(e.u, e.v);
        } else {
            dc.delete_edge(e.u, e.v);
        }
        REQUIRE(dc.partition().certificate_holds());
        REQUIRE(dc.partition().ledger().edge_weight_changes <= dc.partition().work_budget(t));
        if (t % 250 == 0) {
            auto report = dc.audit();
            INFO(report.violation);
            REQUIRE(report);
            check_against_model(dc);
        }
    }
}

TEST_CASE("cover stays within the ratio of the exact minimum") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double eps = seed % 2 ? 0.1 : 1.0;
        DynamicVertexCover dc(12, eps);
        testing::RandomUpdates gen(12, 0.6, seed);
        const double bound = 2 * dc.partition().params().alpha_beta();
        for (int t = 0; t < 60; ++t) {
            auto [ins, e] = gen.next();
            if (ins) {
                dc.insert_edge(e.u, e.v);
            } else {
                dc.delete_edge(e.u, e.v);
            }
            auto exact = dynmatch::oracle::min_vertex_cover_exact(dc.graph());
            REQUIRE(static_cast<double>(dc.partition().cover_size()) <= bound * static_cast<double>(exact.value));
        }
    }
}

TEST_CASE("corrupted weight is reported") {
    DynamicVertexCover dc(6, 0.5);
    dc.insert_edge(0, 1);
    dc.insert_edge(1, 2);
    REQUIRE(dc.audit());
    dc.partition().corrupt_weight_for_testing(1, 0.25);
    auto report = dc.audit();
    CHECK_FALSE(report);
    CHECK(report.violation.find("weight") != std::string::npos);
}

TEST_CASE("duplicate and missing edges are rejected") {
    LevelPartition p(4, 0.5);
    p.handle_insert(0, 1);
    CHECK_THROWS_AS(p.handle_insert(1, 0), std::logic_error);
    CHECK_THROWS_AS(p.handle_delete(2, 3), std::logic_error);
}

}
