#include <doctest.h>

#include <random>

#include <dynmatch/degmatch.hpp>
#include <dynmatch/oracle.hpp>

#include "support.hpp"

using namespace dynmatch;

namespace {

// Bounded-degree random stream: insertions that would exceed `cap` are skipped.
template <class Matcher>
void run_bounded(Matcher& mm, std::size_t n, std::size_t cap, std::uint64_t seed, int steps,
                 std::size_t forbidden_length) {
    DynamicGraph g(n);
    testing::RandomUpdates gen(n, 0.6, seed);
    for (int t = 0; t < steps; ++t) {
        auto [ins, e] = gen.next();
        if (ins && (g.degree(e.u) >= cap || g.degree(e.v) >= cap)) {
            gen.present.erase(e);
            continue;
        }
        if (ins) {
            g.insert_edge(e.u, e.v);
            mm.insert_edge(e.u, e.v);
        } else {
            g.delete_edge(e.u, e.v);
            mm.delete_edge(e.u, e.v);
        }
        REQUIRE(mm.matching().check(g));
        auto path = find_augmenting_path(g, mm.matching(), forbidden_length);
        REQUIRE_FALSE(path.has_value());
    }
}

} // namespace

TEST_SUITE("degmatch") {

TEST_CASE("maximal matcher basics") {
    MaximalMatcher mm(3);
    mm.insert_edge(0, 1);
    CHECK(mm.size() == 1);
    mm.insert_edge(1, 2);
    CHECK(mm.size() == 1);
    mm.delete_edge(1, 2); // unmatched edge
    CHECK(mm.matching().is_matched_edge(0, 1));
    mm.insert_edge(1, 2);
    mm.delete_edge(0, 1);
    CHECK(mm.size() == 1);
    CHECK(mm.matching().is_matched_edge(1, 2));
}

TEST_CASE("maximal matcher rematches both endpoints") {
    MaximalMatcher mm(4);
    mm.insert_edge(1, 2);
    mm.insert_edge(0, 1);
    mm.insert_edge(2, 3);
    REQUIRE(mm.matching().is_matched_edge(1, 2));
    mm.delete_edge(1, 2);
    CHECK(mm.size() == 2);
    CHECK(mm.matching().is_matched_edge(0, 1));
    CHECK(mm.matching().is_matched_edge(2, 3));
}

TEST_CASE("maximal matcher stays maximal") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        MaximalMatcher mm(30);
        run_bounded(mm, 30, 6, seed, 600, 1);
    }
}

TEST_CASE("short path matcher insertion cases") {
    SUBCASE("both free") {
        ShortPathMatcher sp(2);
        sp.insert_edge(0, 1);
        CHECK(sp.size() == 1);
    }
    SUBCASE("rotation through the partner's free neighbor") {
        // u=0 matched to x=1, x also sees free y=2; inserting (u, v=3) yields {(u,v), (x,y)}.
        ShortPathMatcher sp(4);
        sp.insert_edge(0, 1);
        sp.insert_edge(1, 2);
        REQUIRE(sp.size() == 1);
        sp.insert_edge(0, 3);
        CHECK(sp.size() == 2);
        CHECK(sp.matching().is_matched_edge(0, 3));
        CHECK(sp.matching().is_matched_edge(1, 2));
        CHECK(sp.check_free_index());
    }
    SUBCASE("both matched") {
        ShortPathMatcher sp(4);
        sp.insert_edge(0, 1);
        sp.insert_edge(2, 3);
        sp.insert_edge(1, 2);
        CHECK(sp.size() == 2);
        CHECK(sp.matching().is_matched_edge(0, 1));
    }
}

TEST_CASE("short path matcher deletion cases") {
    SUBCASE("single edge") {
        ShortPathMatcher sp(2);
        sp.insert_edge(0, 1);
        sp.delete_edge(0, 1);
        CHECK(sp.size() == 0);
    }
    SUBCASE("greedy rematch") {
        ShortPathMatcher sp(3);
        sp.insert_edge(0, 1);
        sp.insert_edge(1, 2);
        REQUIRE(sp.matching().is_matched_edge(0, 1));
        sp.delete_edge(0, 1);
        CHECK(sp.size() == 1);
        CHECK(sp.matching().is_matched_edge(1, 2));
    }
    SUBCASE("only the rotation repairs a length-three path") {
        // Path 0-1-2-3-4 with (0,1) and (2,3) matched; dropping (0,1) leaves 1-2-3-4 augmenting.
        ShortPathMatcher sp(5);
        sp.insert_edge(0, 1);
        sp.insert_edge(2, 3);
        sp.insert_edge(1, 2);
        sp.insert_edge(3, 4);
        REQUIRE(sp.size() == 2);
        REQUIRE(sp.matching().is_matched_edge(2, 3));
        sp.delete_edge(0, 1);
        CHECK(sp.size() == 2);
        CHECK(sp.matching().is_matched_edge(1, 2));
        CHECK(sp.matching().is_matched_edge(3, 4));
        CHECK_FALSE(find_augmenting_path(sp.graph(), sp.matching(), 3).has_value());
    }
}

TEST_CASE("short path matcher keeps paths of length 1 and 3 away") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        ShortPathMatcher sp(24);
        run_bounded(sp, 24, 5, seed, 500, 3);
        REQUIRE(sp.check_free_index());
        auto exact = oracle::max_matching_exact(sp.graph());
        CHECK(2 * exact.value <= 3 * sp.size());
    }
}

TEST_CASE("path search finds planted violations") {
    DynamicGraph g(4);
    g.insert_edge(0, 1);
    MatchState m(4);
    auto p = find_augmenting_path(g, m, 1);
    REQUIRE(p.has_value());
    CHECK(p->size() == 2);
    m.match(0, 1);
    CHECK_FALSE(find_augmenting_path(g, m, 1).has_value());
    g.insert_edge(1, 2);
    g.insert_edge(0, 3);
    CHECK_FALSE(find_augmenting_path(g, m, 1).has_value());
    auto q = find_augmenting_path(g, m, 3);
    REQUIRE(q.has_value());
    CHECK(q->size() == 4);
    CHECK(oracle::is_maximal_matching(g, m.edges()));
}

TEST_CASE("match state bookkeeping") {
    DynamicGraph g(4);
    g.insert_edge(0, 1);
    g.insert_edge(2, 3);
    MatchState m(4);
    m.match(0, 1);
    m.match(3, 2);
    CHECK(m.size() == 2);
    CHECK(m.mate(2) == 3);
    CHECK(m.check(g));
    m.unmatch(1, 0);
    CHECK(m.is_free(0));
    CHECK(m.size() == 1);
    CHECK(m.check(g));
    g.delete_edge(2, 3);
    CHECK_FALSE(m.check(g));
    m.reset();
    CHECK(m.size() == 0);
}

}
