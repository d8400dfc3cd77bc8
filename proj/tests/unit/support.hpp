#ifndef DYNMATCH_TEST_SUPPORT_HPP
#define DYNMATCH_TEST_SUPPORT_HPP

#include <random>
#include <set>
#include <vector>

#include <dynmatch/types.hpp>

namespace testing {

/// Random replay-valid update sequence over a naive edge set.
struct RandomUpdates {
    std::size_t n;
    double insert_probability;
    std::mt19937_64 rng;
    std::set<dynmatch::EdgeKey> present;

    RandomUpdates(std::size_t n_, double p, std::uint64_t seed) : n(n_), insert_probability(p), rng(seed) {}

    /// Returns (insert?, edge).
    std::pair<bool, dynmatch::EdgeKey> next() {
        const std::size_t full = n * (n - 1) / 2;
        bool insert = present.empty() ||
                      (present.size() < full && std::bernoulli_distribution(insert_probability)(rng));
        if (insert) {
            std::uniform_int_distribution<dynmatch::NodeId> pick(0, static_cast<dynmatch::NodeId>(n - 1));
            for (;;) {
                auto a = pick(rng), b = pick(rng);
                if (a == b) continue;
                auto e = dynmatch::EdgeKey::of(a, b);
                if (present.insert(e).second) return {true, e};
            }
        }
        auto it = present.begin();
        std::advance(it, std::uniform_int_distribution<std::size_t>(0, present.size() - 1)(rng));
        auto e = *it;
        present.erase(it);
        return {false, e};
    }
};

} // namespace testing

#endif
