#ifndef DYNMATCH_ORACLE_HPP
#define DYNMATCH_ORACLE_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <dynmatch/dyngraph.hpp>
#include <dynmatch/kernel.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch::oracle {

inline constexpr std::size_t kBlossomNodeCap = 500;
inline constexpr std::size_t kBruteForceEdgeCap = 24;
inline constexpr std::size_t kCoverNodeCap = 24;

/// Thrown when an instance is larger than an exact solver accepts.
class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

struct MatchingResult {
    std::size_t value = 0;
    std::vector<EdgeKey> witness;
};

struct CoverResult {
    std::size_t value = 0;
    std::vector<NodeId> witness;
};

/// Maximum matching in a general graph (Edmonds, cubic time).
MatchingResult max_matching_exact(const DynamicGraph& g);
/// Maximum matching by exhaustive search over edge subsets.
MatchingResult max_matching_bruteforce(const DynamicGraph& g);
/// Minimum vertex cover by branch and bound with a matching lower bound.
CoverResult min_vertex_cover_exact(const DynamicGraph& g);

bool is_valid_cover(const DynamicGraph& g, std::span<const NodeId> cover);
bool is_matching(const DynamicGraph& g, std::span<const EdgeKey> edges);
bool is_maximal_matching(const DynamicGraph& g, std::span<const EdgeKey> edges);

/// Graph whose kernel admits a maximal matching a quarter the size of the maximum.
struct TightnessFixture {
    std::size_t c = 0;
    DynamicGraph graph{1};
    std::vector<NodeId> left, right, hub, outer_hub, outer_left, outer_right;
    std::vector<EdgeKey> kernel_edges;
    std::vector<NodeId> tight;
    std::vector<EdgeKey> kernel_matching; // size c/2, maximal in the kernel
    std::vector<EdgeKey> large_matching;  // size 2c, in the graph

    /// The fixture kernel with slack 1/c.
    Kernel kernel() const;
    /// Kernel edges as a standalone graph.
    DynamicGraph kernel_graph() const;
};

TightnessFixture build_tightness_fixture(std::size_t c);

} // namespace dynmatch::oracle

#endif
