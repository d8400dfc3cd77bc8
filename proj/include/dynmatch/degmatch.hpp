#ifndef DYNMATCH_DEGMATCH_HPP
#define DYNMATCH_DEGMATCH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <dynmatch/detail/arena.hpp>
#include <dynmatch/dyngraph.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch {

/// Matching as a symmetric mate array plus a dense list of matched edges.
class MatchState {
public:
    explicit MatchState(std::size_t n);

    NodeId mate(NodeId v) const { return mate_.get(v); }
    bool is_free(NodeId v) const { return mate_.get(v) == kNoNode; }
    bool is_matched_edge(NodeId u, NodeId v) const { return mate_.get(u) == v; }
    std::size_t size() const { return list_.size(); }
    const std::vector<EdgeKey>& edges() const { return list_; }

    void match(NodeId u, NodeId v);
    void unmatch(NodeId u, NodeId v);
    void reset();

    /// Symmetry, disjointness, list consistency and presence in `host`.
    AuditReport check(const DynamicGraph& host) const;

private:
    detail::StampedArray<NodeId> mate_;
    detail::StampedArray<std::uint32_t> pos_; // index in list_, keyed by lower endpoint
    std::vector<EdgeKey> list_;
};

/// Maximal matching on a bounded-degree graph it mirrors internally.
class MaximalMatcher {
public:
    explicit MaximalMatcher(std::size_t n) : graph_(n), state_(n) {}

    void insert_edge(NodeId u, NodeId v);
    void delete_edge(NodeId u, NodeId v);

    const DynamicGraph& graph() const { return graph_; }
    const MatchState& matching() const { return state_; }
    std::size_t size() const { return state_.size(); }

    void reset();
    std::uint64_t take_ops();

private:
    void rematch(NodeId u);

    DynamicGraph graph_;
    MatchState state_;
    std::uint64_t ops_ = 0;
};

/**
 * Matching with no augmenting path of length 1 or 3 on a bounded-degree graph
 * it mirrors internally. Every update costs O(max degree).
 *
 * Each node keeps a list of its currently free neighbors, indexed by the
 * mirror's adjacency cells so handles are found in O(1).
 */
class ShortPathMatcher {
public:
    explicit ShortPathMatcher(std::size_t n);

    void insert_edge(NodeId u, NodeId v);
    void delete_edge(NodeId u, NodeId v);

    const DynamicGraph& graph() const { return graph_; }
    const MatchState& matching() const { return state_; }
    std::size_t size() const { return state_.size(); }
    std::vector<NodeId> free_neighbors(NodeId v) const;

    /// Flips an augmenting path given as its node sequence.
    void augment(const std::vector<NodeId>& path);

    void reset();
    std::uint64_t take_ops();

    /// Compares the free-neighbor lists against a recomputation.
    AuditReport check_free_index() const;

private:
    using Cell = detail::ListPool::Index;
    static constexpr Cell kNoCell = detail::ListPool::kNone;

    struct Slot {
        Cell cell = kNoCell;
        std::uint32_t gen = 0;
    };

    Cell head(NodeId v);
    Cell& slot(Cell adjacency_cell);
    NodeId first_free_neighbor(NodeId v, NodeId excluded) const;
    void file_free(Cell adjacency_cell, NodeId owner, NodeId who);
    void unfile_free(Cell adjacency_cell);
    void announce_free(NodeId a);
    void announce_matched(NodeId a);
    void match(NodeId a, NodeId b);
    void find_mate(NodeId u);
    void resolve(NodeId u);

    DynamicGraph graph_;
    MatchState state_;
    detail::ListPool free_lists_;
    detail::StampedArray<Cell> heads_;
    std::vector<Slot> slots_;
    std::uint32_t gen_ = 1;
    std::uint64_t ops_ = 0;
};

/// Augmenting path with at most `max_length` edges, found by exhaustive search.
/// max_length = 1 tests maximality; max_length = 3 tests the short-path property.
std::optional<std::vector<NodeId>> find_augmenting_path(const DynamicGraph& g, const MatchState& m,
                                                        std::size_t max_length);

} // namespace dynmatch

#endif
