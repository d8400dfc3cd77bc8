#ifndef DYNMATCH_DYNGRAPH_HPP
#define DYNMATCH_DYNGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <dynmatch/detail/arena.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch {

/**
 * Simple undirected graph on a fixed node set with O(1) edge updates.
 *
 * Each node owns a doubly linked neighbor list; an edge is two list cells that
 * point at each other. The dense edge array doubles as a marked/unmarked
 * partition, used by background rebuilds to pick an edge that has not been
 * copied yet.
 */
class DynamicGraph {
public:
    using Cell = detail::ListPool::Index;
    static constexpr Cell kNoCell = detail::ListPool::kNone;

    class NeighborRange {
    public:
        class iterator {
        public:
            using value_type = NodeId;
            using difference_type = std::ptrdiff_t;
            iterator() = default;
            iterator(const detail::ListPool* pool, Cell cell) : pool_(pool), cell_(cell) {}
            NodeId operator*() const { return pool_->value(cell_); }
            iterator& operator++() {
                cell_ = pool_->next(cell_);
                return *this;
            }
            iterator operator++(int) {
                iterator old = *this;
                ++*this;
                return old;
            }
            bool operator==(const iterator& o) const { return cell_ == o.cell_; }

        private:
            const detail::ListPool* pool_ = nullptr;
            Cell cell_ = kNoCell;
        };

        NeighborRange(const detail::ListPool* pool, Cell sentinel) : pool_(pool), sentinel_(sentinel) {}
        iterator begin() const {
            return sentinel_ == kNoCell ? end() : iterator(pool_, pool_->first(sentinel_));
        }
        iterator end() const { return iterator(pool_, sentinel_); }

    private:
        const detail::ListPool* pool_;
        Cell sentinel_;
    };

    explicit DynamicGraph(std::size_t n);

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return dense_.size(); }

    bool insert_edge(NodeId u, NodeId v);
    bool delete_edge(NodeId u, NodeId v);
    bool has_edge(NodeId u, NodeId v) const;
    std::size_t degree(NodeId v) const;
    NeighborRange neighbors(NodeId v) const;

    /// Current edges in dense-array order (insertion order until deletions reshuffle it).
    std::span<const EdgeKey> edges() const { return dense_; }

    // Cell-level access for structures that index per-adjacency data.
    // first_cell(v) == end_cell(v) when v has no neighbors.
    Cell first_cell(NodeId v) const;
    Cell end_cell(NodeId v) const;
    Cell next_cell(Cell c) const { return pool_.next(c); }
    NodeId cell_target(Cell c) const { return pool_.value(c); }
    Cell twin_cell(Cell c) const { return pool_.twin(c); }
    std::size_t cell_capacity() const { return pool_.capacity(); }
    /// Cell holding v inside u's list, if the edge exists.
    std::optional<Cell> cell_of(NodeId u, NodeId v) const;

    // Marked-prefix partition of the dense edge array.
    void clear_marks() { marked_ = 0; }
    bool mark(NodeId u, NodeId v);
    bool is_marked(NodeId u, NodeId v) const;
    std::size_t marked_count() const { return marked_; }
    std::optional<EdgeKey> first_unmarked() const;

    /// Removes all edges and marks; O(1) apart from releasing the dense array.
    void reset();

    /// Symmetry, handle and count consistency. Linear time.
    AuditReport self_check() const;

private:
    struct NodeSlot {
        Cell sentinel = kNoCell;
        std::uint32_t degree = 0;
    };
    struct EdgeRec {
        Cell cell_lo = kNoCell; // holds hi inside lo's list
        Cell cell_hi = kNoCell; // holds lo inside hi's list
        std::uint32_t pos = 0;
        std::uint32_t gen = 0;
    };

    void check_pair(NodeId u, NodeId v) const;
    void check_node(NodeId v) const;
    NodeSlot& node(NodeId v);
    const EdgeRec* find(EdgeKey e) const;
    EdgeRec* find(EdgeKey e);
    void swap_dense(std::size_t i, std::size_t j);

    std::size_t n_;
    detail::ListPool pool_;
    detail::StampedArray<NodeSlot> nodes_;
    std::unordered_map<std::uint64_t, EdgeRec> index_;
    std::vector<EdgeKey> dense_;
    std::size_t marked_ = 0;
    std::uint32_t gen_ = 1;
};

} // namespace dynmatch

#endif
