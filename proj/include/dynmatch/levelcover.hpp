#ifndef DYNMATCH_LEVELCOVER_HPP
#define DYNMATCH_LEVELCOVER_HPP

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include <dynmatch/detail/arena.hpp>
#include <dynmatch/dyngraph.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch {

struct CoverParams {
    double epsilon = 1.0;
    double alpha = 4.0; // 1 + 3 eps
    double beta = 2.0;  // 1 + eps
    int top_level = 0;  // smallest L >= 0 with alpha * beta^L >= n

    static CoverParams make(std::size_t n, double epsilon);
    double alpha_beta() const { return alpha * beta; }
};

/// Monotone work counters.
struct WorkLedger {
    std::uint64_t edge_weight_changes = 0;
    std::uint64_t level_moves_up = 0;
    std::uint64_t level_moves_down = 0;
    std::uint64_t list_relink_ops = 0;
    std::uint64_t fix_calls = 0;
    std::uint64_t updates = 0;

    std::uint64_t level_moves() const { return level_moves_up + level_moves_down; }
};

/**
 * Hierarchical level partition maintaining a vertex cover and a fractional
 * matching under edge updates.
 *
 * Edge (u,v) carries weight beta^-max(level u, level v); node weight W_v is the
 * sum over incident edges. After every update each node satisfies
 * W_v <= alpha*beta, and W_v >= 1 when above level 0. The cover is {v : W_v >= 1}
 * and edge weights scaled by 1/(alpha*beta) form a fractional matching.
 *
 * Weights are kept in 62-bit fixed point so all bookkeeping is exact.
 */
class LevelPartition {
public:
    using Fixed = __int128;
    static constexpr int kFractionBits = 62;
    static constexpr Fixed kOne = Fixed(1) << kFractionBits;
    static constexpr std::uint64_t kBudgetFactor = 50;

    LevelPartition(std::size_t n, double epsilon);

    const CoverParams& params() const { return params_; }
    std::size_t node_count() const { return nodes_.size(); }

    /// Edge (u,v) has just been added to the underlying graph.
    void handle_insert(NodeId u, NodeId v);
    /// Edge (u,v) has just been removed from the underlying graph.
    void handle_delete(NodeId u, NodeId v);

    int level(NodeId v) const { return nodes_.at(v).level; }
    double weight(NodeId v) const { return to_double(nodes_.at(v).weight); }
    Fixed weight_fixed(NodeId v) const { return nodes_.at(v).weight; }
    Fixed edge_weight_fixed(int level) const { return scale_[level]; }
    bool is_dirty(NodeId v) const { return nodes_.at(v).dirty; }

    bool in_cover(NodeId v) const;
    std::size_t cover_size() const;
    std::vector<NodeId> cover() const;
    /// Total fractional matching value.
    double fractional_value() const;
    Fixed total_weight_fixed() const { return total_; }
    /// cover_size <= 2 * alpha * beta * fractional_value, evaluated exactly.
    bool certificate_holds() const { return Fixed(cover_size_) * kOne <= 2 * total_; }

    const WorkLedger& ledger() const { return ledger_; }
    /// Work since the previous call: one unit per update, list operation and weight change.
    std::uint64_t take_ops();
    /// Cumulative weight-change allowance after `updates` updates.
    std::uint64_t work_budget(std::uint64_t updates) const;

    AuditReport audit(const DynamicGraph& g) const;

    void corrupt_weight_for_testing(NodeId v, double delta);

private:
    using Cell = detail::ListPool::Index;
    static constexpr Cell kNoCell = detail::ListPool::kNone;

    struct NodeState {
        int level = 0;
        bool dirty = false;
        Fixed weight = 0;
        Cell combined = kNoCell; // neighbors at level <= own level
        Cell dirty_cell = kNoCell;
        Cell cover_cell = kNoCell;
    };

    static double to_double(Fixed x) { return static_cast<double>(static_cast<long double>(x) / static_cast<long double>(kOne)); }
    Cell upper_list(NodeId v, int level);
    Cell find_upper(NodeId v, int level) const;
    void check_pair(NodeId u, NodeId v) const;
    void add_weight(NodeId v, Fixed delta);
    void recover();
    void fix(NodeId v);
    void move_up(NodeId v);
    void move_down(NodeId v);
    void update_status(NodeId v);

    CoverParams params_;
    Fixed alpha_beta_ = 0;
    std::vector<Fixed> scale_;
    std::vector<NodeState> nodes_;
    std::vector<std::vector<Cell>> upper_;
    detail::ListPool lists_;
    detail::ListPool registry_;
    Cell dirty_head_;
    Cell cover_head_;
    std::size_t cover_size_ = 0;
    Fixed total_ = 0;
    std::unordered_map<std::uint64_t, Cell> edges_; // cell holding hi in lo's lists
    WorkLedger ledger_;
    std::uint64_t ops_ = 0;
};

/// Graph plus level partition driven together.
class DynamicVertexCover {
public:
    DynamicVertexCover(std::size_t n, double epsilon) : graph_(n), partition_(n, epsilon) {}

    bool insert_edge(NodeId u, NodeId v);
    bool delete_edge(NodeId u, NodeId v);

    const DynamicGraph& graph() const { return graph_; }
    const LevelPartition& partition() const { return partition_; }
    LevelPartition& partition() { return partition_; }
    AuditReport audit() const { return partition_.audit(graph_); }

private:
    DynamicGraph graph_;
    LevelPartition partition_;
};

} // namespace dynmatch

#endif
