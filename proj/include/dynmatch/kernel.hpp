#ifndef DYNMATCH_KERNEL_HPP
#define DYNMATCH_KERNEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <dynmatch/detail/arena.hpp>
#include <dynmatch/dyngraph.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch {

enum class KernelVariant { SqrtCap, Phase, Epoch };

struct KernelParams {
    std::size_t c = 1;    // degree budget
    double epsilon = 0.0; // slack of the kernel at window start
    double lambda = 0.0;  // extra slack accrued over an epoch
    KernelVariant variant = KernelVariant::Phase;

    /// Slack the kernel invariants hold with inside one window.
    double effective_slack() const;
    /// Updates (Phase) or deletions (Epoch) allowed in one window.
    std::size_t window_budget() const;
    void validate() const;
};

struct ChangeEvent {
    enum class Kind : std::uint8_t { Insert, Erase };
    Kind kind = Kind::Insert;
    EdgeKey edge;

    friend bool operator==(const ChangeEvent&, const ChangeEvent&) = default;
};

struct KernelCounters {
    std::uint64_t updates = 0;
    std::uint64_t refills = 0;
    std::uint64_t kernel_inserts = 0;
    std::uint64_t kernel_deletes = 0;

    std::uint64_t churn() const { return kernel_inserts + kernel_deletes; }
};

/**
 * Bounded-degree subgraph ("kernel") of a host graph. Each node is tight or
 * slack; kernel neighbors are called friends. With slack e and budget c:
 * every node has at most (1+e)c friends, tight nodes have at least (1-e)c,
 * and any host edge joining two slack nodes is in the kernel.
 *
 * Updates take the host graph already reflecting the change. Kernel edge
 * changes are queued for a downstream matcher.
 */
class Kernel {
public:
    Kernel(std::size_t n, KernelParams params);

    const KernelParams& params() const { return params_; }
    std::size_t node_count() const { return friends_.node_count(); }

    /// Clears everything in O(1) and adopts new parameters.
    void reset(KernelParams params);
    /// Replaces parameters, keeping the current kernel, and opens a new window.
    void retune(KernelParams params);
    /// Greedy single pass over the host edges; yields slack 0.
    void rebuild(const DynamicGraph& host);
    /// Kernel with explicit edges and tight set, for fixtures.
    static Kernel from_edges(const DynamicGraph& host, KernelParams params, std::span<const EdgeKey> edges,
                             std::span<const NodeId> tight);

    void handle_insert(const DynamicGraph& host, NodeId u, NodeId v);
    void handle_delete(const DynamicGraph& host, NodeId u, NodeId v);

    bool is_tight(NodeId v) const { return tight_.get(v) != 0; }
    std::size_t friend_count(NodeId v) const { return friends_.degree(v); }
    bool is_friend(NodeId u, NodeId v) const { return friends_.has_edge(u, v); }
    std::size_t edge_count() const { return friends_.edge_count(); }
    /// The kernel as a graph of friendships.
    const DynamicGraph& friends() const { return friends_; }

    std::vector<ChangeEvent> take_changes();
    /// Records every change from now on, seeded with the current edges.
    void keep_history(bool on);
    bool keeps_history() const { return keep_history_; }
    const std::vector<ChangeEvent>& history() const { return history_; }

    const KernelCounters& counters() const { return total_; }
    const KernelCounters& window() const { return window_; }
    std::uint64_t window_deletions() const { return window_deletions_; }
    void begin_window();
    std::uint64_t take_ops();

    void set_type_for_testing(NodeId v, bool tight) { tight_.at(v) = tight ? 1 : 0; }

private:
    void befriend(NodeId u, NodeId v, bool counted = true);
    void unfriend(NodeId u, NodeId v);
    void promote(NodeId v) { tight_.at(v) = 1; }
    void demote(NodeId v) { tight_.at(v) = 0; }
    // Scans u's host neighbors in list order until u has `target` friends.
    void refill(const DynamicGraph& host, NodeId u, double target, bool respect_cap);
    void after_delete(const DynamicGraph& host, NodeId u);
    void count_update(bool deletion);

    KernelParams params_;
    DynamicGraph friends_;
    detail::StampedArray<std::uint8_t> tight_;
    std::vector<ChangeEvent> pending_;
    std::vector<ChangeEvent> history_;
    bool keep_history_ = false;
    KernelCounters total_;
    KernelCounters window_;
    std::uint64_t window_deletions_ = 0;
    std::uint64_t ops_ = 0;
};

/// Checks the kernel invariants with slack `slack`, plus bookkeeping
/// consistency, containment in the host and change-log replay.
AuditReport audit_kernel(const Kernel& k, const DynamicGraph& host, double slack);

} // namespace dynmatch

#endif
