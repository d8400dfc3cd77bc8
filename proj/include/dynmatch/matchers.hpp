#ifndef DYNMATCH_MATCHERS_HPP
#define DYNMATCH_MATCHERS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <dynmatch/degmatch.hpp>
#include <dynmatch/dyngraph.hpp>
#include <dynmatch/kernel.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch {

enum class CostRegime { Amortized, WorstCase };

struct Guarantee {
    double ratio = 0.0;
    CostRegime regime = CostRegime::Amortized;
};

/// Integer cube root: largest c with c^3 <= m.
std::size_t integer_cbrt(std::size_t m);
/// Integer square root: largest c with c^2 <= m.
std::size_t integer_sqrt(std::size_t m);
/// max(1, floor(eps^2 c^2 / 2)).
std::size_t phase_length(double epsilon, std::size_t c);
/// ceil(2m / (eps^2 c^2)): edges copied per update to spread m edges over a phase.
std::size_t catch_up_spread(std::size_t m, std::size_t c, double epsilon);

struct PhaseState {
    std::size_t index = 0;
    std::size_t t = 0;      // updates seen this phase
    std::size_t m = 0;      // edge count at phase start
    std::size_t c = 1;      // max(1, floor(m^(1/3)))
    std::size_t length = 1; // updates per phase
};

/// Matching through a kernel capped at floor(sqrt(n)) friends, kept free of
/// augmenting paths shorter than 5. Amortized cost.
class SqrtNMatcher {
public:
    SqrtNMatcher(std::size_t n, double epsilon, std::span<const EdgeKey> initial = {});

    bool insert_edge(NodeId u, NodeId v);
    bool delete_edge(NodeId u, NodeId v);

    const DynamicGraph& graph() const { return graph_; }
    const Kernel& kernel() const { return kernel_; }
    const ShortPathMatcher& matcher() const { return matcher_; }
    std::size_t matching_size() const { return matcher_.size(); }
    const std::vector<EdgeKey>& current_matching() const { return matcher_.matching().edges(); }
    Guarantee guarantee() const { return {3.0 + 3.0 * epsilon_, CostRegime::Amortized}; }
    double epsilon() const { return epsilon_; }
    std::uint64_t last_update_ops() const { return last_ops_; }
    /// Changes fed to the matcher by the most recent update.
    std::size_t last_matcher_events() const { return last_events_; }

private:
    void finish_update();

    double epsilon_;
    DynamicGraph graph_;
    Kernel kernel_;
    ShortPathMatcher matcher_;
    std::uint64_t last_ops_ = 0;
    std::size_t last_events_ = 0;
};

/// Rebuilds a slack-free kernel of budget m^(1/3) every eps^2 c^2 / 2 updates
/// and maintains a matching free of augmenting paths shorter than 5 on it.
class PhasedMatcher {
public:
    PhasedMatcher(std::size_t n, double epsilon, std::span<const EdgeKey> initial = {});

    bool insert_edge(NodeId u, NodeId v);
    bool delete_edge(NodeId u, NodeId v);

    const DynamicGraph& graph() const { return graph_; }
    const Kernel& kernel() const { return kernel_; }
    const ShortPathMatcher& matcher() const { return matcher_; }
    const PhaseState& phase() const { return phase_; }
    std::size_t matching_size() const { return matcher_.size(); }
    const std::vector<EdgeKey>& current_matching() const { return matcher_.matching().edges(); }
    Guarantee guarantee() const { return {3.0 + 3.0 * epsilon_, CostRegime::Amortized}; }
    double epsilon() const { return epsilon_; }
    std::uint64_t last_update_ops() const { return last_ops_; }
    /// Kernel changes made by incremental updates in the current phase.
    std::uint64_t phase_churn() const { return kernel_.window().churn(); }

private:
    void start_phase();
    void after_update(bool closing, bool inserted, NodeId u, NodeId v);

    double epsilon_;
    DynamicGraph graph_;
    Kernel kernel_;
    ShortPathMatcher matcher_;
    PhaseState phase_;
    std::uint64_t last_ops_ = 0;
};

/**
 * Worst-case variant: a foreground kernel with a maximal matching serves
 * queries while a background copy of the graph, its kernel and matching are
 * rebuilt a few edges per update and swapped in when the phase ends.
 */
class WorstCaseMatcher {
public:
    static constexpr std::uint64_t kBudgetFactor = 64;

    WorstCaseMatcher(std::size_t n, double epsilon, std::span<const EdgeKey> initial = {});

    bool insert_edge(NodeId u, NodeId v);
    bool delete_edge(NodeId u, NodeId v);

    const DynamicGraph& graph() const { return graph_; }
    const Kernel& kernel() const { return front_kernel_; }
    const MaximalMatcher& matcher() const { return front_match_; }
    const DynamicGraph& shadow_graph() const { return shadow_; }
    const Kernel& shadow_kernel() const { return back_kernel_; }
    const MaximalMatcher& shadow_matcher() const { return back_match_; }
    const PhaseState& phase() const { return phase_; }
    std::size_t catch_up_quantum() const { return quantum_; }

    std::size_t matching_size() const { return front_match_.size(); }
    const std::vector<EdgeKey>& current_matching() const { return front_match_.matching().edges(); }
    Guarantee guarantee() const { return {4.0 + 6.0 * epsilon_, CostRegime::WorstCase}; }
    double epsilon() const { return epsilon_; }

    std::uint64_t last_update_ops() const { return last_ops_; }
    /// floor(64 * (c + m / (eps^2 c^2))) for the phase the last update belonged to.
    std::uint64_t last_update_budget() const { return last_budget_; }
    std::size_t swaps() const { return swaps_; }
    /// Called right after each swap, before the next phase begins.
    void set_swap_observer(std::function<void(const WorstCaseMatcher&)> observer) { observer_ = std::move(observer); }

private:
    KernelParams front_params(std::size_t c) const;
    KernelParams back_params(std::size_t c) const;
    void start_phase();
    void update(bool insertion, NodeId u, NodeId v, bool in_shadow);
    void copy_to_shadow(NodeId u, NodeId v);

    double epsilon_;
    DynamicGraph graph_;
    Kernel front_kernel_;
    MaximalMatcher front_match_;
    DynamicGraph shadow_;
    Kernel back_kernel_;
    MaximalMatcher back_match_;
    PhaseState phase_;
    std::size_t quantum_ = 0;
    std::size_t swaps_ = 0;
    std::uint64_t last_ops_ = 0;
    std::uint64_t last_budget_ = 0;
    std::function<void(const WorstCaseMatcher&)> observer_;
};

/// Replays pending kernel changes into a matcher; returns the number replayed.
template <class Matcher>
std::size_t feed_changes(Kernel& kernel, Matcher& matcher) {
    std::vector<ChangeEvent> changes = kernel.take_changes();
    for (const ChangeEvent& ev : changes) {
        if (ev.kind == ChangeEvent::Kind::Insert) {
            matcher.insert_edge(ev.edge.u, ev.edge.v);
        } else {
            matcher.delete_edge(ev.edge.u, ev.edge.v);
        }
    }
    return changes.size();
}

} // namespace dynmatch

#endif
