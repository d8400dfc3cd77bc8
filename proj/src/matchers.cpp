#include <dynmatch/matchers.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynmatch {

std::size_t integer_cbrt(std::size_t m) {
    auto c = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(m))));
    while (c > 0 && c * c * c > m) --c;
    while ((c + 1) * (c + 1) * (c + 1) <= m) ++c;
    return c;
}

std::size_t integer_sqrt(std::size_t m) {
    auto c = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
    while (c > 0 && c * c > m) --c;
    while ((c + 1) * (c + 1) <= m) ++c;
    return c;
}

std::size_t phase_length(double epsilon, std::size_t c) {
    double cr = static_cast<double>(c);
    auto len = static_cast<std::size_t>(std::floor(epsilon * epsilon * cr * cr / 2.0 + 1e-9));
    return std::max<std::size_t>(1, len);
}

std::size_t catch_up_spread(std::size_t m, std::size_t c, double epsilon) {
    const double cr = static_cast<double>(c);
    return static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(m) / (epsilon * epsilon * cr * cr) - 1e-9));
}

namespace {

double checked_epsilon(double epsilon, double upper) {
    if (!(epsilon > 0.0 && epsilon < upper)) throw std::invalid_argument("epsilon out of range");
    return epsilon;
}

// Streams the kernel's pending edges into a fresh matcher, then removes any
// remaining short augmenting path.
void seed_matching(Kernel& kernel, ShortPathMatcher& matcher) {
    matcher.reset();
    feed_changes(kernel, matcher);
    while (auto path = find_augmenting_path(matcher.graph(), matcher.matching(), 3)) matcher.augment(*path);
}

void load_edges(DynamicGraph& g, std::span<const EdgeKey> edges) {
    for (const EdgeKey& e : edges) g.insert_edge(e.u, e.v);
}

} // namespace

SqrtNMatcher::SqrtNMatcher(std::size_t n, double epsilon, std::span<const EdgeKey> initial)
    : epsilon_(checked_epsilon(epsilon, 1.0 / 3.0)),
      graph_(n),
      kernel_(n, KernelParams{std::max<std::size_t>(1, integer_sqrt(n)), epsilon, 0.0, KernelVariant::SqrtCap}),
      matcher_(n) {
    load_edges(graph_, initial);
    kernel_.rebuild(graph_);
    seed_matching(kernel_, matcher_);
    kernel_.take_ops();
    matcher_.take_ops();
}

bool SqrtNMatcher::insert_edge(NodeId u, NodeId v) {
    if (!graph_.insert_edge(u, v)) return false;
    kernel_.handle_insert(graph_, u, v);
    finish_update();
    return true;
}

bool SqrtNMatcher::delete_edge(NodeId u, NodeId v) {
    if (!graph_.delete_edge(u, v)) return false;
    kernel_.handle_delete(graph_, u, v);
    finish_update();
    return true;
}

void SqrtNMatcher::finish_update() {
    last_events_ = feed_changes(kernel_, matcher_);
    last_ops_ = 1 + kernel_.take_ops() + matcher_.take_ops();
}

PhasedMatcher::PhasedMatcher(std::size_t n, double epsilon, std::span<const EdgeKey> initial)
    : epsilon_(checked_epsilon(epsilon, 1.0 / 3.0)),
      graph_(n),
      kernel_(n, KernelParams{1, epsilon, 0.0, KernelVariant::Phase}),
      matcher_(n) {
    load_edges(graph_, initial);
    start_phase();
    kernel_.take_ops();
    matcher_.take_ops();
}

void PhasedMatcher::start_phase() {
    phase_.t = 0;
    phase_.m = graph_.edge_count();
    phase_.c = std::max<std::size_t>(1, integer_cbrt(phase_.m));
    phase_.length = phase_length(epsilon_, phase_.c);
    kernel_.reset(KernelParams{phase_.c, epsilon_, 0.0, KernelVariant::Phase});
    kernel_.rebuild(graph_);
    seed_matching(kernel_, matcher_);
}

bool PhasedMatcher::insert_edge(NodeId u, NodeId v) {
    if (!graph_.insert_edge(u, v)) return false;
    after_update(++phase_.t >= phase_.length, true, u, v);
    return true;
}

bool PhasedMatcher::delete_edge(NodeId u, NodeId v) {
    if (!graph_.delete_edge(u, v)) return false;
    after_update(++phase_.t >= phase_.length, false, u, v);
    return true;
}

// The update that closes a phase is absorbed by the rebuild.
void PhasedMatcher::after_update(bool closing, bool inserted, NodeId u, NodeId v) {
    if (closing) {
        ++phase_.index;
        start_phase();
    } else {
        if (inserted) {
            kernel_.handle_insert(graph_, u, v);
        } else {
            kernel_.handle_delete(graph_, u, v);
        }
        feed_changes(kernel_, matcher_);
    }
    last_ops_ = 1 + kernel_.take_ops() + matcher_.take_ops();
}

WorstCaseMatcher::WorstCaseMatcher(std::size_t n, double epsilon, std::span<const EdgeKey> initial)
    : epsilon_(checked_epsilon(epsilon, 1.0 / 6.0)),
      graph_(n),
      front_kernel_(n, KernelParams{1, epsilon, epsilon, KernelVariant::Epoch}),
      front_match_(n),
      shadow_(n),
      back_kernel_(n, KernelParams{1, 0.0, epsilon, KernelVariant::Epoch}),
      back_match_(n) {
    load_edges(graph_, initial);
    std::size_t c = std::max<std::size_t>(1, integer_cbrt(graph_.edge_count()));
    front_kernel_.reset(front_params(c));
    front_kernel_.rebuild(graph_);
    feed_changes(front_kernel_, front_match_);
    front_kernel_.begin_window();
    start_phase();
    front_kernel_.take_ops();
    front_match_.take_ops();
}

KernelParams WorstCaseMatcher::front_params(std::size_t c) const {
    return KernelParams{c, epsilon_, epsilon_, KernelVariant::Epoch};
}

KernelParams WorstCaseMatcher::back_params(std::size_t c) const {
    return KernelParams{c, 0.0, epsilon_, KernelVariant::Epoch};
}

void WorstCaseMatcher::start_phase() {
    phase_.index = swaps_;
    phase_.t = 0;
    phase_.m = graph_.edge_count();
    phase_.c = std::max<std::size_t>(1, integer_cbrt(phase_.m));
    phase_.length = phase_length(epsilon_, std::min(phase_.c, front_kernel_.params().c));
    quantum_ = 0;
    if (phase_.m > 0) {
        auto cover = (phase_.m + phase_.length - 1) / phase_.length;
        quantum_ = std::max(catch_up_spread(phase_.m, phase_.c, epsilon_), cover);
    }
    graph_.clear_marks();
    shadow_.reset();
    back_kernel_.reset(back_params(phase_.c));
    back_match_.reset();
    back_kernel_.take_ops();
    back_match_.take_ops();
}

bool WorstCaseMatcher::insert_edge(NodeId u, NodeId v) {
    if (!graph_.insert_edge(u, v)) return false;
    update(true, u, v, false);
    return true;
}

bool WorstCaseMatcher::delete_edge(NodeId u, NodeId v) {
    if (!graph_.has_edge(u, v)) return false;
    bool in_shadow = graph_.is_marked(u, v);
    graph_.delete_edge(u, v);
    update(false, u, v, in_shadow);
    return true;
}

void WorstCaseMatcher::copy_to_shadow(NodeId u, NodeId v) {
    graph_.mark(u, v);
    shadow_.insert_edge(u, v);
    back_kernel_.handle_insert(shadow_, u, v);
    feed_changes(back_kernel_, back_match_);
}

// The foreground skips the update that closes a phase: it is replaced right after.
void WorstCaseMatcher::update(bool insertion, NodeId u, NodeId v, bool in_shadow) {
    const bool closing = ++phase_.t >= phase_.length;
    if (!closing) {
        if (insertion) {
            front_kernel_.handle_insert(graph_, u, v);
        } else {
            front_kernel_.handle_delete(graph_, u, v);
        }
        feed_changes(front_kernel_, front_match_);
    }
    if (insertion) {
        copy_to_shadow(u, v);
    } else if (in_shadow) {
        shadow_.delete_edge(u, v);
        back_kernel_.handle_delete(shadow_, u, v);
        feed_changes(back_kernel_, back_match_);
    }
    std::uint64_t copied = 0;
    for (std::size_t i = 0; i < quantum_; ++i) {
        auto e = graph_.first_unmarked();
        if (!e) break;
        copy_to_shadow(e->u, e->v);
        ++copied;
    }
    last_ops_ = 1 + copied + front_kernel_.take_ops() + front_match_.take_ops() + back_kernel_.take_ops() +
                back_match_.take_ops();
    const double c = static_cast<double>(phase_.c);
    const double allowance = static_cast<double>(phase_.m) / (epsilon_ * epsilon_ * c * c);
    last_budget_ = static_cast<std::uint64_t>(std::floor(kBudgetFactor * (c + allowance)));
    if (!closing) return;

    if (graph_.marked_count() != graph_.edge_count() || shadow_.edge_count() != graph_.edge_count()) {
        throw std::logic_error("background copy incomplete at phase end");
    }
    std::swap(front_kernel_, back_kernel_);
    std::swap(front_match_, back_match_);
    ++swaps_;
    front_kernel_.retune(front_params(front_kernel_.params().c));
    if (observer_) observer_(*this);
    start_phase();
}

} // namespace dynmatch
