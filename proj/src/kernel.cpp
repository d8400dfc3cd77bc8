#include <dynmatch/kernel.hpp>

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace dynmatch {

double KernelParams::effective_slack() const {
    return variant == KernelVariant::Epoch ? epsilon + lambda : epsilon;
}

std::size_t KernelParams::window_budget() const {
    double share = variant == KernelVariant::Epoch ? lambda : epsilon;
    double c_real = static_cast<double>(c);
    return static_cast<std::size_t>(std::floor(share * share * c_real * c_real / 2.0 + 1e-9));
}

void KernelParams::validate() const {
    if (c < 1) throw std::invalid_argument("degree budget must be at least 1");
    if (!(epsilon >= 0.0) || !(lambda >= 0.0)) throw std::invalid_argument("slack parameters must be non-negative");
    switch (variant) {
    case KernelVariant::SqrtCap:
    case KernelVariant::Phase:
        if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0)) throw std::invalid_argument("epsilon must lie in (0, 1/3)");
        break;
    case KernelVariant::Epoch:
        if (!(epsilon + lambda < 1.0 / 3.0)) throw std::invalid_argument("epsilon + lambda must be below 1/3");
        break;
    }
}

Kernel::Kernel(std::size_t n, KernelParams params) : params_(params), friends_(n), tight_(n, 0) {
    params_.validate();
}

void Kernel::reset(KernelParams params) {
    params.validate();
    params_ = params;
    friends_.reset();
    tight_.reset();
    pending_.clear();
    history_.clear();
    begin_window();
}

void Kernel::retune(KernelParams params) {
    params.validate();
    params_ = params;
    begin_window();
}

void Kernel::begin_window() {
    window_ = KernelCounters{};
    window_deletions_ = 0;
}

void Kernel::befriend(NodeId u, NodeId v, bool counted) {
    friends_.insert_edge(u, v);
    ChangeEvent ev{ChangeEvent::Kind::Insert, EdgeKey::of(u, v)};
    pending_.push_back(ev);
    if (keep_history_) history_.push_back(ev);
    ++ops_;
    if (!counted) return;
    ++total_.kernel_inserts;
    ++window_.kernel_inserts;
}

void Kernel::unfriend(NodeId u, NodeId v) {
    friends_.delete_edge(u, v);
    ChangeEvent ev{ChangeEvent::Kind::Erase, EdgeKey::of(u, v)};
    pending_.push_back(ev);
    if (keep_history_) history_.push_back(ev);
    ++total_.kernel_deletes;
    ++window_.kernel_deletes;
    ++ops_;
}

void Kernel::rebuild(const DynamicGraph& host) {
    reset(params_);
    const std::size_t c = params_.c;
    for (const EdgeKey& e : host.edges()) {
        ++ops_;
        if (friends_.degree(e.u) < c && friends_.degree(e.v) < c) {
            befriend(e.u, e.v, false);
            if (friends_.degree(e.u) == c) promote(e.u);
            if (friends_.degree(e.v) == c) promote(e.v);
        }
    }
}

Kernel Kernel::from_edges(const DynamicGraph& host, KernelParams params, std::span<const EdgeKey> edges,
                          std::span<const NodeId> tight) {
    Kernel k(host.node_count(), KernelParams{params.c, 0.0, 0.0, KernelVariant::Epoch});
    k.params_ = params;
    for (const EdgeKey& e : edges) {
        if (!host.has_edge(e.u, e.v)) throw std::invalid_argument("kernel edge missing from host");
        k.befriend(e.u, e.v, false);
    }
    for (NodeId v : tight) k.promote(v);
    return k;
}

void Kernel::count_update(bool deletion) {
    ++total_.updates;
    ++window_.updates;
    ++ops_;
    if (deletion) ++window_deletions_;
    if (params_.variant == KernelVariant::Phase && window_.updates > params_.window_budget()) {
        throw std::logic_error("phase update budget exceeded");
    }
    if (params_.variant == KernelVariant::Epoch && window_deletions_ > params_.window_budget()) {
        throw std::logic_error("epoch deletion budget exceeded");
    }
}

void Kernel::handle_insert(const DynamicGraph& host, NodeId u, NodeId v) {
    if (!host.has_edge(u, v)) throw std::logic_error("inserted edge missing from host");
    count_update(false);
    const double c = static_cast<double>(params_.c);
    switch (params_.variant) {
    case KernelVariant::SqrtCap: {
        if (friends_.degree(u) >= params_.c || friends_.degree(v) >= params_.c) return;
        befriend(u, v);
        if (friends_.degree(u) == params_.c) promote(u);
        if (friends_.degree(v) == params_.c) promote(v);
        return;
    }
    case KernelVariant::Phase:
    case KernelVariant::Epoch: {
        if (is_tight(u) || is_tight(v)) return;
        const double promote_at = params_.variant == KernelVariant::Phase ? c : (1.0 - params_.epsilon) * c;
        bool full_u = static_cast<double>(friends_.degree(u)) >= promote_at;
        bool full_v = static_cast<double>(friends_.degree(v)) >= promote_at;
        if (full_u || full_v) {
            if (full_u) promote(u);
            if (full_v) promote(v);
            return;
        }
        befriend(u, v);
        return;
    }
    }
}

void Kernel::handle_delete(const DynamicGraph& host, NodeId u, NodeId v) {
    if (host.has_edge(u, v)) throw std::logic_error("deleted edge still present in host");
    count_update(true);
    if (friends_.has_edge(u, v)) unfriend(u, v);
    after_delete(host, u);
    after_delete(host, v);
}

void Kernel::after_delete(const DynamicGraph& host, NodeId u) {
    if (!is_tight(u)) return;
    const double c = static_cast<double>(params_.c);
    const double have = static_cast<double>(friends_.degree(u));
    switch (params_.variant) {
    case KernelVariant::SqrtCap:
        if (have < (1.0 - params_.epsilon) * c) refill(host, u, c, true);
        return;
    case KernelVariant::Phase:
        if (have < (1.0 - params_.epsilon) * c) refill(host, u, c, false);
        return;
    case KernelVariant::Epoch:
        if (have < (1.0 - params_.lambda - params_.epsilon) * c) refill(host, u, (1.0 - params_.epsilon) * c, false);
        return;
    }
}

void Kernel::refill(const DynamicGraph& host, NodeId u, double target, bool respect_cap) {
    ++total_.refills;
    ++window_.refills;
    ++ops_;
    const std::size_t cap = params_.c;
    for (NodeId x : host.neighbors(u)) {
        if (static_cast<double>(friends_.degree(u)) >= target) break;
        ++ops_;
        if (friends_.has_edge(u, x)) continue;
        if (respect_cap && friends_.degree(x) >= cap) continue;
        befriend(u, x);
        if (respect_cap && friends_.degree(x) == cap) promote(x);
    }
    if (static_cast<double>(friends_.degree(u)) < target) demote(u);
}

std::vector<ChangeEvent> Kernel::take_changes() {
    std::vector<ChangeEvent> out;
    out.swap(pending_);
    return out;
}

void Kernel::keep_history(bool on) {
    keep_history_ = on;
    history_.clear();
    if (!on) return;
    for (const EdgeKey& e : friends_.edges()) history_.push_back({ChangeEvent::Kind::Insert, e});
}

std::uint64_t Kernel::take_ops() {
    std::uint64_t out = ops_;
    ops_ = 0;
    return out;
}

AuditReport audit_kernel(const Kernel& k, const DynamicGraph& host, double slack) {
    AuditReport r;
    const DynamicGraph& f = k.friends();
    r.merge(f.self_check());
    const double c = static_cast<double>(k.params().c);
    const double tol = 1e-9 * std::max(1.0, c);
    const bool capped = k.params().variant == KernelVariant::SqrtCap;
    for (const EdgeKey& e : f.edges()) {
        if (!host.has_edge(e.u, e.v)) {
            r.fail("kernel edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " missing from host");
        }
    }
    for (NodeId v = 0; v < f.node_count(); ++v) {
        const double have = static_cast<double>(f.degree(v));
        const std::string who = "node " + std::to_string(v);
        if (have > (1.0 + slack) * c + tol) r.fail(who + ": too many friends");
        if (k.is_tight(v) && have < (1.0 - slack) * c - tol) r.fail(who + ": tight with too few friends");
        if (capped && f.degree(v) > k.params().c) r.fail(who + ": exceeds the hard friend cap");
        if (capped && f.degree(v) == k.params().c && !k.is_tight(v)) r.fail(who + ": full but not tight");
    }
    for (const EdgeKey& e : host.edges()) {
        if (!k.is_tight(e.u) && !k.is_tight(e.v) && !f.has_edge(e.u, e.v)) {
            r.fail("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " joins two slack nodes outside the kernel");
            break;
        }
    }
    if (k.keeps_history()) {
        std::set<EdgeKey> replay;
        for (const ChangeEvent& ev : k.history()) {
            if (ev.kind == ChangeEvent::Kind::Insert) {
                if (!replay.insert(ev.edge).second) r.fail("change log inserts an edge twice");
            } else if (replay.erase(ev.edge) == 0) {
                r.fail("change log erases an absent edge");
            }
        }
        std::set<EdgeKey> actual(f.edges().begin(), f.edges().end());
        if (replay != actual) r.fail("change log replay differs from kernel edges");
    }
    return r;
}

} // namespace dynmatch
