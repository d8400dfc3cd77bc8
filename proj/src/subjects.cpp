#include <dynmatch/bench.hpp>

#include <cmath>
#include <string>

#include <dynmatch/degmatch.hpp>
#include <dynmatch/kernel.hpp>
#include <dynmatch/levelcover.hpp>
#include <dynmatch/matchers.hpp>
#include <dynmatch/oracle.hpp>

namespace dynmatch::bench {

namespace {

void require(bool applied) {
    if (!applied) throw std::invalid_argument("update is not replay-valid");
}

template <class Matcher>
void apply_to(Matcher& m, const Update& u) {
    require(u.op == Op::Insert ? m.insert_edge(u.u, u.v) : m.delete_edge(u.u, u.v));
}

// The mirror graph inside a matcher must hold exactly the kernel edges.
AuditReport check_mirror(const Kernel& k, const DynamicGraph& mirror) {
    AuditReport r;
    if (mirror.edge_count() != k.edge_count()) r.fail("matcher graph and kernel differ in size");
    for (const EdgeKey& e : k.friends().edges()) {
        if (!mirror.has_edge(e.u, e.v)) {
            r.fail("kernel edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " missing from matcher");
            break;
        }
    }
    return r;
}

AuditReport check_short_paths(const DynamicGraph& mirror, const MatchState& m, std::size_t max_length) {
    AuditReport r;
    if (auto path = find_augmenting_path(mirror, m, max_length)) {
        r.fail("augmenting path of length " + std::to_string(path->size() - 1) + " starting at " +
               std::to_string(path->front()));
    }
    return r;
}

AuditReport check_refills(const Kernel& k, double share) {
    AuditReport r;
    double allowed = share * static_cast<double>(k.params().c);
    if (static_cast<double>(k.window().refills) > allowed + 1e-9) {
        r.fail("refill count " + std::to_string(k.window().refills) + " exceeds its window allowance");
    }
    return r;
}

std::pair<std::size_t, double> compare_matching(const DynamicGraph& g, std::size_t size, double bound,
                                                AuditReport& report) {
    std::size_t best = oracle::max_matching_exact(g).value;
    double ratio = size == 0 ? (best == 0 ? 1.0 : INFINITY) : static_cast<double>(best) / static_cast<double>(size);
    if (static_cast<long double>(best) > static_cast<long double>(bound) * size) {
        report.fail("maximum matching " + std::to_string(best) + " exceeds the guaranteed multiple of " +
                    std::to_string(size));
    }
    return {best, ratio};
}

// Tight node closest to losing its status, ties broken by salt.
std::optional<EdgeKey> tight_pressure(const Kernel& k, const MatchState& m, std::uint64_t salt) {
    const std::size_t n = k.node_count();
    NodeId pick = kNoNode;
    std::size_t fewest = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
        NodeId v = static_cast<NodeId>((i + salt) % n);
        if (!k.is_tight(v) || k.friend_count(v) == 0) continue;
        if (k.friend_count(v) < fewest) {
            fewest = k.friend_count(v);
            pick = v;
        }
    }
    if (pick == kNoNode) return std::nullopt;
    NodeId mate = m.mate(pick);
    if (mate != kNoNode && k.is_friend(pick, mate)) return EdgeKey::of(pick, mate);
    return EdgeKey::of(pick, *k.friends().neighbors(pick).begin());
}

class CoverSubject final : public Subject {
public:
    CoverSubject(std::size_t n, double eps) : cover_(n, eps) {}

    void apply(const Update& u) override {
        require(u.op == Op::Insert ? cover_.insert_edge(u.u, u.v) : cover_.delete_edge(u.u, u.v));
        last_ops_ = cover_.partition().take_ops();
        const auto& p = cover_.partition();
        if (p.ledger().edge_weight_changes > p.work_budget(p.ledger().updates) && !work_violation_) {
            work_violation_ = "weight changes exceeded their budget after update " + std::to_string(p.ledger().updates);
        }
    }
    const DynamicGraph& graph() const override { return cover_.graph(); }
    std::size_t size() const override { return cover_.partition().cover_size(); }
    std::optional<double> fractional_value() const override { return cover_.partition().fractional_value(); }
    LedgerSnapshot ledger() const override {
        const auto& l = cover_.partition().ledger();
        return {l.edge_weight_changes, l.level_moves(), 0, 0};
    }
    std::uint64_t last_ops() const override { return last_ops_; }
    AuditReport audit() const override {
        AuditReport r = cover_.audit();
        if (work_violation_) r.fail(*work_violation_);
        return r;
    }
    std::pair<std::size_t, double> sample_oracle(AuditReport& report) const override {
        std::size_t best = oracle::min_vertex_cover_exact(graph()).value;
        std::size_t have = size();
        const auto& p = cover_.partition().params();
        double ratio = best == 0 ? (have == 0 ? 1.0 : INFINITY) : static_cast<double>(have) / static_cast<double>(best);
        if (static_cast<long double>(have) > 2.0L * p.alpha * p.beta * best) {
            report.fail("cover " + std::to_string(have) + " exceeds the guaranteed multiple of " + std::to_string(best));
        }
        return {best, ratio};
    }
    std::optional<EdgeKey> pressure_edge(std::uint64_t salt) const override {
        const auto& p = cover_.partition();
        const auto& g = cover_.graph();
        NodeId pick = kNoNode;
        double lightest = INFINITY;
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            NodeId v = static_cast<NodeId>((i + salt) % g.node_count());
            if (p.level(v) == 0 || g.degree(v) == 0) continue;
            if (p.weight(v) < lightest) {
                lightest = p.weight(v);
                pick = v;
            }
        }
        if (pick == kNoNode) return std::nullopt;
        return EdgeKey::of(pick, *g.neighbors(pick).begin());
    }

private:
    DynamicVertexCover cover_;
    std::uint64_t last_ops_ = 0;
    std::optional<std::string> work_violation_;
};

class SqrtNSubject final : public Subject {
public:
    SqrtNSubject(std::size_t n, double eps) : m_(n, eps) {}

    void apply(const Update& u) override { apply_to(m_, u); }
    const DynamicGraph& graph() const override { return m_.graph(); }
    std::size_t size() const override { return m_.matching_size(); }
    LedgerSnapshot ledger() const override {
        const auto& c = m_.kernel().counters();
        return {0, 0, c.refills, c.churn()};
    }
    std::uint64_t last_ops() const override { return m_.last_update_ops(); }
    AuditReport audit() const override {
        AuditReport r = audit_kernel(m_.kernel(), m_.graph(), m_.epsilon());
        const auto& mirror = m_.matcher().graph();
        r.merge(check_mirror(m_.kernel(), mirror));
        r.merge(m_.matcher().matching().check(mirror));
        r.merge(m_.matcher().check_free_index());
        r.merge(check_short_paths(mirror, m_.matcher().matching(), 3));
        return r;
    }
    std::pair<std::size_t, double> sample_oracle(AuditReport& report) const override {
        return compare_matching(graph(), size(), m_.guarantee().ratio, report);
    }
    std::optional<EdgeKey> pressure_edge(std::uint64_t salt) const override {
        return tight_pressure(m_.kernel(), m_.matcher().matching(), salt);
    }

private:
    SqrtNMatcher m_;
};

class PhasedSubject final : public Subject {
public:
    PhasedSubject(std::size_t n, double eps) : m_(n, eps) {}

    void apply(const Update& u) override { apply_to(m_, u); }
    const DynamicGraph& graph() const override { return m_.graph(); }
    std::size_t size() const override { return m_.matching_size(); }
    LedgerSnapshot ledger() const override {
        const auto& c = m_.kernel().counters();
        return {0, 0, c.refills, c.churn()};
    }
    std::uint64_t last_ops() const override { return m_.last_update_ops(); }
    AuditReport audit() const override {
        AuditReport r = audit_kernel(m_.kernel(), m_.graph(), m_.epsilon());
        const auto& mirror = m_.matcher().graph();
        r.merge(check_mirror(m_.kernel(), mirror));
        r.merge(m_.matcher().matching().check(mirror));
        r.merge(m_.matcher().check_free_index());
        r.merge(check_short_paths(mirror, m_.matcher().matching(), 3));
        r.merge(check_refills(m_.kernel(), m_.epsilon()));
        const double ec = m_.epsilon() * static_cast<double>(m_.phase().c);
        if (static_cast<double>(m_.phase_churn()) > 4.0 * ec * ec + 1e-9) r.fail("kernel churn exceeds the phase allowance");
        return r;
    }
    std::pair<std::size_t, double> sample_oracle(AuditReport& report) const override {
        return compare_matching(graph(), size(), m_.guarantee().ratio, report);
    }
    std::optional<EdgeKey> pressure_edge(std::uint64_t salt) const override {
        return tight_pressure(m_.kernel(), m_.matcher().matching(), salt);
    }

private:
    PhasedMatcher m_;
};

class WorstCaseSubject final : public Subject {
public:
    WorstCaseSubject(std::size_t n, double eps) : m_(n, eps) {}

    void apply(const Update& u) override {
        apply_to(m_, u);
        if (m_.last_update_ops() > m_.last_update_budget() && !budget_violation_) {
            budget_violation_ = "update cost " + std::to_string(m_.last_update_ops()) + " exceeds budget " +
                                std::to_string(m_.last_update_budget());
        }
    }
    const DynamicGraph& graph() const override { return m_.graph(); }
    std::size_t size() const override { return m_.matching_size(); }
    LedgerSnapshot ledger() const override {
        const auto& a = m_.kernel().counters();
        const auto& b = m_.shadow_kernel().counters();
        return {0, 0, a.refills + b.refills, a.churn() + b.churn()};
    }
    std::uint64_t last_ops() const override { return m_.last_update_ops(); }
    AuditReport audit() const override {
        const double eps = m_.epsilon();
        AuditReport r = audit_kernel(m_.kernel(), m_.graph(), 2 * eps);
        r.merge(check_mirror(m_.kernel(), m_.matcher().graph()));
        r.merge(m_.matcher().matching().check(m_.matcher().graph()));
        r.merge(check_short_paths(m_.matcher().graph(), m_.matcher().matching(), 1));
        r.merge(check_refills(m_.kernel(), eps));
        r.merge(audit_kernel(m_.shadow_kernel(), m_.shadow_graph(), eps));
        r.merge(check_mirror(m_.shadow_kernel(), m_.shadow_matcher().graph()));
        r.merge(m_.shadow_matcher().matching().check(m_.shadow_matcher().graph()));
        r.merge(check_short_paths(m_.shadow_matcher().graph(), m_.shadow_matcher().matching(), 1));
        r.merge(check_refills(m_.shadow_kernel(), eps));
        const auto& g = m_.graph();
        const auto& shadow = m_.shadow_graph();
        if (g.marked_count() != shadow.edge_count()) r.fail("copied-edge marks differ from the shadow graph");
        for (const EdgeKey& e : shadow.edges()) {
            if (!g.has_edge(e.u, e.v) || !g.is_marked(e.u, e.v)) {
                r.fail("shadow edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not a copied graph edge");
                break;
            }
        }
        if (budget_violation_) r.fail(*budget_violation_);
        return r;
    }
    std::pair<std::size_t, double> sample_oracle(AuditReport& report) const override {
        return compare_matching(graph(), size(), m_.guarantee().ratio, report);
    }
    std::optional<EdgeKey> pressure_edge(std::uint64_t salt) const override {
        return tight_pressure(m_.kernel(), m_.matcher().matching(), salt);
    }

private:
    WorstCaseMatcher m_;
    std::optional<std::string> budget_violation_;
};

} // namespace

std::unique_ptr<Subject> make_subject(Algorithm algorithm, std::size_t n, double epsilon) {
    switch (algorithm) {
    case Algorithm::Cover: return std::make_unique<CoverSubject>(n, epsilon);
    case Algorithm::SqrtN: return std::make_unique<SqrtNSubject>(n, epsilon);
    case Algorithm::Phased: return std::make_unique<PhasedSubject>(n, epsilon);
    case Algorithm::WorstCase: return std::make_unique<WorstCaseSubject>(n, epsilon);
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace dynmatch::bench
