#include <dynmatch/levelcover.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dynmatch {

namespace {

std::string node_str(NodeId v) { return std::to_string(v); }

} // namespace

CoverParams CoverParams::make(std::size_t n, double epsilon) {
    if (n == 0) throw std::invalid_argument("node count must be positive");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
    CoverParams p;
    p.epsilon = epsilon;
    p.alpha = 1.0 + 3.0 * epsilon;
    p.beta = 1.0 + epsilon;
    long double reach = p.alpha;
    int L = 0;
    while (reach < static_cast<long double>(n)) {
        reach *= p.beta;
        ++L;
    }
    p.top_level = L;
    return p;
}

LevelPartition::LevelPartition(std::size_t n, double epsilon)
    : params_(CoverParams::make(n, epsilon)), nodes_(n), upper_(n) {
    if (n >= kNoNode) throw std::invalid_argument("node count too large");
    alpha_beta_ = static_cast<Fixed>(std::ldexp(static_cast<long double>(params_.alpha_beta()), kFractionBits));
    scale_.resize(params_.top_level + 2);
    scale_[0] = kOne;
    for (std::size_t i = 1; i < scale_.size(); ++i) {
        long double w = std::pow(static_cast<long double>(params_.beta), -static_cast<long double>(i));
        scale_[i] = static_cast<Fixed>(std::llround(std::ldexp(w, kFractionBits)));
    }
    for (auto& s : nodes_) s.combined = lists_.make_list();
    dirty_head_ = registry_.make_list();
    cover_head_ = registry_.make_list();
}

void LevelPartition::check_pair(NodeId u, NodeId v) const {
    if (u >= nodes_.size() || v >= nodes_.size()) throw std::out_of_range("node index out of range");
    if (u == v) throw std::invalid_argument("self-loop");
}

LevelPartition::Cell LevelPartition::upper_list(NodeId v, int level) {
    auto& lists = upper_[v];
    if (lists.empty()) lists.assign(params_.top_level + 1, kNoCell);
    if (lists[level] == kNoCell) lists[level] = lists_.make_list();
    return lists[level];
}

LevelPartition::Cell LevelPartition::find_upper(NodeId v, int level) const {
    const auto& lists = upper_[v];
    return lists.empty() ? kNoCell : lists[level];
}

void LevelPartition::add_weight(NodeId v, Fixed delta) {
    NodeState& s = nodes_[v];
    bool was = s.weight >= kOne;
    s.weight += delta;
    bool now = s.weight >= kOne;
    if (was == now) return;
    if (now) {
        s.cover_cell = registry_.push_back(cover_head_, v);
        ++cover_size_;
    } else {
        registry_.erase(s.cover_cell);
        s.cover_cell = kNoCell;
        --cover_size_;
    }
}

void LevelPartition::handle_insert(NodeId u, NodeId v) {
    check_pair(u, v);
    EdgeKey e = EdgeKey::of(u, v);
    auto [it, fresh] = edges_.try_emplace(e.packed(), kNoCell);
    if (!fresh) throw std::logic_error("edge already tracked by level partition");
    ++ledger_.updates;
    ++ops_;
    int i = nodes_[e.u].level;
    int j = nodes_[e.v].level;
    Cell into_hi = i <= j ? nodes_[e.v].combined : upper_list(e.v, i);
    Cell into_lo = j <= i ? nodes_[e.u].combined : upper_list(e.u, j);
    Cell at_lo = lists_.push_back(into_lo, e.v);
    Cell at_hi = lists_.push_back(into_hi, e.u, at_lo);
    lists_.set_twin(at_lo, at_hi);
    it->second = at_lo;
    Fixed w = scale_[std::max(i, j)];
    add_weight(u, w);
    add_weight(v, w);
    total_ += w;
    update_status(u);
    update_status(v);
    recover();
}

void LevelPartition::handle_delete(NodeId u, NodeId v) {
    check_pair(u, v);
    auto it = edges_.find(EdgeKey::of(u, v).packed());
    if (it == edges_.end()) throw std::logic_error("edge not tracked by level partition");
    ++ledger_.updates;
    ++ops_;
    Cell at_lo = it->second;
    lists_.erase(lists_.twin(at_lo));
    lists_.erase(at_lo);
    edges_.erase(it);
    Fixed w = scale_[std::max(nodes_[u].level, nodes_[v].level)];
    add_weight(u, -w);
    add_weight(v, -w);
    total_ -= w;
    update_status(u);
    update_status(v);
    recover();
}

void LevelPartition::update_status(NodeId v) {
    NodeState& s = nodes_[v];
    bool dirty = s.weight > alpha_beta_ || (s.weight < kOne && s.level > 0);
    if (dirty == s.dirty) return;
    s.dirty = dirty;
    if (dirty) {
        s.dirty_cell = registry_.push_back(dirty_head_, v);
    } else {
        registry_.erase(s.dirty_cell);
        s.dirty_cell = kNoCell;
    }
}

void LevelPartition::recover() {
    const long double allowance = static_cast<long double>(kBudgetFactor) * ledger_.updates *
                                  std::max(params_.top_level, 1) / params_.epsilon;
    while (!registry_.empty(dirty_head_)) {
        fix(registry_.value(registry_.first(dirty_head_)));
        if (static_cast<long double>(ledger_.fix_calls) > allowance) {
            throw std::runtime_error("level partition exceeded its step budget");
        }
    }
}

void LevelPartition::fix(NodeId v) {
    ++ledger_.fix_calls;
    ++ops_;
    const NodeState& s = nodes_[v];
    if (s.weight > alpha_beta_) {
        if (s.level >= params_.top_level) throw std::logic_error("overweight node already at top level");
        move_up(v);
    } else if (s.weight < kOne && s.level > 0) {
        move_down(v);
    } else {
        throw std::logic_error("fix called on clean node " + node_str(v));
    }
}

void LevelPartition::move_up(NodeId v) {
    const int k = nodes_[v].level;
    nodes_[v].level = k + 1;
    const Fixed delta = scale_[k + 1] - scale_[k];
    const Cell head = nodes_[v].combined;
    for (Cell c = lists_.first(head); c != head; c = lists_.next(c)) {
        NodeId u = lists_.value(c);
        lists_.move_back(upper_list(u, k + 1), lists_.twin(c));
        add_weight(u, delta);
        add_weight(v, delta);
        total_ += delta;
        ++ledger_.edge_weight_changes;
        ++ledger_.list_relink_ops;
        ++ops_;
        update_status(u);
    }
    Cell above = find_upper(v, k + 1);
    if (above != kNoCell) {
        lists_.splice_back(head, above);
        ++ledger_.list_relink_ops;
    }
    ++ledger_.level_moves_up;
    update_status(v);
}

void LevelPartition::move_down(NodeId v) {
    const int k = nodes_[v].level;
    nodes_[v].level = k - 1;
    const Fixed delta = scale_[k - 1] - scale_[k];
    const Cell head = nodes_[v].combined;
    Cell c = lists_.first(head);
    while (c != head) {
        Cell next = lists_.next(c);
        NodeId u = lists_.value(c);
        int lu = nodes_[u].level;
        ++ops_;
        if (lu == k) {
            lists_.move_back(upper_list(v, k), c);
            ++ledger_.list_relink_ops;
        } else {
            Cell target = lu == k - 1 ? nodes_[u].combined : upper_list(u, k - 1);
            lists_.move_back(target, lists_.twin(c));
            add_weight(u, delta);
            add_weight(v, delta);
            total_ += delta;
            ++ledger_.edge_weight_changes;
            ++ledger_.list_relink_ops;
            update_status(u);
        }
        c = next;
    }
    ++ledger_.level_moves_down;
    update_status(v);
}

bool LevelPartition::in_cover(NodeId v) const {
    if (!registry_.empty(dirty_head_)) throw std::logic_error("query on non-quiescent partition");
    return nodes_.at(v).weight >= kOne;
}

std::size_t LevelPartition::cover_size() const { return cover_size_; }

std::vector<NodeId> LevelPartition::cover() const {
    std::vector<NodeId> out;
    out.reserve(cover_size_);
    for (Cell c = registry_.first(cover_head_); c != cover_head_; c = registry_.next(c)) {
        out.push_back(registry_.value(c));
    }
    return out;
}

double LevelPartition::fractional_value() const {
    return static_cast<double>(static_cast<long double>(total_) / static_cast<long double>(kOne) /
                               static_cast<long double>(params_.alpha_beta()));
}

std::uint64_t LevelPartition::take_ops() {
    std::uint64_t out = ops_;
    ops_ = 0;
    return out;
}

std::uint64_t LevelPartition::work_budget(std::uint64_t updates) const {
    long double b = static_cast<long double>(kBudgetFactor) * updates * params_.top_level / params_.epsilon;
    return static_cast<std::uint64_t>(std::floor(b));
}

void LevelPartition::corrupt_weight_for_testing(NodeId v, double delta) {
    nodes_.at(v).weight += static_cast<Fixed>(std::ldexp(static_cast<long double>(delta), kFractionBits));
}

AuditReport LevelPartition::audit(const DynamicGraph& g) const {
    AuditReport r;
    const std::size_t n = nodes_.size();
    const int L = params_.top_level;
    if (g.node_count() != n) {
        r.fail("graph node count differs from partition");
        return r;
    }
    if (!registry_.empty(dirty_head_)) r.fail("dirty list not empty at quiescence");
    if (edges_.size() != g.edge_count()) r.fail("tracked edge count differs from graph");

    Fixed total = 0;
    std::size_t cover_count = 0;
    std::vector<std::uint32_t> bucket(L + 1);
    const long double beta = params_.beta;
    std::vector<long double> power(L + 2); // beta^-i
    power[0] = 1;
    for (int i = 1; i <= L + 1; ++i) power[i] = power[i - 1] / beta;
    for (NodeId v = 0; v < n; ++v) {
        const NodeState& s = nodes_[v];
        auto who = [v] { return "node " + node_str(v); };
        if (s.level < 0 || s.level > L) {
            r.fail(who() + ": level out of range");
            continue;
        }
        std::fill(bucket.begin(), bucket.end(), 0);
        Fixed recomputed = 0;
        long double recomputed_real = 0;
        std::size_t listed = 0;
        auto visit = [&](Cell c, int expected_level, bool combined) {
            NodeId u = lists_.value(c);
            ++listed;
            if (u >= n || !g.has_edge(u, v)) {
                r.fail(who() + ": lists hold non-neighbor " + node_str(u));
                return;
            }
            Cell tw = lists_.twin(c);
            if (lists_.twin(tw) != c || lists_.value(tw) != v) r.fail(who() + ": broken twin handle");
            int lu = nodes_[u].level;
            if (combined ? lu > s.level : lu != expected_level) {
                r.fail(who() + ": neighbor " + node_str(u) + " filed under the wrong level");
            }
            int k = std::max(lu, s.level);
            recomputed += scale_[k];
            recomputed_real += power[k];
            ++bucket[lu];
        };
        for (Cell c = lists_.first(s.combined); c != s.combined; c = lists_.next(c)) visit(c, s.level, true);
        for (int i = 0; i <= L && !upper_[v].empty(); ++i) {
            Cell head = upper_[v][i];
            if (head == kNoCell) continue;
            if (i <= s.level && !lists_.empty(head)) r.fail(who() + ": non-empty list at or below own level");
            if (i > s.level) {
                for (Cell c = lists_.first(head); c != head; c = lists_.next(c)) visit(c, i, false);
            }
        }
        if (listed != g.degree(v)) r.fail(who() + ": list sizes differ from degree");
        if (recomputed != s.weight) r.fail(who() + ": weight-mismatch against fixed-point recomputation");
        long double maintained = static_cast<long double>(s.weight) / static_cast<long double>(kOne);
        if (std::fabs(maintained - recomputed_real) > 1e-9L * std::max<long double>(1, recomputed_real)) {
            r.fail(who() + ": weight-mismatch against real recomputation");
        }
        total += recomputed;

        bool dirty = s.weight > alpha_beta_ || (s.weight < kOne && s.level > 0);
        if (dirty) r.fail(who() + ": violates the level weight invariant");
        if (s.dirty != dirty) r.fail(who() + ": stale status bit");
        if (s.weight < 0) r.fail(who() + ": negative weight");

        bool covered = s.weight >= kOne;
        if (covered) ++cover_count;
        if (covered != (s.cover_cell != kNoCell)) r.fail(who() + ": cover registry out of sync");

        // Hypothetical weights W_v(i) for every level i, from level buckets.
        std::vector<long double> hyp(L + 1);
        std::uint64_t at_or_below = 0;
        long double strictly_above = 0;
        for (int lvl = 0; lvl <= L; ++lvl) strictly_above += bucket[lvl] * power[lvl];
        for (int i = 0; i <= L; ++i) {
            at_or_below += bucket[i];
            strictly_above -= bucket[i] * power[i];
            hyp[i] = at_or_below * power[i] + std::max<long double>(strictly_above, 0);
        }
        const long double tol = 1e-9L;
        if (hyp[L] > params_.alpha * (1 + tol)) r.fail(who() + ": top-level weight exceeds alpha");
        for (int i = 0; i < L; ++i) {
            if (hyp[i + 1] > hyp[i] * (1 + tol)) r.fail(who() + ": hypothetical weights not monotone");
            if (hyp[i] > beta * hyp[i + 1] * (1 + tol)) r.fail(who() + ": hypothetical weight drops faster than beta");
        }
        std::uint64_t low = 0;
        for (int i = 0; i <= s.level; ++i) low += bucket[i];
        if (static_cast<long double>(low) >
            params_.alpha / power[s.level + 1] * (1 + tol)) {
            r.fail(who() + ": too many neighbors at or below own level");
        }
        if (s.weight > alpha_beta_) r.fail(who() + ": fractional matching overloaded");
    }
    if (total != 2 * total_) r.fail("running edge-weight total differs from recomputation");
    if (cover_count != cover_size_) r.fail("cover counter differs from registry");
    for (const EdgeKey& e : g.edges()) {
        if (nodes_[e.u].weight < kOne && nodes_[e.v].weight < kOne) {
            r.fail("edge " + node_str(e.u) + "-" + node_str(e.v) + " is uncovered");
            break;
        }
    }
    if (!certificate_holds()) r.fail("cover exceeds twice alpha*beta times the fractional value");
    return r;
}

bool DynamicVertexCover::insert_edge(NodeId u, NodeId v) {
    if (!graph_.insert_edge(u, v)) return false;
    partition_.handle_insert(u, v);
    return true;
}

bool DynamicVertexCover::delete_edge(NodeId u, NodeId v) {
    if (!graph_.delete_edge(u, v)) return false;
    partition_.handle_delete(u, v);
    return true;
}

} // namespace dynmatch
