#include <dynmatch/degmatch.hpp>

#include <set>
#include <stdexcept>
#include <string>

namespace dynmatch {

MatchState::MatchState(std::size_t n) : mate_(n, kNoNode), pos_(n, 0) {}

void MatchState::match(NodeId u, NodeId v) {
    if (mate_.get(u) != kNoNode || mate_.get(v) != kNoNode) throw std::logic_error("matching an already matched node");
    mate_.at(u) = v;
    mate_.at(v) = u;
    EdgeKey e = EdgeKey::of(u, v);
    pos_.at(e.u) = static_cast<std::uint32_t>(list_.size());
    list_.push_back(e);
}

void MatchState::unmatch(NodeId u, NodeId v) {
    if (mate_.get(u) != v) throw std::logic_error("unmatching an edge that is not matched");
    mate_.at(u) = kNoNode;
    mate_.at(v) = kNoNode;
    EdgeKey e = EdgeKey::of(u, v);
    std::uint32_t p = pos_.get(e.u);
    EdgeKey last = list_.back();
    list_[p] = last;
    pos_.at(last.u) = p;
    list_.pop_back();
}

void MatchState::reset() {
    mate_.reset();
    pos_.reset();
    list_.clear();
}

AuditReport MatchState::check(const DynamicGraph& host) const {
    AuditReport r;
    std::size_t matched_nodes = 0;
    for (NodeId v = 0; v < mate_.size(); ++v) {
        NodeId m = mate_.get(v);
        if (m == kNoNode) continue;
        ++matched_nodes;
        if (m >= mate_.size() || mate_.get(m) != v) r.fail("mate array not symmetric at " + std::to_string(v));
    }
    if (matched_nodes != 2 * list_.size()) r.fail("matched edge list size differs from mate array");
    for (std::size_t i = 0; i < list_.size(); ++i) {
        const EdgeKey& e = list_[i];
        if (mate_.get(e.u) != e.v || pos_.get(e.u) != i) r.fail("matched edge list out of sync");
        if (!host.has_edge(e.u, e.v)) {
            r.fail("matched edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " missing from host");
        }
    }
    return r;
}

void MaximalMatcher::insert_edge(NodeId u, NodeId v) {
    if (!graph_.insert_edge(u, v)) throw std::logic_error("duplicate edge fed to matcher");
    ++ops_;
    if (state_.is_free(u) && state_.is_free(v)) state_.match(u, v);
}

void MaximalMatcher::delete_edge(NodeId u, NodeId v) {
    bool was_matched = state_.is_matched_edge(u, v);
    if (!graph_.delete_edge(u, v)) throw std::logic_error("missing edge removed from matcher");
    ++ops_;
    if (!was_matched) return;
    state_.unmatch(u, v);
    rematch(u);
    rematch(v);
}

void MaximalMatcher::rematch(NodeId u) {
    if (!state_.is_free(u)) return;
    for (NodeId x : graph_.neighbors(u)) {
        ++ops_;
        if (state_.is_free(x)) {
            state_.match(u, x);
            return;
        }
    }
}

void MaximalMatcher::reset() {
    graph_.reset();
    state_.reset();
}

std::uint64_t MaximalMatcher::take_ops() {
    std::uint64_t out = ops_;
    ops_ = 0;
    return out;
}

ShortPathMatcher::ShortPathMatcher(std::size_t n) : graph_(n), state_(n), heads_(n, kNoCell) {}

ShortPathMatcher::Cell ShortPathMatcher::head(NodeId v) {
    Cell& h = heads_.at(v);
    if (h == kNoCell) h = free_lists_.make_list();
    return h;
}

ShortPathMatcher::Cell& ShortPathMatcher::slot(Cell adjacency_cell) {
    if (adjacency_cell >= slots_.size()) slots_.resize(std::max<std::size_t>(adjacency_cell + 1, 2 * slots_.size()));
    Slot& s = slots_[adjacency_cell];
    if (s.gen != gen_) s = Slot{kNoCell, gen_};
    return s.cell;
}

// `adjacency_cell` holds `who` inside `owner`'s adjacency list.
void ShortPathMatcher::file_free(Cell adjacency_cell, NodeId owner, NodeId who) {
    Cell& s = slot(adjacency_cell);
    if (s != kNoCell) throw std::logic_error("node filed twice as a free neighbor");
    s = free_lists_.push_back(head(owner), who);
    ++ops_;
}

void ShortPathMatcher::unfile_free(Cell adjacency_cell) {
    Cell& s = slot(adjacency_cell);
    if (s == kNoCell) return;
    free_lists_.erase(s);
    s = kNoCell;
    ++ops_;
}

void ShortPathMatcher::announce_free(NodeId a) {
    for (Cell c = graph_.first_cell(a); c != graph_.end_cell(a); c = graph_.next_cell(c)) {
        file_free(graph_.twin_cell(c), graph_.cell_target(c), a);
    }
}

void ShortPathMatcher::announce_matched(NodeId a) {
    for (Cell c = graph_.first_cell(a); c != graph_.end_cell(a); c = graph_.next_cell(c)) {
        unfile_free(graph_.twin_cell(c));
    }
}

NodeId ShortPathMatcher::first_free_neighbor(NodeId v, NodeId excluded) const {
    Cell h = heads_.get(v);
    if (h == kNoCell) return kNoNode;
    for (Cell c = free_lists_.first(h); c != h; c = free_lists_.next(c)) {
        NodeId x = free_lists_.value(c);
        if (x != excluded) return x;
    }
    return kNoNode;
}

void ShortPathMatcher::match(NodeId a, NodeId b) {
    state_.match(a, b);
    announce_matched(a);
    announce_matched(b);
}

void ShortPathMatcher::insert_edge(NodeId u, NodeId v) {
    if (!graph_.insert_edge(u, v)) throw std::logic_error("duplicate edge fed to matcher");
    ++ops_;
    Cell v_in_u = *graph_.cell_of(u, v);
    Cell u_in_v = graph_.twin_cell(v_in_u);
    bool u_free = state_.is_free(u);
    bool v_free = state_.is_free(v);
    if (u_free) file_free(u_in_v, v, u);
    if (v_free) file_free(v_in_u, u, v);
    if (u_free && v_free) {
        match(u, v);
        return;
    }
    if (!u_free && !v_free) return;
    NodeId a = u_free ? v : u; // matched endpoint
    NodeId b = u_free ? u : v; // free endpoint
    NodeId x = state_.mate(a);
    NodeId y = first_free_neighbor(x, b);
    if (y == kNoNode) return;
    state_.unmatch(a, x);
    state_.match(a, b);
    state_.match(x, y);
    announce_matched(b);
    announce_matched(y);
}

void ShortPathMatcher::delete_edge(NodeId u, NodeId v) {
    auto v_in_u = graph_.cell_of(u, v);
    if (!v_in_u) throw std::logic_error("missing edge removed from matcher");
    ++ops_;
    unfile_free(*v_in_u);
    unfile_free(graph_.twin_cell(*v_in_u));
    bool was_matched = state_.is_matched_edge(u, v);
    graph_.delete_edge(u, v);
    if (!was_matched) return;
    state_.unmatch(u, v);
    announce_free(u);
    announce_free(v);
    find_mate(u);
    find_mate(v);
    resolve(u);
    resolve(v);
}

void ShortPathMatcher::find_mate(NodeId u) {
    if (!state_.is_free(u)) return;
    for (NodeId x : graph_.neighbors(u)) {
        ++ops_;
        if (state_.is_free(x)) {
            match(u, x);
            return;
        }
    }
}

void ShortPathMatcher::resolve(NodeId u) {
    if (!state_.is_free(u)) return;
    for (NodeId x : graph_.neighbors(u)) {
        ++ops_;
        NodeId y = state_.mate(x);
        if (y == kNoNode) continue;
        NodeId z = first_free_neighbor(y, u);
        if (z == kNoNode) continue;
        state_.unmatch(x, y);
        state_.match(y, z);
        state_.match(x, u);
        announce_matched(z);
        announce_matched(u);
        return;
    }
}

void ShortPathMatcher::augment(const std::vector<NodeId>& path) {
    if (path.size() < 2 || path.size() % 2 != 0) throw std::invalid_argument("augmenting path needs an even node count");
    if (!state_.is_free(path.front()) || !state_.is_free(path.back())) {
        throw std::invalid_argument("augmenting path must join two free nodes");
    }
    for (std::size_t i = 1; i + 1 < path.size(); i += 2) state_.unmatch(path[i], path[i + 1]);
    for (std::size_t i = 0; i < path.size(); i += 2) {
        if (!graph_.has_edge(path[i], path[i + 1])) throw std::invalid_argument("augmenting path uses a missing edge");
        state_.match(path[i], path[i + 1]);
    }
    announce_matched(path.front());
    announce_matched(path.back());
}

std::vector<NodeId> ShortPathMatcher::free_neighbors(NodeId v) const {
    std::vector<NodeId> out;
    Cell h = heads_.get(v);
    if (h == kNoCell) return out;
    for (Cell c = free_lists_.first(h); c != h; c = free_lists_.next(c)) out.push_back(free_lists_.value(c));
    return out;
}

void ShortPathMatcher::reset() {
    graph_.reset();
    state_.reset();
    free_lists_.clear();
    heads_.reset();
    if (++gen_ == 0) {
        slots_.clear();
        gen_ = 1;
    }
}

std::uint64_t ShortPathMatcher::take_ops() {
    std::uint64_t out = ops_;
    ops_ = 0;
    return out;
}

AuditReport ShortPathMatcher::check_free_index() const {
    AuditReport r;
    for (NodeId v = 0; v < graph_.node_count(); ++v) {
        std::multiset<NodeId> listed;
        for (NodeId x : free_neighbors(v)) listed.insert(x);
        std::multiset<NodeId> expected;
        for (NodeId x : graph_.neighbors(v)) {
            if (state_.is_free(x)) expected.insert(x);
        }
        if (listed != expected) r.fail("free-neighbor list of " + std::to_string(v) + " is stale");
        for (Cell c = graph_.first_cell(v); c != graph_.end_cell(v); c = graph_.next_cell(c)) {
            bool filed = c < slots_.size() && slots_[c].gen == gen_ && slots_[c].cell != kNoCell;
            if (filed != state_.is_free(graph_.cell_target(c))) r.fail("free-neighbor handle out of sync at " + std::to_string(v));
        }
    }
    return r;
}

namespace {

bool extend(const DynamicGraph& g, const MatchState& m, std::vector<NodeId>& path, std::vector<char>& on_path,
            std::size_t budget) {
    NodeId tip = path.back();
    for (NodeId x : g.neighbors(tip)) {
        if (on_path[x] || m.is_matched_edge(tip, x)) continue;
        if (m.is_free(x)) {
            path.push_back(x);
            return true;
        }
        if (budget < 3) continue;
        NodeId y = m.mate(x);
        if (on_path[y]) continue;
        path.push_back(x);
        path.push_back(y);
        on_path[x] = on_path[y] = 1;
        if (extend(g, m, path, on_path, budget - 2)) return true;
        on_path[x] = on_path[y] = 0;
        path.pop_back();
        path.pop_back();
    }
    return false;
}

} // namespace

std::optional<std::vector<NodeId>> find_augmenting_path(const DynamicGraph& g, const MatchState& m,
                                                        std::size_t max_length) {
    if (max_length == 0) return std::nullopt;
    std::vector<char> on_path(g.node_count(), 0);
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (!m.is_free(s) || g.degree(s) == 0) continue;
        std::vector<NodeId> path{s};
        on_path[s] = 1;
        bool found = extend(g, m, path, on_path, max_length);
        on_path[s] = 0;
        if (found) return path;
    }
    return std::nullopt;
}

} // namespace dynmatch
