#include <dynmatch/dyngraph.hpp>

#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dynmatch {

DynamicGraph::DynamicGraph(std::size_t n) : n_(n), nodes_(n, NodeSlot{}) {
    if (n == 0) throw std::invalid_argument("graph needs at least one node");
    if (n >= kNoNode) throw std::invalid_argument("node count too large");
}

void DynamicGraph::check_node(NodeId v) const {
    if (v >= n_) throw std::out_of_range("node index " + std::to_string(v) + " out of range");
}

void DynamicGraph::check_pair(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
}

DynamicGraph::NodeSlot& DynamicGraph::node(NodeId v) {
    NodeSlot& s = nodes_.at(v);
    if (s.sentinel == kNoCell) s.sentinel = pool_.make_list();
    return s;
}

const DynamicGraph::EdgeRec* DynamicGraph::find(EdgeKey e) const {
    auto it = index_.find(e.packed());
    if (it == index_.end() || it->second.gen != gen_) return nullptr;
    return &it->second;
}

DynamicGraph::EdgeRec* DynamicGraph::find(EdgeKey e) {
    auto it = index_.find(e.packed());
    if (it == index_.end() || it->second.gen != gen_) return nullptr;
    return &it->second;
}

bool DynamicGraph::insert_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    EdgeKey e = EdgeKey::of(u, v);
    EdgeRec& rec = index_[e.packed()];
    if (rec.gen == gen_) return false;
    NodeSlot& lo = node(e.u);
    NodeSlot& hi = node(e.v);
    rec.cell_lo = pool_.push_back(lo.sentinel, e.v);
    rec.cell_hi = pool_.push_back(hi.sentinel, e.u, rec.cell_lo);
    pool_.set_twin(rec.cell_lo, rec.cell_hi);
    rec.pos = static_cast<std::uint32_t>(dense_.size());
    rec.gen = gen_;
    dense_.push_back(e);
    ++lo.degree;
    ++hi.degree;
    return true;
}

bool DynamicGraph::delete_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    EdgeKey e = EdgeKey::of(u, v);
    auto it = index_.find(e.packed());
    if (it == index_.end() || it->second.gen != gen_) return false;
    EdgeRec rec = it->second;
    std::size_t p = rec.pos;
    if (p < marked_) {
        swap_dense(p, marked_ - 1);
        p = --marked_;
    }
    swap_dense(p, dense_.size() - 1);
    dense_.pop_back();
    index_.erase(it);
    pool_.erase(rec.cell_lo);
    pool_.erase(rec.cell_hi);
    --nodes_.at(e.u).degree;
    --nodes_.at(e.v).degree;
    return true;
}

void DynamicGraph::swap_dense(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(dense_[i], dense_[j]);
    find(dense_[i])->pos = static_cast<std::uint32_t>(i);
    find(dense_[j])->pos = static_cast<std::uint32_t>(j);
}

bool DynamicGraph::has_edge(NodeId u, NodeId v) const {
    check_pair(u, v);
    return find(EdgeKey::of(u, v)) != nullptr;
}

std::size_t DynamicGraph::degree(NodeId v) const {
    check_node(v);
    return nodes_.get(v).degree;
}

DynamicGraph::NeighborRange DynamicGraph::neighbors(NodeId v) const {
    check_node(v);
    return NeighborRange(&pool_, nodes_.get(v).sentinel);
}

DynamicGraph::Cell DynamicGraph::first_cell(NodeId v) const {
    Cell s = nodes_.get(v).sentinel;
    return s == kNoCell ? kNoCell : pool_.first(s);
}

DynamicGraph::Cell DynamicGraph::end_cell(NodeId v) const { return nodes_.get(v).sentinel; }

std::optional<DynamicGraph::Cell> DynamicGraph::cell_of(NodeId u, NodeId v) const {
    const EdgeRec* rec = find(EdgeKey::of(u, v));
    if (!rec) return std::nullopt;
    return u < v ? rec->cell_lo : rec->cell_hi;
}

bool DynamicGraph::mark(NodeId u, NodeId v) {
    check_pair(u, v);
    EdgeRec* rec = find(EdgeKey::of(u, v));
    if (!rec || rec->pos < marked_) return false;
    swap_dense(rec->pos, marked_);
    ++marked_;
    return true;
}

bool DynamicGraph::is_marked(NodeId u, NodeId v) const {
    check_pair(u, v);
    const EdgeRec* rec = find(EdgeKey::of(u, v));
    return rec && rec->pos < marked_;
}

std::optional<EdgeKey> DynamicGraph::first_unmarked() const {
    if (marked_ >= dense_.size()) return std::nullopt;
    return dense_[marked_];
}

void DynamicGraph::reset() {
    if (++gen_ == 0) {
        index_.clear();
        gen_ = 1;
    }
    nodes_.reset();
    pool_.clear();
    dense_.clear();
    marked_ = 0;
}

AuditReport DynamicGraph::self_check() const {
    AuditReport report;
    std::size_t live = 0;
    for (const auto& [key, rec] : index_) {
        if (rec.gen != gen_) continue;
        ++live;
        EdgeKey e{NodeId(key >> 32), NodeId(key & 0xffffffffu)};
        if (rec.pos >= dense_.size() || dense_[rec.pos] != e) {
            report.fail("dense position mismatch for edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
        if (pool_.value(rec.cell_lo) != e.v || pool_.value(rec.cell_hi) != e.u ||
            pool_.twin(rec.cell_lo) != rec.cell_hi || pool_.twin(rec.cell_hi) != rec.cell_lo) {
            report.fail("handle mismatch for edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
    }
    if (live != dense_.size()) report.fail("edge count differs from index size");
    if (marked_ > dense_.size()) report.fail("marked prefix longer than edge array");
    std::size_t degree_sum = 0;
    for (NodeId v = 0; v < n_; ++v) {
        std::size_t len = 0;
        std::unordered_set<NodeId> seen;
        for (NodeId u : neighbors(v)) {
            ++len;
            if (!seen.insert(u).second) report.fail("duplicate neighbor in list of " + std::to_string(v));
            if (u >= n_ || u == v || !find(EdgeKey::of(u, v))) {
                report.fail("stray neighbor " + std::to_string(u) + " in list of " + std::to_string(v));
            }
        }
        if (len != nodes_.get(v).degree) report.fail("degree counter mismatch at " + std::to_string(v));
        degree_sum += len;
    }
    if (degree_sum != 2 * dense_.size()) report.fail("degree sum differs from 2m");
    return report;
}

} // namespace dynmatch
