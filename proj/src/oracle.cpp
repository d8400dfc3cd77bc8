#include <dynmatch/oracle.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <string>

namespace dynmatch::oracle {

namespace {

void verify_matching(const DynamicGraph& g, const MatchingResult& r) {
    if (r.witness.size() != r.value || !is_matching(g, r.witness)) {
        throw std::logic_error("matching oracle produced an invalid witness");
    }
}

// Edmonds' blossom algorithm, BFS from each free root.
class Blossom {
public:
    explicit Blossom(const DynamicGraph& g)
        : g_(g), n_(g.node_count()), match_(n_, kNoNode), parent_(n_), base_(n_), used_(n_), blossom_(n_) {}

    std::vector<NodeId> run() {
        // Greedy warm start.
        for (NodeId v = 0; v < n_; ++v) {
            if (match_[v] != kNoNode) continue;
            for (NodeId u : g_.neighbors(v)) {
                if (match_[u] == kNoNode) {
                    match_[u] = v;
                    match_[v] = u;
                    break;
                }
            }
        }
        for (NodeId root = 0; root < n_; ++root) {
            if (match_[root] != kNoNode) continue;
            NodeId tail = find_path(root);
            while (tail != kNoNode) {
                NodeId pv = parent_[tail];
                NodeId ppv = match_[pv];
                match_[tail] = pv;
                match_[pv] = tail;
                tail = ppv;
            }
        }
        return match_;
    }

private:
    NodeId lca(NodeId a, NodeId b) {
        std::vector<char> seen(n_, 0);
        for (;;) {
            a = base_[a];
            seen[a] = 1;
            if (match_[a] == kNoNode) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(NodeId v, NodeId b, NodeId child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    NodeId find_path(NodeId root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), kNoNode);
        for (NodeId i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::deque<NodeId> q{root};
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop_front();
            for (NodeId to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != kNoNode && parent_[match_[to]] != kNoNode)) {
                    NodeId cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (NodeId i = 0; i < n_; ++i) {
                        if (blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push_back(i);
                            }
                        }
                    }
                } else if (parent_[to] == kNoNode) {
                    parent_[to] = v;
                    if (match_[to] == kNoNode) return to;
                    used_[match_[to]] = 1;
                    q.push_back(match_[to]);
                }
            }
        }
        return kNoNode;
    }

    const DynamicGraph& g_;
    std::size_t n_;
    std::vector<NodeId> match_, parent_, base_;
    std::vector<char> used_, blossom_;
};

void search_matchings(const std::vector<EdgeKey>& edges, std::size_t i, std::vector<char>& taken,
                      std::vector<EdgeKey>& current, std::vector<EdgeKey>& best) {
    if (current.size() + (edges.size() - i) <= best.size()) return;
    if (i == edges.size()) {
        best = current;
        return;
    }
    const EdgeKey& e = edges[i];
    if (!taken[e.u] && !taken[e.v]) {
        taken[e.u] = taken[e.v] = 1;
        current.push_back(e);
        search_matchings(edges, i + 1, taken, current, best);
        current.pop_back();
        taken[e.u] = taken[e.v] = 0;
    }
    search_matchings(edges, i + 1, taken, current, best);
}

using Mask = std::uint32_t;

// Size of a greedy maximal matching among the edges inside `alive`.
int matching_bound(const std::vector<Mask>& adj, Mask alive) {
    int size = 0;
    Mask rest = alive;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        Mask nb = adj[v] & rest;
        if (nb) {
            int u = std::countr_zero(nb);
            rest &= ~(Mask(1) << u);
            ++size;
        }
    }
    return size;
}

void branch_cover(const std::vector<Mask>& adj, Mask alive, Mask chosen, int size, int& best, Mask& best_set) {
    // Drop nodes without live neighbors.
    Mask active = 0;
    for (Mask rest = alive; rest; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        if (adj[v] & alive) active |= Mask(1) << v;
    }
    if (active == 0) {
        if (size < best) {
            best = size;
            best_set = chosen;
        }
        return;
    }
    if (size + matching_bound(adj, active) >= best) return;
    int pick = -1;
    int pick_degree = -1;
    for (Mask rest = active; rest; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        int d = std::popcount(adj[v] & active);
        if (d > pick_degree) {
            pick = v;
            pick_degree = d;
        }
    }
    Mask bit = Mask(1) << pick;
    branch_cover(adj, active & ~bit, chosen | bit, size + 1, best, best_set);
    Mask nb = adj[pick] & active;
    branch_cover(adj, active & ~bit & ~nb, chosen | nb, size + std::popcount(nb), best, best_set);
}

} // namespace

MatchingResult max_matching_exact(const DynamicGraph& g) {
    if (g.node_count() > kBlossomNodeCap) {
        throw CapExceeded("exact matching limited to " + std::to_string(kBlossomNodeCap) + " nodes");
    }
    std::vector<NodeId> mate = Blossom(g).run();
    MatchingResult r;
    for (NodeId v = 0; v < mate.size(); ++v) {
        if (mate[v] != kNoNode && v < mate[v]) r.witness.push_back(EdgeKey{v, mate[v]});
    }
    r.value = r.witness.size();
    verify_matching(g, r);
    return r;
}

MatchingResult max_matching_bruteforce(const DynamicGraph& g) {
    if (g.edge_count() > kBruteForceEdgeCap) {
        throw CapExceeded("brute-force matching limited to " + std::to_string(kBruteForceEdgeCap) + " edges");
    }
    std::vector<EdgeKey> edges(g.edges().begin(), g.edges().end());
    std::vector<char> taken(g.node_count(), 0);
    std::vector<EdgeKey> current, best;
    search_matchings(edges, 0, taken, current, best);
    MatchingResult r{best.size(), best};
    verify_matching(g, r);
    return r;
}

CoverResult min_vertex_cover_exact(const DynamicGraph& g) {
    const std::size_t n = g.node_count();
    if (n > kCoverNodeCap) throw CapExceeded("exact cover limited to " + std::to_string(kCoverNodeCap) + " nodes");
    std::vector<Mask> adj(n, 0);
    for (const EdgeKey& e : g.edges()) {
        adj[e.u] |= Mask(1) << e.v;
        adj[e.v] |= Mask(1) << e.u;
    }
    Mask all = n == 32 ? ~Mask(0) : ((Mask(1) << n) - 1);
    int best = static_cast<int>(n) + 1;
    Mask best_set = all;
    branch_cover(adj, all, 0, 0, best, best_set);
    CoverResult r;
    for (NodeId v = 0; v < n; ++v) {
        if (best_set & (Mask(1) << v)) r.witness.push_back(v);
    }
    r.value = r.witness.size();
    if (!is_valid_cover(g, r.witness)) throw std::logic_error("cover oracle produced an invalid witness");
    return r;
}

bool is_valid_cover(const DynamicGraph& g, std::span<const NodeId> cover) {
    std::vector<char> in(g.node_count(), 0);
    for (NodeId v : cover) {
        if (v >= g.node_count()) return false;
        in[v] = 1;
    }
    for (const EdgeKey& e : g.edges()) {
        if (!in[e.u] && !in[e.v]) return false;
    }
    return true;
}

bool is_matching(const DynamicGraph& g, std::span<const EdgeKey> edges) {
    std::vector<char> used(g.node_count(), 0);
    for (const EdgeKey& e : edges) {
        if (e.u >= g.node_count() || e.v >= g.node_count() || e.u == e.v) return false;
        if (!g.has_edge(e.u, e.v) || used[e.u] || used[e.v]) return false;
        used[e.u] = used[e.v] = 1;
    }
    return true;
}

bool is_maximal_matching(const DynamicGraph& g, std::span<const EdgeKey> edges) {
    if (!is_matching(g, edges)) return false;
    std::vector<char> used(g.node_count(), 0);
    for (const EdgeKey& e : edges) used[e.u] = used[e.v] = 1;
    for (const EdgeKey& e : g.edges()) {
        if (!used[e.u] && !used[e.v]) return false;
    }
    return true;
}

Kernel TightnessFixture::kernel() const {
    KernelParams p{c, 1.0 / static_cast<double>(c), 0.0, KernelVariant::Phase};
    return Kernel::from_edges(graph, p, kernel_edges, tight);
}

DynamicGraph TightnessFixture::kernel_graph() const {
    DynamicGraph k(graph.node_count());
    for (const EdgeKey& e : kernel_edges) k.insert_edge(e.u, e.v);
    return k;
}

TightnessFixture build_tightness_fixture(std::size_t c) {
    if (c < 2 || c % 2 != 0) throw std::invalid_argument("fixture size must be an even number >= 2");
    const std::size_t half = c / 2;
    TightnessFixture f;
    f.c = c;
    f.graph = DynamicGraph(4 * c);
    NodeId next = 0;
    auto take = [&next](std::size_t count) {
        std::vector<NodeId> out(count);
        for (auto& v : out) v = next++;
        return out;
    };
    f.left = take(half);
    f.right = take(half);
    f.hub = take(c);
    f.outer_hub = take(c);
    f.outer_left = take(half);
    f.outer_right = take(half);

    auto add = [&f](NodeId a, NodeId b, bool in_kernel) {
        f.graph.insert_edge(a, b);
        if (in_kernel) f.kernel_edges.push_back(EdgeKey::of(a, b));
    };
    for (std::size_t i = 0; i < half; ++i) {
        add(f.left[i], f.right[i], true);
        f.kernel_matching.push_back(EdgeKey::of(f.left[i], f.right[i]));
    }
    for (NodeId a : f.left) {
        for (NodeId h : f.hub) add(a, h, true);
    }
    for (NodeId b : f.right) {
        for (NodeId h : f.hub) add(b, h, true);
    }
    for (std::size_t i = 0; i < c; ++i) {
        add(f.outer_hub[i], f.hub[i], false);
        f.large_matching.push_back(EdgeKey::of(f.outer_hub[i], f.hub[i]));
    }
    for (std::size_t i = 0; i < half; ++i) {
        add(f.outer_left[i], f.left[i], false);
        f.large_matching.push_back(EdgeKey::of(f.outer_left[i], f.left[i]));
        add(f.right[i], f.outer_right[i], false);
        f.large_matching.push_back(EdgeKey::of(f.right[i], f.outer_right[i]));
    }
    f.tight.insert(f.tight.end(), f.left.begin(), f.left.end());
    f.tight.insert(f.tight.end(), f.right.begin(), f.right.end());
    f.tight.insert(f.tight.end(), f.hub.begin(), f.hub.end());
    return f;
}

} // namespace dynmatch::oracle
