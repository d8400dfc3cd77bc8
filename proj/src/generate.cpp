#include <dynmatch/bench.hpp>

#include <deque>
#include <random>

namespace dynmatch::bench {

namespace {

class Builder {
public:
    Builder(std::size_t n, std::uint64_t seed) : graph_(n), rng_(seed) {
        if (n < 2) throw std::invalid_argument("streams need at least two nodes");
        stream_.n = n;
    }

    std::size_t max_edges() const { return graph_.node_count() * (graph_.node_count() - 1) / 2; }
    const DynamicGraph& graph() const { return graph_; }
    std::mt19937_64& rng() { return rng_; }
    bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
    std::size_t below(std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_); }

    EdgeKey random_absent(std::size_t hub_count = 0) {
        const std::size_t n = graph_.node_count();
        if (graph_.edge_count() * 2 < max_edges()) {
            for (;;) {
                NodeId a = static_cast<NodeId>(hub_count ? below(hub_count) : below(n));
                NodeId b = static_cast<NodeId>(below(n));
                if (a != b && !graph_.has_edge(a, b)) return EdgeKey::of(a, b);
            }
        }
        std::vector<EdgeKey> absent;
        for (NodeId a = 0; a < n; ++a) {
            for (NodeId b = a + 1; b < n; ++b) {
                if (!graph_.has_edge(a, b)) absent.push_back({a, b});
            }
        }
        return absent[below(absent.size())];
    }

    EdgeKey random_present() { return graph_.edges()[below(graph_.edge_count())]; }

    void emit(Op op, EdgeKey e) {
        if (op == Op::Insert) {
            graph_.insert_edge(e.u, e.v);
        } else {
            graph_.delete_edge(e.u, e.v);
        }
        stream_.events.push_back({op, e.u, e.v});
    }

    UpdateStream take() { return std::move(stream_); }

private:
    DynamicGraph graph_;
    std::mt19937_64 rng_;
    UpdateStream stream_;
};

UpdateStream random_stream(std::size_t n, std::size_t T, const GeneratorParams& p, std::uint64_t seed) {
    Builder b(n, seed);
    for (std::size_t i = 0; i < T; ++i) {
        const std::size_t m = b.graph().edge_count();
        bool insert = m == 0 || (m < b.max_edges() && b.coin(p.insert_probability));
        if (insert) {
            b.emit(Op::Insert, b.random_absent());
        } else {
            b.emit(Op::Delete, b.random_present());
        }
    }
    return b.take();
}

UpdateStream window_stream(std::size_t n, std::size_t T, const GeneratorParams& p, std::uint64_t seed) {
    Builder b(n, seed);
    if (p.window == 0 || p.window >= b.max_edges()) throw std::invalid_argument("window must lie in [1, n(n-1)/2)");
    std::deque<EdgeKey> alive;
    for (std::size_t i = 0; i < T; ++i) {
        EdgeKey e = b.random_absent();
        b.emit(Op::Insert, e);
        alive.push_back(e);
        if (alive.size() > p.window) {
            b.emit(Op::Delete, alive.front());
            alive.pop_front();
        }
    }
    return b.take();
}

// Builds a dense start, then alternates hub-biased insertions with deletions
// chosen by the live structure to hit its most fragile spot.
UpdateStream adversarial_stream(std::size_t n, std::size_t T, const GeneratorParams& p, std::uint64_t seed) {
    Builder b(n, seed);
    auto subject = make_subject(p.target, n, p.epsilon);
    auto emit = [&](Op op, EdgeKey e) {
        b.emit(op, e);
        subject->apply({op, e.u, e.v});
    };
    const auto dense = static_cast<std::size_t>(p.initial_density * static_cast<double>(b.max_edges()));
    std::size_t i = 0;
    for (; i < T && b.graph().edge_count() < dense; ++i) emit(Op::Insert, b.random_absent());
    std::size_t hubs = 1;
    while (hubs * hubs < n) ++hubs;
    for (; i < T; ++i) {
        const std::size_t m = b.graph().edge_count();
        bool insert = m == 0 || (m < b.max_edges() && b.coin(p.insert_probability));
        if (insert) {
            emit(Op::Insert, b.random_absent(b.coin(0.5) ? hubs : 0));
            continue;
        }
        auto target = subject->pressure_edge(b.rng()());
        emit(Op::Delete, target ? *target : b.random_present());
    }
    return b.take();
}

} // namespace

UpdateStream generate_stream(StreamKind kind, std::size_t n, std::size_t T, const GeneratorParams& params,
                             std::uint64_t seed) {
    if (T == 0) throw std::invalid_argument("stream length must be positive");
    if (!(params.insert_probability >= 0.0 && params.insert_probability <= 1.0)) {
        throw std::invalid_argument("insert probability must lie in [0, 1]");
    }
    switch (kind) {
    case StreamKind::Random: return random_stream(n, T, params, seed);
    case StreamKind::SlidingWindow: return window_stream(n, T, params, seed);
    case StreamKind::Adversarial: return adversarial_stream(n, T, params, seed);
    }
    throw std::invalid_argument("unknown stream kind");
}

} // namespace dynmatch::bench
