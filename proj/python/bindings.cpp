#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <dynmatch/bench.hpp>
#include <dynmatch/levelcover.hpp>
#include <dynmatch/matchers.hpp>
#include <dynmatch/oracle.hpp>

namespace py = pybind11;
using namespace dynmatch;

namespace {

using Pair = std::pair<NodeId, NodeId>;

std::vector<Pair> pairs(std::span<const EdgeKey> edges) {
    std::vector<Pair> out;
    out.reserve(edges.size());
    for (const EdgeKey& e : edges) out.emplace_back(e.u, e.v);
    return out;
}

std::vector<EdgeKey> keys(const std::vector<Pair>& edges) {
    std::vector<EdgeKey> out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) out.push_back(EdgeKey::of(u, v));
    return out;
}

DynamicGraph graph_of(std::size_t n, const std::vector<Pair>& edges) {
    DynamicGraph g(n);
    for (auto [u, v] : edges) g.insert_edge(u, v);
    return g;
}

py::tuple report(const AuditReport& r) { return py::make_tuple(r.ok, r.violation); }

py::dict guarantee(const Guarantee& g) {
    py::dict d;
    d["ratio"] = g.ratio;
    d["regime"] = g.regime == CostRegime::Amortized ? "amortized" : "worst-case";
    return d;
}

template <class M>
void bind_matcher(py::module_& m, const char* name) {
    py::class_<M>(m, name)
        .def(py::init([](std::size_t n, double eps, const std::vector<Pair>& initial) {
                 auto edges = keys(initial);
                 return M(n, eps, edges);
             }),
             py::arg("n"), py::arg("eps"), py::arg("initial") = std::vector<Pair>{})
        .def("insert_edge", &M::insert_edge)
        .def("delete_edge", &M::delete_edge)
        .def("matching_size", &M::matching_size)
        .def("matching", [](const M& x) { return pairs(x.current_matching()); })
        .def("edges", [](const M& x) { return pairs(x.graph().edges()); })
        .def("kernel_edges", [](const M& x) { return pairs(x.kernel().friends().edges()); })
        .def("guarantee", [](const M& x) { return guarantee(x.guarantee()); })
        .def("last_update_ops", &M::last_update_ops);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dynamic vertex cover and matching structures";

    py::class_<DynamicGraph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n"))
        .def("insert_edge", &DynamicGraph::insert_edge)
        .def("delete_edge", &DynamicGraph::delete_edge)
        .def("has_edge", &DynamicGraph::has_edge)
        .def("degree", &DynamicGraph::degree)
        .def("neighbors", [](const DynamicGraph& g, NodeId v) {
            auto r = g.neighbors(v);
            return std::vector<NodeId>(r.begin(), r.end());
        })
        .def("edges", [](const DynamicGraph& g) { return pairs(g.edges()); })
        .def_property_readonly("node_count", &DynamicGraph::node_count)
        .def_property_readonly("edge_count", &DynamicGraph::edge_count);

    py::class_<DynamicVertexCover>(m, "VertexCover")
        .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("eps"))
        .def("insert_edge", &DynamicVertexCover::insert_edge)
        .def("delete_edge", &DynamicVertexCover::delete_edge)
        .def("cover_size", [](const DynamicVertexCover& c) { return c.partition().cover_size(); })
        .def("cover", [](const DynamicVertexCover& c) { return c.partition().cover(); })
        .def("in_cover", [](const DynamicVertexCover& c, NodeId v) { return c.partition().in_cover(v); })
        .def("fractional_value", [](const DynamicVertexCover& c) { return c.partition().fractional_value(); })
        .def("level", [](const DynamicVertexCover& c, NodeId v) { return c.partition().level(v); })
        .def("weight", [](const DynamicVertexCover& c, NodeId v) { return c.partition().weight(v); })
        .def_property_readonly("top_level", [](const DynamicVertexCover& c) { return c.partition().params().top_level; })
        .def("ledger", [](const DynamicVertexCover& c) {
            const WorkLedger& l = c.partition().ledger();
            py::dict d;
            d["edge_weight_changes"] = l.edge_weight_changes;
            d["level_moves_up"] = l.level_moves_up;
            d["level_moves_down"] = l.level_moves_down;
            d["list_relink_ops"] = l.list_relink_ops;
            d["updates"] = l.updates;
            return d;
        })
        .def("work_budget", [](const DynamicVertexCover& c, std::uint64_t t) { return c.partition().work_budget(t); })
        .def("audit", [](const DynamicVertexCover& c) { return report(c.audit()); });

    bind_matcher<SqrtNMatcher>(m, "SqrtNMatcher");
    bind_matcher<PhasedMatcher>(m, "PhasedMatcher");
    bind_matcher<WorstCaseMatcher>(m, "WorstCaseMatcher");

    m.def("max_matching", [](std::size_t n, const std::vector<Pair>& edges) {
        auto r = oracle::max_matching_exact(graph_of(n, edges));
        return py::make_tuple(r.value, pairs(r.witness));
    }, py::arg("n"), py::arg("edges"));
    m.def("min_vertex_cover", [](std::size_t n, const std::vector<Pair>& edges) {
        auto r = oracle::min_vertex_cover_exact(graph_of(n, edges));
        return py::make_tuple(r.value, r.witness);
    }, py::arg("n"), py::arg("edges"));
    m.def("tightness_fixture", [](std::size_t c) {
        auto fx = oracle::build_tightness_fixture(c);
        py::dict d;
        d["n"] = fx.graph.node_count();
        d["edges"] = pairs(fx.graph.edges());
        d["kernel_edges"] = pairs(fx.kernel_edges);
        d["kernel_matching"] = pairs(fx.kernel_matching);
        d["large_matching"] = pairs(fx.large_matching);
        return d;
    }, py::arg("c"));

    m.def("parse_stream", [](const std::string& text) {
        auto s = bench::parse_stream(text);
        std::vector<std::tuple<std::string, NodeId, NodeId>> events;
        for (const auto& e : s.events) events.emplace_back(std::string(1, static_cast<char>(e.op)), e.u, e.v);
        return py::make_tuple(s.n, events);
    });
    m.def("generate_stream", [](const std::string& kind, std::size_t n, std::size_t T, std::uint64_t seed, double p,
                                std::size_t window, double density, const std::string& target, double eps) {
        bench::GeneratorParams params;
        params.insert_probability = p;
        params.window = window;
        params.initial_density = density;
        params.target = bench::parse_algorithm(target);
        params.epsilon = eps;
        return bench::format_stream(bench::generate_stream(bench::parse_stream_kind(kind), n, T, params, seed));
    }, py::arg("kind"), py::arg("n"), py::arg("T"), py::arg("seed") = 1, py::arg("p") = 0.5, py::arg("window") = 0,
       py::arg("density") = 0.3, py::arg("target") = "sqrtn", py::arg("eps") = 0.2);
    m.def("run_experiment", [](const std::string& stream_text, const std::string& alg, double eps,
                               std::optional<std::size_t> audit_every, std::size_t oracle_every, bool timing) {
        bench::RunConfig cfg;
        cfg.algorithm = bench::parse_algorithm(alg);
        cfg.epsilon = eps;
        cfg.audit_every = audit_every;
        cfg.oracle_every = oracle_every;
        cfg.timing = timing;
        bench::RunResult r;
        try {
            r = bench::run_experiment(bench::parse_stream(stream_text), cfg);
        } catch (const bench::StreamError& e) {
            r.exit_code = bench::kExitIo;
            r.message = e.what();
        }
        return py::make_tuple(r.exit_code, bench::to_csv(r.rows), r.message);
    }, py::arg("stream"), py::arg("alg"), py::arg("eps") = 0.2, py::arg("audit_every") = py::none(),
       py::arg("oracle_every") = 0, py::arg("timing") = false);

    py::register_exception<oracle::CapExceeded>(m, "CapExceeded", PyExc_ValueError);
    py::register_exception<bench::StreamError>(m, "StreamError", PyExc_ValueError);
}
