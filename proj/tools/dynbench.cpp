#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <dynmatch/bench.hpp>
#include <dynmatch/oracle.hpp>

namespace bench = dynmatch::bench;

namespace {

struct StreamSource {
    std::string path;
    std::string kind = "random";
    std::size_t n = 100;
    std::size_t T = 1000;
    double p = 0.5;
    std::size_t window = 50;
    double density = 0.3;
    std::string target = "sqrtn";
};

void add_generator_options(CLI::App* app, StreamSource& src) {
    app->add_option("--kind", src.kind, "random | sliding_window | adversarial")->capture_default_str();
    app->add_option("--n", src.n, "node count")->capture_default_str();
    app->add_option("--T", src.T, "stream length")->capture_default_str();
    app->add_option("--p", src.p, "insertion probability")->capture_default_str();
    app->add_option("--window", src.window, "live edges for sliding_window")->capture_default_str();
    app->add_option("--density", src.density, "adversarial warm-up edge density")->capture_default_str();
    app->add_option("--target", src.target, "structure the adversarial kind attacks")->capture_default_str();
}

bench::UpdateStream load(const StreamSource& src, double eps, std::uint64_t seed) {
    if (!src.path.empty()) return bench::read_stream_file(src.path);
    bench::GeneratorParams params;
    params.insert_probability = src.p;
    params.window = src.window;
    params.initial_density = src.density;
    params.target = bench::parse_algorithm(src.target);
    params.epsilon = eps;
    return bench::generate_stream(bench::parse_stream_kind(src.kind), src.n, src.T, params, seed);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::string summary(const bench::RunResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "updates=%zu audits=%zu oracle_samples=%zu max_ratio=%.6g", r.rows.size(),
                  r.audits, r.oracle_samples, r.max_ratio);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic matching and vertex cover benchmark harness"};
    app.require_subcommand(1);

    StreamSource src;
    std::string alg = "cover";
    double eps = 0.2;
    std::uint64_t seed = 1;
    std::optional<std::size_t> audit_every;
    std::size_t oracle_every = 0;
    std::string out;
    bool no_timing = false;

    auto* run = app.add_subcommand("run", "replay a stream through a structure and emit CSV metrics");
    auto* audit = app.add_subcommand("audit", "replay a stream auditing after every update");
    for (auto* sub : {run, audit}) {
        sub->add_option("--alg", alg, "cover | sqrtn | phased | worstcase")->capture_default_str();
        sub->add_option("--eps", eps, "approximation parameter")->capture_default_str();
        sub->add_option("--seed", seed, "generator seed")->capture_default_str();
        sub->add_option("--oracle-every", oracle_every, "exact oracle cadence, 0 = never")->capture_default_str();
        sub->add_option("--stream", src.path, "stream file; generated when absent");
        add_generator_options(sub, src);
    }
    run->add_option("--audit-every", audit_every, "audit cadence, 0 = never (default 1 up to 2000 updates, else 100)");
    run->add_option("--out", out, "CSV destination (default stdout)");
    run->add_flag("--no-timing", no_timing, "leave the ns column empty");

    auto* gen = app.add_subcommand("gen", "generate a stream file");
    gen->add_option("--seed", seed, "generator seed")->capture_default_str();
    gen->add_option("--eps", eps, "epsilon of the adversarial target")->capture_default_str();
    gen->add_option("--out", out, "stream destination (default stdout)");
    add_generator_options(gen, src);

    std::size_t fixture_c = 4;
    auto* fixture = app.add_subcommand("fixture", "write the tightness fixture as a stream plus expected values");
    fixture->add_option("--c", fixture_c, "even degree budget")->capture_default_str();
    fixture->add_option("--out", out, "stream path; the sidecar gets a .json suffix")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            write_text(out, bench::format_stream(load(src, eps, seed)));
            return bench::kExitOk;
        }
        if (*fixture) {
            auto fx = dynmatch::oracle::build_tightness_fixture(fixture_c);
            bench::UpdateStream stream;
            stream.n = fx.graph.node_count();
            for (const auto& e : fx.graph.edges()) stream.events.push_back({bench::Op::Insert, e.u, e.v});
            bench::write_stream_file(out, stream);
            nlohmann::json side = {{"c", fixture_c},
                                   {"n", stream.n},
                                   {"edges", stream.events.size()},
                                   {"kernel_matching_size", fx.kernel_matching.size()},
                                   {"maximum_matching_size", fx.large_matching.size()}};
            write_text(out + ".json", side.dump(2) + "\n");
            return bench::kExitOk;
        }

        bench::UpdateStream stream;
        try {
            stream = load(src, eps, seed);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return bench::kExitIo;
        }
        bench::RunConfig cfg;
        cfg.algorithm = bench::parse_algorithm(alg);
        cfg.epsilon = eps;
        cfg.seed = seed;
        cfg.oracle_every = oracle_every;
        if (*audit) {
            cfg.audit_every = 1;
            cfg.timing = false;
        } else {
            cfg.audit_every = audit_every;
            cfg.timing = !no_timing;
        }
        bench::RunResult result = bench::run_experiment(stream, cfg);
        if (*run) write_text(out, bench::to_csv(result.rows));
        if (result.exit_code != bench::kExitOk) {
            std::cerr << "error: " << result.message << "\n";
        } else if (*audit) {
            std::cout << "ok " << summary(result) << "\n";
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bench::kExitIo;
    }
}
