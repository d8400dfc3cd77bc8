#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <dynmatch/bench.hpp>

using namespace dynmatch;
using namespace dynmatch::bench;

TEST_SUITE("bench") {

TEST_CASE("parsing") {
    auto s = parse_stream("n 3\n+ 0 1\n- 0 1\n");
    CHECK(s.n == 3);
    CHECK(s.events.size() == 2);
    CHECK(s.events[1] == Update{Op::Delete, 0, 1});
    CHECK(parse_stream("# header comment\nn 2 # trailing\n\n+ 1 0\r\n").events.size() == 1);

    auto fails_with = [](const char* text, const char* reason) {
        try {
            parse_stream(text);
        } catch (const StreamError& e) {
            return std::string(e.what()).find(reason) != std::string::npos;
        }
        return false;
    };
    CHECK(fails_with("n 3\n+ 0 0\n", "self-loop"));
    CHECK(fails_with("n 3\n- 0 1\n", "deleting absent edge"));
    CHECK(fails_with("n 3\n+ 0 3\n", "out of range"));
    CHECK(fails_with("n 3\n+ 0 1\n+ 1 0\n", "already present"));
    CHECK(fails_with("n 3\n* 0 1\n", "malformed"));
    CHECK(fails_with("n 3\n+ 0\n", "malformed"));
    CHECK(fails_with("+ 0 1\n", "header"));
    CHECK(fails_with("n 0\n", "header"));
    try {
        parse_stream("n 3\n+ 0 1\n+ 2 2\n");
        FAIL("expected an error");
    } catch (const StreamError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("format round trip") {
    auto s = generate_stream(StreamKind::Random, 12, 100, {}, 3);
    CHECK(parse_stream(format_stream(s)) == s);
    const std::string path = "bench_roundtrip_stream.txt";
    write_stream_file(path, s);
    CHECK(read_stream_file(path) == s);
    std::remove(path.c_str());
    CHECK_THROWS(read_stream_file("no/such/file"));
}

TEST_CASE("generators") {
    GeneratorParams p;
    auto a = generate_stream(StreamKind::Random, 10, 20, p, 7);
    auto b = generate_stream(StreamKind::Random, 10, 20, p, 7);
    CHECK(a == b);
    CHECK(a.events.size() == 20);
    CHECK_NOTHROW(validate_stream(a));
    CHECK(generate_stream(StreamKind::Random, 10, 20, p, 8) != a);

    p.window = 5;
    auto w = generate_stream(StreamKind::SlidingWindow, 10, 12, p, 1);
    CHECK(w.deletions() == 7);
    CHECK(w.events.size() == 19);
    CHECK_NOTHROW(validate_stream(w));

    CHECK_THROWS(generate_stream(StreamKind::Random, 10, 0, {}, 1));
    CHECK_THROWS(generate_stream(StreamKind::Random, 1, 5, {}, 1));
    GeneratorParams bad;
    bad.insert_probability = 1.5;
    CHECK_THROWS(generate_stream(StreamKind::Random, 10, 5, bad, 1));
    CHECK_THROWS(generate_stream(StreamKind::SlidingWindow, 10, 5, GeneratorParams{}, 1));
}

TEST_CASE("adversarial stream forces refills of the capped kernel") {
    GeneratorParams p;
    p.target = Algorithm::SqrtN;
    p.initial_density = 0.6;
    p.insert_probability = 0.3;
    p.epsilon = 0.2;
    const std::size_t n = 50;
    const std::size_t warmup = static_cast<std::size_t>(0.6 * n * (n - 1) / 2);
    auto s = generate_stream(StreamKind::Adversarial, n, warmup + 400, p, 5);
    CHECK_NOTHROW(validate_stream(s));
    RunConfig cfg;
    cfg.algorithm = Algorithm::SqrtN;
    cfg.epsilon = 0.2;
    cfg.audit_every = 50;
    cfg.timing = false;
    auto r = run_experiment(s, cfg);
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.rows.back().ledger.refills >= 1);
}

TEST_CASE("single edge cover run") {
    UpdateStream s;
    s.n = 2;
    s.events.push_back({Op::Insert, 0, 1});
    RunConfig cfg;
    cfg.algorithm = Algorithm::Cover;
    cfg.oracle_every = 1;
    auto r = run_experiment(s, cfg);
    REQUIRE(r.exit_code == kExitOk);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].size == 2);
    CHECK(r.rows[0].oracle == std::optional<std::size_t>(1));
    CHECK(r.rows[0].ratio == std::optional<double>(2.0));
}

TEST_CASE("csv layout and reproducibility") {
    auto s = generate_stream(StreamKind::Random, 20, 300, {}, 9);
    for (Algorithm alg : {Algorithm::Cover, Algorithm::SqrtN, Algorithm::Phased, Algorithm::WorstCase}) {
        CAPTURE(algorithm_name(alg));
        RunConfig cfg;
        cfg.algorithm = alg;
        cfg.epsilon = 0.1;
        cfg.oracle_every = 50;
        cfg.timing = false;
        auto r1 = run_experiment(s, cfg);
        auto r2 = run_experiment(s, cfg);
        REQUIRE(r1.exit_code == kExitOk);
        CHECK(r1.rows.size() == s.events.size());
        CHECK(r1.audits == s.events.size());
        CHECK(r1.oracle_samples == 6);
        auto csv = to_csv(r1.rows);
        CHECK(csv == to_csv(r2.rows));
        CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(s.events.size() + 1));
        CHECK(csv.find('\r') == std::string::npos);
        for (const auto& row : r1.rows) {
            CHECK(row.ratio.has_value() == (row.idx % 50 == 0));
            CHECK_FALSE(row.ns.has_value());
            CHECK(row.frac.has_value() == (alg == Algorithm::Cover));
        }
    }
}

TEST_CASE("exit codes") {
    auto big = generate_stream(StreamKind::Random, 40, 50, {}, 1);
    RunConfig cfg;
    cfg.algorithm = Algorithm::Cover;
    cfg.oracle_every = 10;
    auto r = run_experiment(big, cfg);
    CHECK(r.exit_code == kExitOracleCap);

    UpdateStream broken;
    broken.n = 3;
    broken.events.push_back({Op::Delete, 0, 1});
    CHECK(run_experiment(broken, RunConfig{}).exit_code == kExitIo);

    CHECK(default_audit_cadence(2000) == 1);
    CHECK(default_audit_cadence(2001) == 100);
}

TEST_CASE("names") {
    for (Algorithm a : {Algorithm::Cover, Algorithm::SqrtN, Algorithm::Phased, Algorithm::WorstCase})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    for (StreamKind k : {StreamKind::Random, StreamKind::SlidingWindow, StreamKind::Adversarial})
        CHECK(parse_stream_kind(stream_kind_name(k)) == k);
    CHECK_THROWS(parse_algorithm("greedy"));
}

}
