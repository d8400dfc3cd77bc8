#ifndef DYNMATCH_BENCH_HPP
#define DYNMATCH_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <dynmatch/dyngraph.hpp>
#include <dynmatch/types.hpp>

namespace dynmatch::bench {

enum class Op : char { Insert = '+', Delete = '-' };

struct Update {
    Op op = Op::Insert;
    NodeId u = 0;
    NodeId v = 0;

    friend bool operator==(const Update&, const Update&) = default;
};

/// Node count plus a replay-valid sequence of edge updates.
struct UpdateStream {
    std::size_t n = 1;
    std::vector<Update> events;

    std::size_t deletions() const;
    friend bool operator==(const UpdateStream&, const UpdateStream&) = default;
};

class StreamError : public std::runtime_error {
public:
    StreamError(std::size_t line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses "n N" followed by "+ u v" / "- u v" lines; '#' starts a comment.
UpdateStream parse_stream(std::string_view text);
std::string format_stream(const UpdateStream& stream);
UpdateStream read_stream_file(const std::string& path);
void write_stream_file(const std::string& path, const UpdateStream& stream);
/// Replays the stream against a set of edges; throws StreamError on the first invalid event.
void validate_stream(const UpdateStream& stream);

enum class Algorithm { Cover, SqrtN, Phased, WorstCase };
std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

enum class StreamKind { Random, SlidingWindow, Adversarial };
std::string_view stream_kind_name(StreamKind k);
StreamKind parse_stream_kind(std::string_view name);

struct GeneratorParams {
    double insert_probability = 0.5; // random and adversarial kinds
    std::size_t window = 0;          // sliding_window: edges kept alive
    double initial_density = 0.3;    // adversarial: edge density reached before attacking
    Algorithm target = Algorithm::SqrtN;
    double epsilon = 0.2;
};

/// Deterministic for a given seed. For sliding_window, T counts insertions and
/// every insertion past the window size is followed by deleting the oldest edge;
/// for the other kinds T is the number of events.
UpdateStream generate_stream(StreamKind kind, std::size_t n, std::size_t T, const GeneratorParams& params,
                             std::uint64_t seed);

struct LedgerSnapshot {
    std::uint64_t weight_changes = 0;
    std::uint64_t level_moves = 0;
    std::uint64_t refills = 0;
    std::uint64_t kernel_churn = 0;
};

/// Uniform driver over the four maintained structures.
class Subject {
public:
    virtual ~Subject() = default;
    virtual void apply(const Update& u) = 0;
    virtual const DynamicGraph& graph() const = 0;
    /// Cover size or matching size.
    virtual std::size_t size() const = 0;
    virtual std::optional<double> fractional_value() const { return std::nullopt; }
    virtual LedgerSnapshot ledger() const = 0;
    virtual std::uint64_t last_ops() const = 0;
    /// Full structural audit.
    virtual AuditReport audit() const = 0;
    /// Compares against an exact oracle; throws oracle::CapExceeded when too large.
    virtual std::pair<std::size_t, double> sample_oracle(AuditReport& report) const = 0;
    /// An edge whose deletion stresses the structure, if any.
    virtual std::optional<EdgeKey> pressure_edge(std::uint64_t salt) const = 0;
};

std::unique_ptr<Subject> make_subject(Algorithm algorithm, std::size_t n, double epsilon);

struct RunConfig {
    Algorithm algorithm = Algorithm::Cover;
    double epsilon = 0.2;
    std::optional<std::size_t> audit_every; // unset: 1 for short streams, 100 otherwise; 0 disables
    std::size_t oracle_every = 0;           // 0 disables
    std::uint64_t seed = 1;
    bool timing = true;
};

struct MetricsRow {
    std::size_t idx = 0;
    Update update;
    std::size_t size = 0;
    std::optional<double> frac;
    LedgerSnapshot ledger;
    std::uint64_t ops = 0;
    std::optional<std::size_t> oracle;
    std::optional<double> ratio;
    std::optional<std::int64_t> ns;
};

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitAudit = 2, kExitOracleCap = 3 };

struct RunResult {
    int exit_code = kExitOk;
    std::string message;
    std::vector<MetricsRow> rows;
    std::size_t audits = 0;
    std::size_t oracle_samples = 0;
    double max_ratio = 0.0;
};

std::size_t default_audit_cadence(std::size_t T);
RunResult run_experiment(const UpdateStream& stream, const RunConfig& config);

inline constexpr std::string_view kCsvHeader =
    "idx,op,u,v,size,frac,weight_changes,level_moves,refills,kappa_churn,ops,oracle,ratio,ns";
std::string to_csv(const std::vector<MetricsRow>& rows);

} // namespace dynmatch::bench

#endif
