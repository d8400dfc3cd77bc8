#include <dynmatch/bench.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace dynmatch::bench {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_index(std::string_view token, std::uint64_t& out) {
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

class EdgeSet {
public:
    void apply(const Update& e, std::size_t n, std::size_t line) {
        if (e.u >= n || e.v >= n) throw StreamError(line, "node index out of range");
        if (e.u == e.v) throw StreamError(line, "self-loop");
        std::uint64_t key = EdgeKey::of(e.u, e.v).packed();
        if (e.op == Op::Insert) {
            if (!edges_.insert(key).second) throw StreamError(line, "inserting an edge that is already present");
        } else if (edges_.erase(key) == 0) {
            throw StreamError(line, "deleting absent edge");
        }
    }

private:
    std::unordered_set<std::uint64_t> edges_;
};

} // namespace

std::size_t UpdateStream::deletions() const {
    std::size_t d = 0;
    for (const Update& e : events) d += e.op == Op::Delete;
    return d;
}

UpdateStream parse_stream(std::string_view text) {
    UpdateStream s;
    bool have_header = false;
    EdgeSet edges;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (!have_header) {
            std::uint64_t n = 0;
            if (tokens.size() != 2 || tokens[0] != "n" || !parse_index(tokens[1], n) || n == 0 || n >= kNoNode) {
                throw StreamError(line_no, "expected header 'n <N>' with N >= 1");
            }
            s.n = n;
            have_header = true;
            continue;
        }
        std::uint64_t u = 0, v = 0;
        if (tokens.size() != 3 || (tokens[0] != "+" && tokens[0] != "-") || !parse_index(tokens[1], u) ||
            !parse_index(tokens[2], v)) {
            throw StreamError(line_no, "malformed update line");
        }
        if (u >= s.n || v >= s.n) throw StreamError(line_no, "node index out of range");
        Update e{tokens[0] == "+" ? Op::Insert : Op::Delete, NodeId(u), NodeId(v)};
        edges.apply(e, s.n, line_no);
        s.events.push_back(e);
    }
    if (!have_header) throw StreamError(line_no, "missing header 'n <N>'");
    return s;
}

void validate_stream(const UpdateStream& stream) {
    if (stream.n == 0) throw StreamError(1, "node count must be positive");
    EdgeSet edges;
    for (std::size_t i = 0; i < stream.events.size(); ++i) edges.apply(stream.events[i], stream.n, i + 2);
}

std::string format_stream(const UpdateStream& stream) {
    std::string out = "n " + std::to_string(stream.n) + "\n";
    for (const Update& e : stream.events) {
        out += static_cast<char>(e.op);
        out += ' ';
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

UpdateStream read_stream_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stream(buf.str());
}

void write_stream_file(const std::string& path, const UpdateStream& stream) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << format_stream(stream);
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Cover: return "cover";
    case Algorithm::SqrtN: return "sqrtn";
    case Algorithm::Phased: return "phased";
    case Algorithm::WorstCase: return "worstcase";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::Cover, Algorithm::SqrtN, Algorithm::Phased, Algorithm::WorstCase}) {
        if (algorithm_name(a) == name) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view stream_kind_name(StreamKind k) {
    switch (k) {
    case StreamKind::Random: return "random";
    case StreamKind::SlidingWindow: return "sliding_window";
    case StreamKind::Adversarial: return "adversarial";
    }
    return "?";
}

StreamKind parse_stream_kind(std::string_view name) {
    for (StreamKind k : {StreamKind::Random, StreamKind::SlidingWindow, StreamKind::Adversarial}) {
        if (stream_kind_name(k) == name) return k;
    }
    throw std::invalid_argument("unknown stream kind '" + std::string(name) + "'");
}

} // namespace dynmatch::bench
