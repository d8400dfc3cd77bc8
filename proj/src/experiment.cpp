#include <dynmatch/bench.hpp>

#include <chrono>
#include <cstdio>

#include <dynmatch/oracle.hpp>

namespace dynmatch::bench {

std::size_t default_audit_cadence(std::size_t T) { return T <= 2000 ? 1 : 100; }

RunResult run_experiment(const UpdateStream& stream, const RunConfig& config) {
    RunResult result;
    std::unique_ptr<Subject> subject;
    try {
        validate_stream(stream);
        subject = make_subject(config.algorithm, stream.n, config.epsilon);
    } catch (const std::exception& e) {
        result.exit_code = kExitIo;
        result.message = e.what();
        return result;
    }
    const std::size_t T = stream.events.size();
    const std::size_t cadence = config.audit_every.value_or(default_audit_cadence(T));
    result.rows.reserve(T);
    for (std::size_t i = 0; i < T; ++i) {
        const Update& e = stream.events[i];
        MetricsRow row;
        row.idx = i + 1;
        row.update = e;
        auto start = std::chrono::steady_clock::now();
        try {
            subject->apply(e);
        } catch (const std::exception& ex) {
            result.exit_code = kExitAudit;
            result.message = "update " + std::to_string(i + 1) + ": " + ex.what();
            return result;
        }
        auto stop = std::chrono::steady_clock::now();
        if (config.timing) row.ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
        row.size = subject->size();
        row.frac = subject->fractional_value();
        row.ledger = subject->ledger();
        row.ops = subject->last_ops();

        const bool last = i + 1 == T;
        if (cadence > 0 && ((i + 1) % cadence == 0 || last)) {
            ++result.audits;
            AuditReport report = subject->audit();
            if (!report) {
                result.rows.push_back(row);
                result.exit_code = kExitAudit;
                result.message = "audit failed after update " + std::to_string(i + 1) + ": " + report.violation;
                return result;
            }
        }
        if (config.oracle_every > 0 && (i + 1) % config.oracle_every == 0) {
            AuditReport report;
            try {
                auto [value, ratio] = subject->sample_oracle(report);
                row.oracle = value;
                row.ratio = ratio;
                ++result.oracle_samples;
                result.max_ratio = std::max(result.max_ratio, ratio);
            } catch (const oracle::CapExceeded& ex) {
                result.exit_code = kExitOracleCap;
                result.message = ex.what();
                return result;
            }
            if (!report) {
                result.rows.push_back(row);
                result.exit_code = kExitAudit;
                result.message = "ratio check failed after update " + std::to_string(i + 1) + ": " + report.violation;
                return result;
            }
        }
        result.rows.push_back(row);
    }
    return result;
}

std::string to_csv(const std::vector<MetricsRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    char buf[64];
    auto real = [&buf](double x) {
        std::snprintf(buf, sizeof buf, "%.10g", x);
        return std::string(buf);
    };
    for (const MetricsRow& r : rows) {
        out += std::to_string(r.idx);
        out += ',';
        out += static_cast<char>(r.update.op);
        out += ',' + std::to_string(r.update.u) + ',' + std::to_string(r.update.v);
        out += ',' + std::to_string(r.size);
        out += ',' + (r.frac ? real(*r.frac) : std::string());
        out += ',' + std::to_string(r.ledger.weight_changes);
        out += ',' + std::to_string(r.ledger.level_moves);
        out += ',' + std::to_string(r.ledger.refills);
        out += ',' + std::to_string(r.ledger.kernel_churn);
        out += ',' + std::to_string(r.ops);
        out += ',' + (r.oracle ? std::to_string(*r.oracle) : std::string());
        out += ',' + (r.ratio ? real(*r.ratio) : std::string());
        out += ',' + (r.ns ? std::to_string(*r.ns) : std::string());
        out += '\n';
    }
    return out;
}

} // namespace dynmatch::bench
