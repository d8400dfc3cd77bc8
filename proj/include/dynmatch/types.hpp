#ifndef DYNMATCH_TYPES_HPP
#define DYNMATCH_TYPES_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace dynmatch {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Unordered node pair stored with u < v.
struct EdgeKey {
    NodeId u = 0;
    NodeId v = 0;

    static EdgeKey of(NodeId a, NodeId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }
    std::uint64_t packed() const { return (std::uint64_t(u) << 32) | v; }

    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& e) const noexcept {
        return std::hash<std::uint64_t>{}(e.packed());
    }
};

/// Outcome of a structural self-check. Keeps only the first violation.
struct AuditReport {
    bool ok = true;
    std::string violation;

    void fail(std::string message) {
        if (ok) {
            ok = false;
            violation = std::move(message);
        }
    }
    void merge(const AuditReport& other) {
        if (!other.ok) fail(other.violation);
    }
    explicit operator bool() const { return ok; }
};

} // namespace dynmatch

#endif
