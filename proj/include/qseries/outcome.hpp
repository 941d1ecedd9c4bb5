#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qseries {

enum class Status { pass, fail, not_comparable, skipped };

inline std::string_view to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_comparable: return "not_comparable";
    case Status::skipped: return "skipped";
    }
    return "?";
}

inline Status status_from_string(std::string_view s)
{
    if (s == "pass") return Status::pass;
    if (s == "fail") return Status::fail;
    if (s == "not_comparable") return Status::not_comparable;
    if (s == "skipped") return Status::skipped;
    throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

// First index at which a check broke. Values are decimal strings so that
// big integers and residues share one representation.
struct Witness {
    std::uint64_t n = 0;
    std::string expected;
    std::string actual;

    friend bool operator==(const Witness &, const Witness &) = default;
};

struct VerificationOutcome {
    Status status = Status::pass;
    std::optional<Witness> witness;
    std::string reason;
    std::uint64_t checked_count = 0;
    double wall_ms = 0.0;

    bool passed() const { return status == Status::pass; }

    static VerificationOutcome pass_with(std::uint64_t checked)
    {
        VerificationOutcome o;
        o.checked_count = checked;
        return o;
    }

    static VerificationOutcome fail_at(std::uint64_t n, std::string expected, std::string actual,
                                       std::uint64_t checked)
    {
        VerificationOutcome o;
        o.status = Status::fail;
        o.witness = Witness{n, std::move(expected), std::move(actual)};
        o.checked_count = checked;
        return o;
    }

    static VerificationOutcome with_status(Status s, std::string reason)
    {
        VerificationOutcome o;
        o.status = s;
        o.reason = std::move(reason);
        return o;
    }
};

} // namespace qseries
