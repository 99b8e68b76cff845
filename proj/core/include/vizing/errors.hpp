#ifndef VIZING_ERRORS_HPP
#define VIZING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vizing {

// Base for everything this library throws on contract violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- graph parsing / generation ---
struct MalformedLine : Error {
    int line;
    MalformedLine(int line_, const std::string& text)
        : Error("malformed line " + std::to_string(line_) + ": " + text), line(line_) {}
};
struct DuplicateEdge : Error {
    int line;
    DuplicateEdge(int line_, const std::string& text)
        : Error("duplicate edge at line " + std::to_string(line_) + ": " + text), line(line_) {}
};
struct SelfLoop : Error {
    int line;
    SelfLoop(int line_, const std::string& text)
        : Error("self-loop at line " + std::to_string(line_) + ": " + text), line(line_) {}
};
struct InfeasibleParameters : Error {
    explicit InfeasibleParameters(const std::string& msg) : Error(msg) {}
};

// --- coloring operations ---
struct EmptyMissingSet : Error {
    explicit EmptyMissingSet(const std::string& msg) : Error(msg) {}
};
struct NotShiftable : Error {
    int step;  // pair index within the chain, -1 for a lone pair
    NotShiftable(const std::string& msg, int step_ = -1)
        : Error(msg + (step_ >= 0 ? " (at step " + std::to_string(step_) + ")" : "")), step(step_) {}
};
struct NotHappy : Error {
    explicit NotHappy(const std::string& msg) : Error(msg) {}
};
struct DegreeTwoStart : Error {
    explicit DegreeTwoStart(const std::string& msg) : Error(msg) {}
};

// --- fan / chain builders ---
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};

// Raised when a code path the correctness proofs rule out is reached anyway.
struct InternalInvariantViolation : Error {
    explicit InternalInvariantViolation(const std::string& msg) : Error(msg) {}
};
struct InternalFailReached : InternalInvariantViolation {
    explicit InternalFailReached(const std::string& msg) : InternalInvariantViolation(msg) {}
};

// --- distributed simulator ---
struct SnapshotViolation : Error {
    explicit SnapshotViolation(const std::string& msg) : Error(msg) {}
};

}  // namespace vizing

#endif
