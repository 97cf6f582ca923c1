#pragma once

#include <stdexcept>
#include <string>

namespace infprob {

// Thrown when an enumeration or transform exceeds its configured cap.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched ground-set sizes.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Partitions not comparable in the requested order.
struct OrderError : std::runtime_error {
    explicit OrderError(const std::string& msg) : std::runtime_error(msg) {}
};

// A marginal table is missing a queried entry.
struct IncompleteMarginalError : std::runtime_error {
    explicit IncompleteMarginalError(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated precondition does not hold for the given input.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Closed form degenerates (coincident roots); caller should use a recurrence.
struct DegenerateRootError : std::runtime_error {
    explicit DegenerateRootError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input document.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace infprob
