#pragma once

#include <stdexcept>
#include <string>

namespace qsing {

// Domain error carrying a machine-readable kind (e.g. "NonUniqueWeights").
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, kind + ": " + message);
}

// Broken internal invariant; never expected on valid input.
[[noreturn]] inline void invariant_violation(const std::string& message) {
    throw Error("InternalInvariant", "internal invariant violated: " + message);
}

} // namespace qsing
