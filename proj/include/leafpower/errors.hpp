#pragma once

#include <stdexcept>
#include <string>

namespace leafpower {

/// An exhaustive search was asked to run above its configured size cap.
class CapExceeded : public std::length_error {
public:
    CapExceeded(std::size_t size, int cap)
        : std::length_error("instance size " + std::to_string(size) + " exceeds cap " + std::to_string(cap)) {}
};

/// A construction produced an object that failed its own verifier.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace leafpower
