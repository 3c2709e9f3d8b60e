#pragma once

#include <stdexcept>
#include <string>

namespace rp2bundle {

// Sampled sections must store antipodal partners at paired indices (2k, 2k+1).
struct PairingError : std::runtime_error {
  explicit PairingError(const std::string& msg) : std::runtime_error(msg) {}
};

// A vector handed to the transport routines does not lie in the fiber.
struct FiberError : std::runtime_error {
  explicit FiberError(const std::string& msg) : std::runtime_error(msg) {}
};

// Consecutive path points too far apart for the discrete transport to be trusted.
struct StepError : std::runtime_error {
  explicit StepError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rp2bundle
