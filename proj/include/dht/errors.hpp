#pragma once

#include <stdexcept>
#include <string>

namespace dht {

/// Thrown when an iterative solver fails to converge or a quantity leaves the
/// range representable by the implementation. Carries the bracket/state that
/// was being probed.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed configuration input (scenario files, CLI values).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dht
