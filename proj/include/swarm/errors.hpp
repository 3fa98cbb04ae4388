#pragma once

#include <stdexcept>
#include <string>

namespace swarm {

/// Invalid user-supplied configuration (scenario keys, parameter constraints).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// I/O or other failure while a run is in progress.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swarm
