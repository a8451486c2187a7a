#pragma once

#include <stdexcept>
#include <string>

namespace norllm {

// Exit-code mapping used by the CLI: validation -> 1, I/O -> 2, precondition -> 3.

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace norllm
