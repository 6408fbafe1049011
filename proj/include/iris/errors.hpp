#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace iris {

/// Error with a stable machine-readable code ("EmptyPopulation",
/// "DimensionMismatch", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void raise(std::string code, const std::string& message) {
  throw Error(std::move(code), message);
}

}  // namespace iris
