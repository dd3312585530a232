#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qgame {

// Failure with a stable machine-readable kind ("dimension", "not_invertible",
// ...). The CLI serializes these as {"error": kind, "message": ...} on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& message) {
  throw Error(std::move(kind), message);
}

}  // namespace qgame
