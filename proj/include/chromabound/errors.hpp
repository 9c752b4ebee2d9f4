#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chromabound {

// Malformed textual input. `offset` is the byte offset of the offending
// character within the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A configured enumeration or size cap was hit. Raised instead of returning a
// truncated or heuristic answer.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chromabound
