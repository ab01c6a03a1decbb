#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mucalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax errors carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : Error("at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace mucalc
