#pragma once

#include <stdexcept>
#include <string>

namespace hooprank {

// Bad parameters or malformed requests, caught before any work starts.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures while processing otherwise plausible inputs: unreadable or
// corrupt files, degenerate data, fitting failures. CLI exit code 2.
class ProcessingError : public std::runtime_error {
 public:
  explicit ProcessingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Stream/text parse failure; remembers the 1-based physical line.
class ParseError : public ProcessingError {
 public:
  ParseError(const std::string& msg, int line)
      : ProcessingError(msg + " at line " + std::to_string(line)), line_(line) {}
  explicit ParseError(const std::string& msg) : ProcessingError(msg), line_(0) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace hooprank
