#pragma once

#include <stdexcept>
#include <string>

namespace atomspec {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed DSL or JSON input; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}

  int line;
  int col;
};

// Contract violation by the caller: mixed contexts, non-composable paths,
// non-admissible relations where admissibility is required, and the like.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input outside the supported (ring, generator-shape, ...) envelope.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// An enumeration guard tripped.  Guards fail loudly with counts.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, long long count_, long long limit_)
      : Error(what + ": count " + std::to_string(count_) +
              " exceeds limit " + std::to_string(limit_)),
        count(count_),
        limit(limit_) {}

  long long count;
  long long limit;
};

}  // namespace atomspec
