#pragma once

#include <stdexcept>
#include <string>

namespace hlvu {

// Base of every exception thrown by the library. Parsers of graph files do
// not throw for content problems; they report ParseDiagnostic values instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OntologyError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

// Thrown by add_edge for an exact or inverse duplicate of a stored link.
class DuplicateEdgeError : public GraphError {
 public:
  using GraphError::GraphError;
};

// Precondition violations of oracle queries (unknown constants, empty patterns).
class QueryError : public Error {
 public:
  using Error::Error;
};

// Query generation ran out of rejection-sampling attempts.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Fatal problem with an XML query, key or submission document.
class ProtocolError : public Error {
 public:
  ProtocolError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Scores from different movies were mixed in one aggregate.
class ScoringError : public Error {
 public:
  using Error::Error;
};

}  // namespace hlvu
