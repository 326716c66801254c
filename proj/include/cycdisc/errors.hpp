#pragma once

#include <stdexcept>
#include <string>

namespace cycdisc {

// Malformed text input (graph, CI, partition or instance documents).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive routine was asked to run beyond its size limit.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cycdisc
