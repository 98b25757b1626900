#pragma once

#include <stdexcept>
#include <string>

namespace pdnf {

/// Domain error raised by every module when a precondition or contract is violated.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Fusion of two certain, mutually exclusive pieces of evidence.
class ContradictoryEvidence : public Error {
 public:
  explicit ContradictoryEvidence(const std::string& what) : Error(what) {}
};

}  // namespace pdnf
