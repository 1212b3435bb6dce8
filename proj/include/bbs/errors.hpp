#pragma once

#include <stdexcept>
#include <string>

namespace bbs {

// A requested level exceeds the configured memory or dense-solve budget.
class InfeasibleSize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The dense eigensolver failed to converge.
class EigensolverFailure : public std::runtime_error {
 public:
  EigensolverFailure(const std::string& what, unsigned level)
      : std::runtime_error(what), level_(level) {}
  unsigned level() const noexcept { return level_; }

 private:
  unsigned level_;
};

// The chain handed to an operation that needs ergodicity is not ergodic.
class NotErgodic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bbs
