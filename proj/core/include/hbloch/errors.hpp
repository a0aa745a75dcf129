#pragma once

#include <stdexcept>

namespace hbloch {

/// Raised when an argument lies outside the domain of an operation
/// (points outside the open unit disk, dilation factors outside (0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a documented precondition on the input mapping fails.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Tristate { False, True, Undecided };

constexpr const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::False: return "FALSE";
    case Tristate::True: return "TRUE";
    case Tristate::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

}  // namespace hbloch
