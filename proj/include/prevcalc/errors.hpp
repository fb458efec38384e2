#ifndef PREVCALC_ERRORS_HPP
#define PREVCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prevcalc {

/// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed result failed its runtime verification. Always a bug.
class PostconditionFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FlavorMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// shadow_gauge on G with G(1) > 1: the shadow contains the zero function.
class ImproperShadow : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace prevcalc

#endif  // PREVCALC_ERRORS_HPP
