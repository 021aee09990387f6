#pragma once

#include <stdexcept>
#include <string>

namespace cutr {

/// Malformed concrete syntax (formulas, sequents, proof files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// A formula outside the signature of the selected calculus.
class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was invoked on arguments violating its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proof-transformation invariant failed. Always a bug signal.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cutr
