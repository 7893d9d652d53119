#pragma once

#include <stdexcept>
#include <string>

namespace repstat {

/// Bad input: malformed partition, out-of-range parameter, empty data.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sweep was asked for above its configured partition cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int requested, int cap)
      : std::runtime_error("n = " + std::to_string(requested) +
                           " exceeds the sweep cap of " + std::to_string(cap) +
                           " (raise it with --cap)"),
        requested_(requested),
        cap_(cap) {}

  int requested() const noexcept { return requested_; }
  int cap() const noexcept { return cap_; }

 private:
  int requested_;
  int cap_;
};

/// exp/log on the unipotent group need 1/k! for k up to the nilpotency class.
class UnsupportedCharacteristic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Only prime fields are implemented for matrix enumeration.
class UnsupportedField : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An identity that must hold exactly did not. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace repstat
