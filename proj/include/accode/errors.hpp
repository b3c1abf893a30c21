#pragma once

#include <stdexcept>
#include <string>

namespace accode {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (e.g. symbol 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A reader ran out of bits.
class EndOfStream : public Error {
 public:
  using Error::Error;
};

// A frequency total exceeds what the range coder can represent exactly.
class PrecisionOverflow : public Error {
 public:
  using Error::Error;
};

// A compressed stream is truncated or does not follow the container format.
class MalformedStream : public Error {
 public:
  using Error::Error;
};

// A source does not belong to the envelope class it is benchmarked against.
class MembershipError : public Error {
 public:
  using Error::Error;
};

// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

// An object was used in a state that does not allow the call
// (e.g. pushing into a finished encoder).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace accode
