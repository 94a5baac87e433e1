#ifndef IFCA_ERROR_HPP
#define IFCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ifca {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A mu or nu component lies outside [0, 1].
class OutOfRange : public Error {
public:
  using Error::Error;
};

// mu + nu exceeds 1, so no hesitation degree exists.
class SimplexViolation : public Error {
public:
  using Error::Error;
};

// The input stream is not a well-formed situation file.
class ParseError : public Error {
public:
  using Error::Error;
};

// Reading or writing a file failed at the OS level.
class IoError : public Error {
public:
  using Error::Error;
};

class UnknownAgent : public Error {
public:
  using Error::Error;
};

class UnknownIssue : public Error {
public:
  using Error::Error;
};

// An issue bundle with fewer than two issues was supplied.
class BundleTooSmall : public Error {
public:
  using Error::Error;
};

// An agent group with fewer than two agents was supplied.
class GroupTooSmall : public Error {
public:
  using Error::Error;
};

class EmptyGroup : public Error {
public:
  using Error::Error;
};

// sigma must lie strictly inside (0, 0.5).
class InvalidSigma : public Error {
public:
  using Error::Error;
};

// A loss component is zero, so the threshold formulas collapse.
class DegenerateLosses : public Error {
public:
  using Error::Error;
};

// An adjustment plan violates one of its structural constraints.
class PlanInvalid : public Error {
public:
  using Error::Error;
};

// k is outside 1 <= k <= (m^2 - m) / 2.
class InvalidK : public Error {
public:
  using Error::Error;
};

} // namespace ifca

#endif // IFCA_ERROR_HPP
