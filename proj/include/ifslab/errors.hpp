#ifndef IFSLAB_ERRORS_HPP
#define IFSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ifslab {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Argument outside the operation's domain (t <= 0, n = 0, bad word, ...).
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  // Requested enumeration level exceeds the configured cap (IFSLAB_MAX_LEVEL).
  class LevelCapError : public DomainError {
   public:
    using DomainError::DomainError;
  };

  // Denominator cx + d vanishes at a point, or changes sign on an interval.
  class PoleError : public Error {
   public:
    using Error::Error;
  };

  class DegenerateError : public Error {
   public:
    using Error::Error;
  };

  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  class NumericError : public Error {
   public:
    using Error::Error;
  };

}  // namespace ifslab

#endif  // IFSLAB_ERRORS_HPP
