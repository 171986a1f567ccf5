#pragma once

#include <stdexcept>
#include <string>

namespace hankel_sos {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input violates a documented invariant (bad exponent, asymmetric
// generating vector, v4 != 1, malformed file, ...).
class InvalidInputError : public Error {
  public:
    explicit InvalidInputError(const std::string& what) : Error(what) {}
};

// A numerical routine failed to converge or hit an unusable pivot.
class NumericalError : public Error {
  public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

class SingularSystemError : public NumericalError {
  public:
    explicit SingularSystemError(const std::string& what) : NumericalError(what) {}
};

// Cholesky-style extraction was asked to factor a matrix that is not
// positive semidefinite within tolerance.
class NotPsdError : public NumericalError {
  public:
    explicit NotPsdError(const std::string& what) : NumericalError(what) {}
};

// The critical-value search exhausted its doubling budget without ever
// finding a certificate.
class SearchFailureError : public Error {
  public:
    explicit SearchFailureError(const std::string& what) : Error(what) {}
};

}  // namespace hankel_sos
