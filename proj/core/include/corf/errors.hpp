#pragma once

#include <stdexcept>

namespace corf {

// Error taxonomy behind the CLI exit-code contract:
// 0 success, 1 verification failure, 2 input error, 3 numerical failure.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct VerificationError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

// The translation axis lies inside a tessellation mirror in a way the
// construction cannot resolve, or the axis data is numerically unusable.
struct DegenerateAxisError : NumericalError {
  using NumericalError::NumericalError;
};

// A certificate residual fell between the identity tolerance and the
// certification margin; never accepted silently.
struct InconclusiveCertificateError : VerificationError {
  using VerificationError::VerificationError;
};

}  // namespace corf
