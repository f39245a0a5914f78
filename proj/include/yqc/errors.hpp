#pragma once

#include <stdexcept>
#include <string>

namespace yqc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolvent of the excited manifold requested closer than delta_floor
// to an excited eigenvalue.
struct SingularExcitedManifold : Error {
  using Error::Error;
};

// Adiabatic level tracking lost a curve between two grid points.
struct TrackingError : Error {
  TrackingError(const std::string& msg, double lo, double hi)
      : Error(msg), b_lo(lo), b_hi(hi) {}
  double b_lo;
  double b_hi;
};

// Level differences of a phase profile are not pairwise distinct.
struct DistinctnessViolation : Error {
  using Error::Error;
};

// |delta s^x - delta s^z| below tolerance; the magic-angle closed form
// is undefined at this point.
struct DegenerateCoefficients : Error {
  using Error::Error;
};

// Dominant-character manifold assignment is ambiguous.
struct AmbiguousCharacter : Error {
  using Error::Error;
};

// An operation that requires a feasible operating point was given an
// infeasible one; the message names the failed condition.
struct InfeasiblePoint : Error {
  using Error::Error;
};

// Sinusoid fit on a non-oscillatory trace.
struct FitError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace yqc
