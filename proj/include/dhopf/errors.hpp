#pragma once

#include <stdexcept>
#include <string>

namespace dhopf {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter set violates a structural requirement (b = 0, c = 0, d = k, ...).
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

/// No imaginary-axis crossing exists for the requested configuration.
class NoCrossing : public Error {
 public:
  using Error::Error;
};

/// Neither arccos branch reproduces a characteristic root; the coefficient
/// set fed to the ladder is inconsistent.
class BranchFailure : public Error {
 public:
  using Error::Error;
};

/// h'(z0) vanished (or the crossing root is multiple); no transversality
/// conclusion can be drawn.
class DegenerateCrossing : public Error {
 public:
  using Error::Error;
};

/// A characteristic root sits on (or hugs) the counting contour even after
/// perturbation retries.
class ContourOnRoot : public Error {
 public:
  using Error::Error;
};

/// The winding integral refused to settle near an integer.
class NonIntegerWinding : public Error {
 public:
  using Error::Error;
};

/// Newton continuation lost the tracked root at the minimum step size.
class LostRoot : public Error {
 public:
  using Error::Error;
};

/// Integration step violates the method-of-steps constraints.
class StepTooLarge : public Error {
 public:
  using Error::Error;
};

/// Sample time outside the stored trajectory (including its history segment).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Trajectory too short for the requested signal analysis.
class TooShort : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario/report text (carries line information in the message).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input with invalid field values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while reading/writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dhopf
