// Core error and domain types shared by every module.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ektau {

// Failure kinds surfaced by library operations.  Each operation documents
// which kinds it can raise.
enum class ErrorKind {
  DomainViolation,          // point outside the base chart, bad parameter
  SpacelikeViolation,       // Lorentzian gradient leaves the spacelike range
  IntegrabilityFailure,     // dual 1-form is not closed at the tolerance
  RegraphDivergence,        // Newton regraphing failed to converge
  NotAGraph,                // operation requires a graph backend
  OutOfWindow,              // evaluation point outside the usable window
  NotTimeOrientationPreserving,  // isometry flips the time orientation
  UnsupportedWindow,        // window incompatible with a fixture's domain
  UsageError,               // bad CLI/config input
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::SpacelikeViolation: return "SpacelikeViolation";
    case ErrorKind::IntegrabilityFailure: return "IntegrabilityFailure";
    case ErrorKind::RegraphDivergence: return "RegraphDivergence";
    case ErrorKind::NotAGraph: return "NotAGraph";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::NotTimeOrientationPreserving:
      return "NotTimeOrientationPreserving";
    case ErrorKind::UnsupportedWindow: return "UnsupportedWindow";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// Closed axis-aligned rectangle [x0,x1] x [y0,y1] in the base coordinates.
struct Window {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  static Window centered(double half_x, double half_y) {
    return Window{-half_x, half_x, -half_y, half_y};
  }
  static Window square(double half) { return centered(half, half); }

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(double x, double y, double slack = 0.0) const {
    return x >= x0 - slack && x <= x1 + slack && y >= y0 - slack &&
           y <= y1 + slack;
  }
  // Window shrunk by `margin` on every side.
  Window shrunk(double margin) const {
    return Window{x0 + margin, x1 - margin, y0 + margin, y1 - margin};
  }
};

inline double sq(double t) { return t * t; }

}  // namespace ektau
