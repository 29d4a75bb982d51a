#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apbez {

enum class ErrorCode {
  InvalidMagnitude,       // r1 or r2 not strictly positive
  Domain,                 // argument outside the operation's domain
  NearVerticalTangent,    // x'(t) too small for a spatial derivative
  DegenerateDenominator,  // area constraint cannot determine the magnitude
  InfeasibleMagnitude,    // area constraint solved to a non-positive magnitude
  InsufficientData,       // not enough usable records to fit an order
  Catalog,                // unknown builtin target
  DegenerateSegment,      // zero-length chord
  NeedsRefinement,        // segment has no admissible interpolant; bisect it
  Infeasible,             // refinement budget exhausted
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidMagnitude: return "invalid-magnitude";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NearVerticalTangent: return "near-vertical-tangent";
    case ErrorCode::DegenerateDenominator: return "degenerate-denominator";
    case ErrorCode::InfeasibleMagnitude: return "infeasible-magnitude";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::Catalog: return "catalog";
    case ErrorCode::DegenerateSegment: return "degenerate-segment";
    case ErrorCode::NeedsRefinement: return "needs-refinement";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::InvalidConfig: return "invalid-config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the piecewise driver once bisection gives up; carries the
/// offending parameter interval.
class InfeasibleError : public Error {
 public:
  InfeasibleError(double s0, double s1, const std::string& why)
      : Error(ErrorCode::Infeasible,
              "no admissible interpolant on [" + std::to_string(s0) + ", " +
                  std::to_string(s1) + "]: " + why),
        s0_(s0),
        s1_(s1) {}

  double s0() const noexcept { return s0_; }
  double s1() const noexcept { return s1_; }

 private:
  double s0_, s1_;
};

}  // namespace apbez
