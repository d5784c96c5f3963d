#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bary {

enum class ErrorKind {
  // Input validation.
  TooFewVertices,
  NonFiniteCoordinate,
  NotConvex,
  DuplicateVertex,
  InvalidWeight,
  InvalidCombination,
  MalformedInput,
  // Term calculus.
  UnboundGenerator,
  LeafIndexOutOfRange,
  ZeroCoefficient,
  // Geometric domain.
  PointOutsidePolygon,
  PolygonMismatch,
  SelfMapEscapesPolygon,
  NotAffinelyConsistent,
  SampleNotTabulated,
};

std::string_view to_string(ErrorKind kind);

// True for kinds that describe a point or map leaving the polygon, as opposed
// to malformed input.
bool is_domain_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bary
