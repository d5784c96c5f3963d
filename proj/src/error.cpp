#include "barycentric/error.hpp"

namespace bary {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::InvalidWeight: return "WeightOutOfRange";
    case ErrorKind::InvalidCombination: return "InvalidCombination";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::UnboundGenerator: return "UnboundGenerator";
    case ErrorKind::LeafIndexOutOfRange: return "LeafIndexOutOfRange";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::PointOutsidePolygon: return "PointOutsidePolygon";
    case ErrorKind::PolygonMismatch: return "PolygonMismatch";
    case ErrorKind::SelfMapEscapesPolygon: return "SelfMapEscapesPolygon";
    case ErrorKind::NotAffinelyConsistent: return "NotAffinelyConsistent";
    case ErrorKind::SampleNotTabulated: return "SampleNotTabulated";
  }
  return "Unknown";
}

bool is_domain_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PointOutsidePolygon:
    case ErrorKind::PolygonMismatch:
    case ErrorKind::SelfMapEscapesPolygon:
    case ErrorKind::NotAffinelyConsistent:
    case ErrorKind::SampleNotTabulated:
      return true;
    default:
      return false;
  }
}

}  // namespace bary
