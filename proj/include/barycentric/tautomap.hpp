#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "barycentric/baryterm.hpp"
#include "barycentric/coordsys.hpp"
#include "barycentric/geometry.hpp"

namespace bary {

// Must be a pure function.
using PointMap = std::function<Point(const Point&)>;

// x -> linear * x + offset, linear stored row-major.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(std::array<double, 4> linear, Point offset);

  static AffineMap identity() { return {}; }

  Point operator()(const Point& p) const {
    return {linear_[0] * p.x + linear_[1] * p.y + offset_.x, linear_[2] * p.x + linear_[3] * p.y + offset_.y};
  }

  const std::array<double, 4>& linear() const noexcept { return linear_; }
  const Point& offset() const noexcept { return offset_; }

  // Largest absolute difference over the six coefficients.
  double max_coefficient_difference(const AffineMap& other) const;

 private:
  std::array<double, 4> linear_{1.0, 0.0, 0.0, 1.0};
  Point offset_;
};

// A map known only at finitely many points. Calling it anywhere else throws
// SampleNotTabulated.
class TabulatedMap {
 public:
  explicit TabulatedMap(std::vector<std::pair<Point, Point>> pairs) : pairs_(std::move(pairs)) {}
  Point operator()(const Point& p) const;

 private:
  std::vector<std::pair<Point, Point>> pairs_;
};

// Slack allowed on the raw component sum of a partition of unity.
inline constexpr double kPartitionSumTol = 1e-9;

// f = (f_1..f_n) with f_i(a) >= 0 and sum_i f_i(a) = 1 on a polygon.
class PartitionOfUnity {
 public:
  enum class Kind { FromCoordinateSystem, Constant, Composed, Blend, Table };

  static PartitionOfUnity from_coordinates(CoordinateSystem cs);
  // Throws MalformedInput if the length differs from the vertex count.
  static PartitionOfUnity constant(Polygon poly, const ConvexCombination& values);
  // a -> coords(g(a)); see pou_from_selfmap.
  static PartitionOfUnity composed(CoordinateSystem coords, PointMap g);
  // Rows are not checked; classify reports any violation.
  static PartitionOfUnity table(Polygon poly, SampleTable table);

  Kind kind() const noexcept;
  const Polygon& polygon() const noexcept;
  const SampleTable* sample_table() const noexcept;

  // Throws PointOutsidePolygon, SelfMapEscapesPolygon, SampleNotTabulated.
  std::vector<double> evaluate_raw(const Point& a) const;
  // Also throws InvalidCombination if the raw value breaks the partition of
  // unity invariant (sum within 1e-9 of 1, components in [-1e-12, 1+1e-12]).
  std::vector<double> evaluate(const Point& a) const;

 private:
  friend PartitionOfUnity blend(const PartitionOfUnity& f, const PartitionOfUnity& g, Weight q);
  struct Impl;
  explicit PartitionOfUnity(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// T_f(a) = sum_i f_i(a) v_i
Point tautological(const PartitionOfUnity& f, const Point& a);

// Pointwise (1-q) f + q g. Throws PolygonMismatch.
PartitionOfUnity blend(const PartitionOfUnity& f, const PartitionOfUnity& g, Weight q);

// p_i = coords_i o g, a partition of unity whose tautological map is g.
// Evaluation throws SelfMapEscapesPolygon when g(a) leaves the polygon.
PartitionOfUnity pou_from_selfmap(CoordinateSystem coords, PointMap g);

// Nonlinear self-map a -> sum_i phi(coords(a))_i v_i with
// phi(l)_i = l_{perm[i]}^exponent / sum_j l_j^exponent. The image is a convex
// combination of vertices, so it always stays in the polygon.
PointMap distortion_selfmap(CoordinateSystem coords, double exponent, std::vector<std::size_t> perm);

struct ClassificationFlags {
  bool in_set1 = false;
  bool lagrange = false;
  bool taut_maps_into_polygon = false;
  bool in_K_pi = false;
  double set1_violation = 0.0;
  double lagrange_violation = 0.0;
  double containment_violation = 0.0;
  double identity_violation = 0.0;
};

// Sample-based membership in the chain of subalgebras
//   K_pi <= Set1_LP <= Set1.
// The tautological-map checks run over the vertices followed by the samples.
// in_K_pi also requires the other three flags, so it implies lagrange and
// taut_maps_into_polygon at any tolerance.
ClassificationFlags classify(const PartitionOfUnity& f, std::span<const Point> samples, double tol,
                             unsigned threads = 1);

// The affine map sending v_j to images[j], solved from the first three
// vertices. Throws NotAffinelyConsistent if a later vertex misses its image
// by more than 1e-9, and MalformedInput on a length mismatch.
AffineMap affine_extension(const Polygon& poly, std::span<const Point> images);

struct MeanSample {
  Weight p;
  Point a;
  Point b;
};

// max || m(p(a,b)) - p(m(a), m(b)) || over the samples; worst_point is the
// sample's a.
PropertyReport check_homomorphism(const PointMap& m, std::span<const MeanSample> samples, double tol);
PropertyReport check_homomorphism(const AffineMap& m, std::span<const MeanSample> samples, double tol);

// How far m pushes the vertices and then the samples outside the polygon.
PropertyReport check_maps_into(const Polygon& poly, const PointMap& m, std::span<const Point> samples, double tol);

}  // namespace bary
