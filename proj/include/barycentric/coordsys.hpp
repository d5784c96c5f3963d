#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "barycentric/baryterm.hpp"
#include "barycentric/geometry.hpp"

namespace bary {

// Containment slack accepted by every evaluation entry point.
inline constexpr double kDomainTol = 1e-9;

// Tabulated values at sample points: rows[k] belongs to points[k].
struct SampleTable {
  std::vector<Point> points;
  std::vector<std::vector<double>> rows;

  // Row whose point lies within tol of p, or nullptr.
  const std::vector<double>* find(const Point& p, double tol = 1e-12) const;
};

// CSV with header "x,y,b1,...,bn". Throws Error{MalformedInput} on a bad
// header, a short row or an unreadable number.
SampleTable read_table_csv(std::istream& in);
void write_table_csv(std::ostream& out, const SampleTable& table);

// Barycentric coordinates b_1..b_n on a polygon: triangulation, Wachspress,
// pointwise blends of those, constants, or an external table. Immutable and
// cheap to copy.
class CoordinateSystem {
 public:
  enum class Kind { Triangulation, Wachspress, Constant, Blend, External };

  static CoordinateSystem triangulation(Polygon poly);
  static CoordinateSystem wachspress(Polygon poly);
  // The same raw vector at every point; used to exhibit verifier failures.
  static CoordinateSystem constant(Polygon poly, std::vector<double> values);
  // Pointwise (1-q) a + q b. Throws PolygonMismatch.
  static CoordinateSystem blend(Weight q, const CoordinateSystem& a, const CoordinateSystem& b);
  // Rows are stored unchecked so that broken data can be verified.
  static CoordinateSystem external(Polygon poly, SampleTable table);

  Kind kind() const noexcept;
  const Polygon& polygon() const noexcept;
  // Non-null only for External.
  const SampleTable* table() const noexcept;

  // Raw coefficient vector, before any renormalization. Throws
  // PointOutsidePolygon, or SampleNotTabulated for an External system.
  std::vector<double> evaluate_raw(const Point& p) const;
  ConvexCombination evaluate(const Point& p) const;

 private:
  struct Impl;
  explicit CoordinateSystem(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// First fan triangle containing p wins; the 3x3 barycentric solution is
// scattered into a length-n vector. Throws PointOutsidePolygon.
ConvexCombination triangulation_coords(const Polygon& poly, const Point& p);
std::vector<double> triangulation_coords_raw(const Polygon& poly, const Point& p);

// w_i = C(v_{i-1}, v_i, v_{i+1}) / (A(v_{i-1}, v_i, p) A(v_i, v_{i+1}, p)),
// normalized. Boundary points use the edge limit. Throws PointOutsidePolygon.
ConvexCombination wachspress_coords(const Polygon& poly, const Point& p);
std::vector<double> wachspress_coords_raw(const Polygon& poly, const Point& p);

struct PropertyReport {
  std::size_t samples_checked = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  Point worst_point;
};

// max |sum_i b_i(p) - 1| over points, measured on raw evaluations.
PropertyReport verify_partition_of_unity(const CoordinateSystem& cs, std::span<const Point> points, double tol,
                                         unsigned threads = 1);
// max || sum_i b_i(p) v_i - p || over points.
PropertyReport verify_linear_precision(const CoordinateSystem& cs, std::span<const Point> points, double tol,
                                       unsigned threads = 1);
// max |b_i(v_j) - delta_ij| over all vertex pairs. An External system must
// tabulate every vertex.
PropertyReport verify_lagrange(const CoordinateSystem& cs, double tol);

}  // namespace bary
