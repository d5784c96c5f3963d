#include "barycentric/tautomap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <variant>

#include "barycentric/error.hpp"
#include "barycentric/parallel.hpp"
#include "barycentric/termlang.hpp"

namespace bary {

AffineMap::AffineMap(std::array<double, 4> linear, Point offset) : linear_(linear), offset_(offset) {
  for (double c : linear_) {
    if (!std::isfinite(c)) throw Error(ErrorKind::NonFiniteCoordinate, "affine map coefficient");
  }
  if (!is_finite(offset_)) throw Error(ErrorKind::NonFiniteCoordinate, "affine map offset");
}

double AffineMap::max_coefficient_difference(const AffineMap& other) const {
  double d = std::max(std::abs(offset_.x - other.offset_.x), std::abs(offset_.y - other.offset_.y));
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(linear_[i] - other.linear_[i]));
  return d;
}

Point TabulatedMap::operator()(const Point& p) const {
  for (const auto& [from, to] : pairs_) {
    if (from == p) return to;
  }
  throw Error(ErrorKind::SampleNotTabulated, "(" + format_double(p.x) + ", " + format_double(p.y) + ") is not tabulated");
}

struct PartitionOfUnity::Impl {
  struct ComposedWith {
    CoordinateSystem coords;
    PointMap g;
  };
  struct BlendOf {
    Weight q;
    PartitionOfUnity f;
    PartitionOfUnity g;
  };
  Kind kind;
  Polygon polygon;
  std::variant<CoordinateSystem, std::vector<double>, ComposedWith, BlendOf, SampleTable> data;
};

PartitionOfUnity PartitionOfUnity::from_coordinates(CoordinateSystem cs) {
  Polygon poly = cs.polygon();
  return PartitionOfUnity(std::make_shared<const Impl>(Impl{Kind::FromCoordinateSystem, std::move(poly), std::move(cs)}));
}

PartitionOfUnity PartitionOfUnity::constant(Polygon poly, const ConvexCombination& values) {
  if (values.size() != poly.size()) {
    throw Error(ErrorKind::MalformedInput, "constant partition needs " + std::to_string(poly.size()) + " values");
  }
  std::vector<double> v(values.coefficients().begin(), values.coefficients().end());
  return PartitionOfUnity(std::make_shared<const Impl>(Impl{Kind::Constant, std::move(poly), std::move(v)}));
}

PartitionOfUnity PartitionOfUnity::composed(CoordinateSystem coords, PointMap g) {
  Polygon poly = coords.polygon();
  return PartitionOfUnity(
      std::make_shared<const Impl>(Impl{Kind::Composed, std::move(poly), Impl::ComposedWith{std::move(coords), std::move(g)}}));
}

PartitionOfUnity PartitionOfUnity::table(Polygon poly, SampleTable table) {
  for (const auto& row : table.rows) {
    if (row.size() != poly.size()) {
      throw Error(ErrorKind::MalformedInput, "table row length differs from the vertex count");
    }
  }
  return PartitionOfUnity(std::make_shared<const Impl>(Impl{Kind::Table, std::move(poly), std::move(table)}));
}

PartitionOfUnity::Kind PartitionOfUnity::kind() const noexcept { return impl_->kind; }
const Polygon& PartitionOfUnity::polygon() const noexcept { return impl_->polygon; }
const SampleTable* PartitionOfUnity::sample_table() const noexcept { return std::get_if<SampleTable>(&impl_->data); }

namespace {

std::string describe(const Point& p) { return "(" + format_double(p.x) + ", " + format_double(p.y) + ")"; }

void require_inside(const Polygon& poly, const Point& a) {
  if (!is_finite(a) || !contains(poly, a, kDomainTol)) {
    throw Error(ErrorKind::PointOutsidePolygon, describe(a) + " is not in the polygon");
  }
}

double partition_violation(std::span<const double> f) {
  double v = std::abs(std::accumulate(f.begin(), f.end(), 0.0) - 1.0);
  for (double c : f) v = std::max({v, -c, c - 1.0});
  return v;
}

}  // namespace

std::vector<double> PartitionOfUnity::evaluate_raw(const Point& a) const {
  switch (impl_->kind) {
    case Kind::FromCoordinateSystem: return std::get<CoordinateSystem>(impl_->data).evaluate_raw(a);
    case Kind::Constant:
      require_inside(impl_->polygon, a);
      return std::get<std::vector<double>>(impl_->data);
    case Kind::Composed: {
      require_inside(impl_->polygon, a);
      const auto& c = std::get<Impl::ComposedWith>(impl_->data);
      const Point image = c.g(a);
      if (!is_finite(image) || !contains(impl_->polygon, image, kDomainTol)) {
        throw Error(ErrorKind::SelfMapEscapesPolygon, describe(a) + " maps to " + describe(image));
      }
      return c.coords.evaluate_raw(image);
    }
    case Kind::Blend: {
      const auto& b = std::get<Impl::BlendOf>(impl_->data);
      auto out = b.f.evaluate_raw(a);
      const auto other = b.g.evaluate_raw(a);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = weighted_mean(b.q, out[i], other[i]);
      return out;
    }
    case Kind::Table: {
      require_inside(impl_->polygon, a);
      const auto* row = std::get<SampleTable>(impl_->data).find(a);
      if (row == nullptr) throw Error(ErrorKind::SampleNotTabulated, describe(a) + " has no table row");
      return *row;
    }
  }
  return {};
}

std::vector<double> PartitionOfUnity::evaluate(const Point& a) const {
  auto f = evaluate_raw(a);
  double sum = std::accumulate(f.begin(), f.end(), 0.0);
  const bool components_ok =
      std::all_of(f.begin(), f.end(), [](double c) { return c >= -kNegativeSlack && c <= 1.0 + kNegativeSlack; });
  if (!components_ok || !(std::abs(sum - 1.0) <= kPartitionSumTol)) {
    throw Error(ErrorKind::InvalidCombination, "value at " + describe(a) + " is not a partition of unity");
  }
  return f;
}

Point tautological(const PartitionOfUnity& f, const Point& a) {
  const auto coeffs = f.evaluate_raw(a);
  const auto& vertices = f.polygon().vertices();
  Point image;
  for (std::size_t i = 0; i < coeffs.size(); ++i) image += coeffs[i] * vertices[i];
  return image;
}

PartitionOfUnity blend(const PartitionOfUnity& f, const PartitionOfUnity& g, Weight q) {
  if (!(f.polygon() == g.polygon())) throw Error(ErrorKind::PolygonMismatch, "blended partitions live on different polygons");
  using Impl = PartitionOfUnity::Impl;
  return PartitionOfUnity(
      std::make_shared<const Impl>(Impl{PartitionOfUnity::Kind::Blend, f.polygon(), Impl::BlendOf{q, f, g}}));
}

PartitionOfUnity pou_from_selfmap(CoordinateSystem coords, PointMap g) {
  return PartitionOfUnity::composed(std::move(coords), std::move(g));
}

PointMap distortion_selfmap(CoordinateSystem coords, double exponent, std::vector<std::size_t> perm) {
  if (perm.size() != coords.polygon().size()) {
    throw Error(ErrorKind::MalformedInput, "permutation length differs from the vertex count");
  }
  return [coords = std::move(coords), exponent, perm = std::move(perm)](const Point& a) {
    const auto l = coords.evaluate(a);
    std::vector<double> phi(l.size());
    double total = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      phi[i] = std::pow(l[perm[i]], exponent);
      total += phi[i];
    }
    const auto& vertices = coords.polygon().vertices();
    Point image;
    for (std::size_t i = 0; i < phi.size(); ++i) image += (phi[i] / total) * vertices[i];
    return image;
  };
}

ClassificationFlags classify(const PartitionOfUnity& f, std::span<const Point> samples, double tol, unsigned threads) {
  const Polygon& poly = f.polygon();
  std::vector<Point> points(poly.vertices().begin(), poly.vertices().end());
  points.insert(points.end(), samples.begin(), samples.end());

  ClassificationFlags flags;
  flags.set1_violation =
      reduce_worst(points.size(), threads, [&](std::size_t k) { return partition_violation(f.evaluate_raw(points[k])); })
          .violation;
  flags.lagrange_violation = reduce_worst(poly.size(), 1, [&](std::size_t j) {
                               const auto b = f.evaluate_raw(poly.vertex(j));
                               double v = 0.0;
                               for (std::size_t i = 0; i < b.size(); ++i) {
                                 v = std::max(v, std::abs(b[i] - (i == j ? 1.0 : 0.0)));
                               }
                               return v;
                             }).violation;

  // Both tautological-map checks share one evaluation per point.
  std::vector<Point> images(points.size());
  reduce_worst(points.size(), threads, [&](std::size_t k) {
    images[k] = tautological(f, points[k]);
    return 0.0;
  });
  flags.containment_violation =
      reduce_worst(points.size(), 1, [&](std::size_t k) { return outside_distance(poly, images[k]); }).violation;
  flags.identity_violation =
      reduce_worst(points.size(), 1, [&](std::size_t k) { return distance(images[k], points[k]); }).violation;

  flags.in_set1 = flags.set1_violation <= tol;
  flags.lagrange = flags.lagrange_violation <= tol;
  flags.taut_maps_into_polygon = flags.containment_violation <= tol;
  flags.in_K_pi = flags.identity_violation <= tol && flags.in_set1 && flags.lagrange && flags.taut_maps_into_polygon;
  return flags;
}

AffineMap affine_extension(const Polygon& poly, std::span<const Point> images) {
  if (images.size() != poly.size()) {
    throw Error(ErrorKind::MalformedInput, "expected " + std::to_string(poly.size()) + " vertex images, got " +
                                               std::to_string(images.size()));
  }
  // L [e1 e2] = [f1 f2] with e_k = v_{k+1} - v_1 and f_k = w_{k+1} - w_1.
  const Point e1 = poly.vertex(1) - poly.vertex(0);
  const Point e2 = poly.vertex(2) - poly.vertex(0);
  const Point f1 = images[1] - images[0];
  const Point f2 = images[2] - images[0];
  const double det = cross(e1, e2);
  // Inverse of [e1 e2] is [e2.y -e2.x; -e1.y e1.x] / det.
  const std::array<double, 4> linear{
      (f1.x * e2.y - f2.x * e1.y) / det,
      (-f1.x * e2.x + f2.x * e1.x) / det,
      (f1.y * e2.y - f2.y * e1.y) / det,
      (-f1.y * e2.x + f2.y * e1.x) / det,
  };
  const Point& v0 = poly.vertex(0);
  const Point offset{images[0].x - (linear[0] * v0.x + linear[1] * v0.y),
                     images[0].y - (linear[2] * v0.x + linear[3] * v0.y)};
  AffineMap map(linear, offset);

  for (std::size_t j = 3; j < poly.size(); ++j) {
    const double residual = distance(map(poly.vertex(j)), images[j]);
    if (!(residual <= 1e-9)) {
      throw Error(ErrorKind::NotAffinelyConsistent,
                  "vertex " + std::to_string(j + 1) + " misses its image by " + format_double(residual));
    }
  }
  return map;
}

PropertyReport check_homomorphism(const PointMap& m, std::span<const MeanSample> samples, double tol) {
  const auto worst = reduce_worst(samples.size(), 1, [&](std::size_t k) {
    const auto& s = samples[k];
    return distance(m(weighted_mean(s.p, s.a, s.b)), weighted_mean(s.p, m(s.a), m(s.b)));
  });
  PropertyReport report;
  report.samples_checked = samples.size();
  report.max_violation = samples.empty() ? 0.0 : worst.violation;
  report.tolerance = tol;
  report.passed = report.max_violation <= tol;
  report.worst_point = samples.empty() ? Point{} : samples[worst.index].a;
  return report;
}

PropertyReport check_homomorphism(const AffineMap& m, std::span<const MeanSample> samples, double tol) {
  return check_homomorphism(PointMap(m), samples, tol);
}

PropertyReport check_maps_into(const Polygon& poly, const PointMap& m, std::span<const Point> samples, double tol) {
  std::vector<Point> points(poly.vertices().begin(), poly.vertices().end());
  points.insert(points.end(), samples.begin(), samples.end());
  const auto worst = reduce_worst(points.size(), 1, [&](std::size_t k) { return outside_distance(poly, m(points[k])); });
  PropertyReport report;
  report.samples_checked = points.size();
  report.max_violation = worst.violation;
  report.tolerance = tol;
  report.passed = report.max_violation <= tol;
  report.worst_point = points[worst.index];
  return report;
}

}  // namespace bary
