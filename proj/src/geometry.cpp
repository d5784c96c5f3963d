#include "barycentric/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "barycentric/error.hpp"

namespace bary {
namespace {

Point unit(const Point& p) {
  const double n = norm(p);
  return {p.x / n, p.y / n};
}

double signed_area(std::span<const Point> v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) twice += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * twice;
}

}  // namespace

double Polygon::area() const { return signed_area(vertices_); }

Point Polygon::vertex_mean() const {
  Point sum;
  for (const auto& v : vertices_) sum += v;
  return (1.0 / static_cast<double>(size())) * sum;
}

double Polygon::extent() const {
  double m = 0.0;
  for (const auto& v : vertices_) m = std::max({m, std::abs(v.x), std::abs(v.y)});
  return m;
}

Polygon validate_polygon(std::span<const Point> raw) {
  if (raw.size() < 3) {
    throw Error(ErrorKind::TooFewVertices, "a polygon needs at least 3 vertices, got " + std::to_string(raw.size()));
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!is_finite(raw[i])) throw Error(ErrorKind::NonFiniteCoordinate, "vertex " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (distance(raw[i], raw[j]) <= kConvexityEps) {
        throw Error(ErrorKind::DuplicateVertex,
                    "vertices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
      }
    }
  }

  std::vector<Point> v(raw.begin(), raw.end());
  if (signed_area(v) < 0.0) std::reverse(v.begin(), v.end());

  const std::size_t n = v.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e0 = unit(v[i] - v[(i + n - 1) % n]);
    const Point e1 = unit(v[(i + 1) % n] - v[i]);
    const double c = cross(e0, e1);
    if (c <= kConvexityEps) {
      std::ostringstream os;
      os << "turn at vertex " << i + 1 << " has cross product " << c;
      throw Error(ErrorKind::NotConvex, os.str());
    }
    turning += std::atan2(c, dot(e0, e1));
  }
  // Every turn is left; a star polygon still winds more than once.
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw Error(ErrorKind::NotConvex, "vertex sequence winds more than once");
  }
  return Polygon(std::move(v));
}

double edge_distance(const Polygon& poly, std::size_t edge, const Point& p) {
  const Point& a = poly.vertex(edge);
  const Point e = poly.next(edge) - a;
  return cross(e, p - a) / norm(e);
}

double outside_distance(const Polygon& poly, const Point& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) worst = std::max(worst, -edge_distance(poly, i, p));
  return worst;
}

bool contains(const Polygon& poly, const Point& p, double tol) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (edge_distance(poly, i, p) < -tol) return false;
  }
  return true;
}

std::vector<Triangle> fan_triangulate(const Polygon& poly) {
  std::vector<Triangle> fan;
  fan.reserve(poly.size() - 2);
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) fan.push_back({{0, i, i + 1}});
  return fan;
}

double triangle_area(const Polygon& poly, const Triangle& t) {
  const auto& [a, b, c] = t.indices;
  return 0.5 * orient(poly.vertex(a), poly.vertex(b), poly.vertex(c));
}

std::vector<Point> sample_interior(const Polygon& poly, std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  if (count == 0) return out;
  out.reserve(count);

  const auto fan = fan_triangulate(poly);
  std::vector<double> cumulative;
  cumulative.reserve(fan.size());
  double total = 0.0;
  for (const auto& t : fan) {
    total += triangle_area(poly, t);
    cumulative.push_back(total);
  }

  SampleRng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const double pick = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    const Triangle& t = fan[static_cast<std::size_t>(it - cumulative.begin())];

    double s = rng.uniform();
    double u = rng.uniform();
    if (s + u > 1.0) {
      s = 1.0 - s;
      u = 1.0 - u;
    }
    const Point& a = poly.vertex(t.indices[0]);
    const Point& b = poly.vertex(t.indices[1]);
    const Point& c = poly.vertex(t.indices[2]);
    out.push_back(a + s * (b - a) + u * (c - a));
  }
  return out;
}

}  // namespace bary
