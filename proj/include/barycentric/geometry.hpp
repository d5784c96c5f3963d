#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace bary {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;

  Point& operator+=(const Point& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }
inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Twice the signed area of (a, b, c); positive when counter-clockwise.
inline double orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

// Cross products of unit edge vectors at or below this count as collinear.
inline constexpr double kConvexityEps = 1e-12;

// A strictly convex polygon with counter-clockwise vertices. Only
// validate_polygon can build one, so every instance satisfies the invariants.
class Polygon {
 public:
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point& vertex(std::size_t i) const { return vertices_[i]; }
  // Cyclic successor/predecessor.
  const Point& next(std::size_t i) const { return vertices_[(i + 1) % size()]; }
  const Point& prev(std::size_t i) const { return vertices_[(i + size() - 1) % size()]; }

  double area() const;
  // Arithmetic mean of the vertices.
  Point vertex_mean() const;
  // Largest absolute coordinate over all vertices.
  double extent() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  friend Polygon validate_polygon(std::span<const Point> raw);
  explicit Polygon(std::vector<Point> v) : vertices_(std::move(v)) {}
  std::vector<Point> vertices_;
};

// Indices into the parent polygon, 0-based, ascending.
struct Triangle {
  std::array<std::size_t, 3> indices;
  friend bool operator==(const Triangle&, const Triangle&) = default;
};

// Throws Error{TooFewVertices, NonFiniteCoordinate, DuplicateVertex, NotConvex}.
// A convex clockwise input is reversed to counter-clockwise.
Polygon validate_polygon(std::span<const Point> raw);

// Signed distance from p to the line through edge (v_i, v_{i+1}); positive inside.
double edge_distance(const Polygon& poly, std::size_t edge, const Point& p);

// How far p lies beyond the worst edge half-plane; 0 for contained points.
double outside_distance(const Polygon& poly, const Point& p);

// Closed containment: boundary points and points within tol of every edge
// half-plane count as inside.
bool contains(const Polygon& poly, const Point& p, double tol);

// Fan from the first vertex: (v0, v_i, v_{i+1}) for i = 1..n-2.
std::vector<Triangle> fan_triangulate(const Polygon& poly);

double triangle_area(const Polygon& poly, const Triangle& t);

// Deterministic for a fixed seed on every platform: the generator is
// mt19937_64 and doubles are built from its top 53 bits.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

// Area-weighted fan triangle choice followed by uniform barycentric sampling.
std::vector<Point> sample_interior(const Polygon& poly, std::size_t count, std::uint64_t seed);

}  // namespace bary
