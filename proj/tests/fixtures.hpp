#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "barycentric/geometry.hpp"

namespace bary::testing {

inline Polygon unit_square() {
  const std::vector<Point> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return validate_polygon(v);
}

inline Polygon triangle() {
  const std::vector<Point> v{{0, 0}, {1, 0}, {0.5, 0.8660254037844386}};
  return validate_polygon(v);
}

// Same coordinates as data/pentagon.json.
inline Polygon pentagon() {
  const std::vector<Point> v{{0, 1},
                             {-0.95105651629515353, 0.30901699437494751},
                             {-0.58778525229247325, -0.80901699437494734},
                             {0.58778525229247292, -0.80901699437494756},
                             {0.95105651629515364, 0.30901699437494717}};
  return validate_polygon(v);
}

inline std::vector<std::pair<std::string, Polygon>> all_fixtures() {
  return {{"square", unit_square()}, {"triangle", triangle()}, {"pentagon", pentagon()}};
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

// Gaussian elimination with partial pivoting on a dense 3x3 system.
inline std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double s = m[r][3];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

// Barycentric coordinates of p in (a, b, c): solve a*l0 + b*l1 + c*l2 = p,
// l0 + l1 + l2 = 1.
inline std::array<double, 3> barycentric_oracle(const Point& a, const Point& b, const Point& c, const Point& p) {
  return solve3({{{a.x, b.x, c.x, p.x}, {a.y, b.y, c.y, p.y}, {1.0, 1.0, 1.0, 1.0}}});
}

}  // namespace bary::testing
