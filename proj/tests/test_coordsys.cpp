#include <doctest.h>

#include <functional>
#include <numeric>
#include <sstream>

#include "barycentric/coordsys.hpp"
#include "barycentric/error.hpp"
#include "fixtures.hpp"

using namespace bary;
using namespace bary::testing;

namespace {

std::vector<double> as_vector(const ConvexCombination& cc) { return {cc.coefficients().begin(), cc.coefficients().end()}; }

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

// Wachspress straight from the rational formula with divisions, valid for
// strictly interior points.
std::vector<double> wachspress_oracle(const Polygon& poly, const Point& p) {
  const std::size_t n = poly.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& prev = poly.vertex((i + n - 1) % n);
    const Point& cur = poly.vertex(i);
    const Point& next = poly.vertex((i + 1) % n);
    const double c = 0.5 * orient(prev, cur, next);
    const double a0 = 0.5 * orient(prev, cur, p);
    const double a1 = 0.5 * orient(cur, next, p);
    w[i] = c / (a0 * a1);
  }
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= s;
  return w;
}

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST_CASE("triangulation_coords examples") {
  const auto sq = unit_square();
  const auto oracle = barycentric_oracle(sq.vertex(0), sq.vertex(1), sq.vertex(2), {0.5, 0.25});
  check_close(as_vector(triangulation_coords(sq, {0.5, 0.25})), {oracle[0], oracle[1], oracle[2], 0.0}, 1e-15);
  check_close(as_vector(triangulation_coords(sq, {0.5, 0.25})), {0.5, 0.25, 0.25, 0.0}, 1e-15);

  const Point centroid = (1.0 / 3.0) * (sq.vertex(0) + sq.vertex(1) + sq.vertex(2));
  check_close(as_vector(triangulation_coords(sq, centroid)), {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}, 1e-15);

  // On the shared diagonal the first fan triangle wins.
  check_close(as_vector(triangulation_coords(sq, {0.5, 0.5})), {0.5, 0.0, 0.5, 0.0}, 1e-15);
  // Second triangle of the fan.
  check_close(as_vector(triangulation_coords(sq, {0.25, 0.5})), {0.5, 0.0, 0.25, 0.25}, 1e-15);

  for (const auto& [name, poly] : all_fixtures()) {
    CAPTURE(name);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      std::vector<double> e(poly.size(), 0.0);
      e[i] = 1.0;
      check_close(as_vector(triangulation_coords(poly, poly.vertex(i))), e, 1e-15);
    }
  }
  CHECK(error_kind([&] { triangulation_coords(sq, {2, 2}); }) == ErrorKind::PointOutsidePolygon);
}

TEST_CASE("triangulation_coords within the domain slack but outside the fan") {
  const auto sq = unit_square();
  const auto b = triangulation_coords_raw(sq, {0.5, -5e-10});
  CHECK(std::accumulate(b.begin(), b.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double x : b) CHECK(x >= 0.0);
}

TEST_CASE("wachspress_coords examples") {
  const auto sq = unit_square();
  check_close(as_vector(wachspress_coords(sq, {0.5, 0.5})), {0.25, 0.25, 0.25, 0.25}, 1e-15);

  // Bilinear oracle on the unit square.
  const double x = 0.5, y = 0.25;
  check_close(as_vector(wachspress_coords(sq, {x, y})), {(1 - x) * (1 - y), x * (1 - y), x * y, (1 - x) * y}, 1e-15);
  check_close(as_vector(wachspress_coords(sq, {x, y})), {0.375, 0.375, 0.125, 0.125}, 1e-15);

  for (const auto& [name, poly] : all_fixtures()) {
    CAPTURE(name);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      std::vector<double> e(poly.size(), 0.0);
      e[i] = 1.0;
      check_close(as_vector(wachspress_coords(poly, poly.vertex(i))), e, 1e-15);
    }
  }
  // Edge limit: linear along the edge.
  check_close(as_vector(wachspress_coords(sq, {0.3, 0.0})), {0.7, 0.3, 0.0, 0.0}, 1e-15);
  check_close(as_vector(wachspress_coords(sq, {0.0, 0.6})), {0.4, 0.0, 0.0, 0.6}, 1e-15);
  CHECK(error_kind([&] { wachspress_coords(sq, {-1, 0.5}); }) == ErrorKind::PointOutsidePolygon);
}

TEST_CASE("wachspress agrees with the rational formula inside the pentagon") {
  const auto poly = pentagon();
  for (const auto& p : sample_interior(poly, 500, 9)) {
    if (outside_distance(poly, p) == 0.0 && [&] {
          for (std::size_t j = 0; j < poly.size(); ++j) {
            if (edge_distance(poly, j, p) < 1e-6) return false;
          }
          return true;
        }()) {
      check_close(wachspress_coords_raw(poly, p), wachspress_oracle(poly, p), 1e-12);
    }
  }
}

TEST_CASE("wachspress is continuous across the boundary switch") {
  const auto sq = unit_square();
  const auto inside = wachspress_coords_raw(sq, {0.3, 1e-11});
  const auto on = wachspress_coords_raw(sq, {0.3, 0.0});
  check_close(inside, on, 1e-10);
}

TEST_CASE("triangulation and wachspress coincide on a triangle") {
  const auto tri = triangle();
  for (const auto& p : sample_interior(tri, 1000, 42)) {
    check_close(as_vector(triangulation_coords(tri, p)), as_vector(wachspress_coords(tri, p)), 1e-9);
  }
}

TEST_CASE("built-in systems pass all three verifiers on every fixture") {
  for (const auto& [name, poly] : all_fixtures()) {
    const auto pts = sample_interior(poly, 1000, 42);
    for (const auto& cs : {CoordinateSystem::triangulation(poly), CoordinateSystem::wachspress(poly)}) {
      CAPTURE(name);
      CAPTURE(static_cast<int>(cs.kind()));
      const auto pou = verify_partition_of_unity(cs, pts, 1e-10);
      CHECK(pou.passed);
      CHECK(pou.samples_checked == 1000);
      CHECK(verify_linear_precision(cs, pts, 1e-9).passed);
      const auto lag = verify_lagrange(cs, 1e-9);
      CHECK(lag.passed);
      CHECK(lag.samples_checked == poly.size());
    }
  }
}

TEST_CASE("constant system fails linear precision and Lagrange") {
  const auto sq = unit_square();
  const auto cs = CoordinateSystem::constant(sq, {0.25, 0.25, 0.25, 0.25});
  const std::vector<Point> at{{0.1, 0.1}};
  const auto lp = verify_linear_precision(cs, at, 1e-9);
  CHECK_FALSE(lp.passed);
  CHECK(lp.max_violation == doctest::Approx(std::hypot(0.4, 0.4)).epsilon(1e-14));
  CHECK(lp.max_violation == doctest::Approx(0.5657).epsilon(1e-4));
  CHECK(lp.worst_point == Point{0.1, 0.1});

  const auto lag = verify_lagrange(cs, 1e-9);
  CHECK_FALSE(lag.passed);
  CHECK(lag.max_violation == 0.75);
  CHECK(verify_partition_of_unity(cs, at, 1e-12).passed);
}

TEST_CASE("external table with a broken row") {
  const auto sq = unit_square();
  SampleTable table;
  table.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.1}};
  table.rows = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0.5, 0.6, 0, 0}, {0.72, 0.18, 0.02, 0.08}};
  const auto cs = CoordinateSystem::external(sq, table);
  const auto pou = verify_partition_of_unity(cs, table.points, 1e-10);
  CHECK_FALSE(pou.passed);
  CHECK(pou.max_violation == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(pou.worst_point == Point{0.5, 0.5});
  CHECK(verify_lagrange(cs, 1e-12).passed);

  CHECK(error_kind([&] { cs.evaluate_raw({0.3, 0.3}); }) == ErrorKind::SampleNotTabulated);
  CHECK(error_kind([&] { CoordinateSystem::external(sq, SampleTable{{{0, 0}}, {{1, 0}}}); }) ==
        ErrorKind::MalformedInput);
}

TEST_CASE("blends evaluate pointwise and refuse mixed polygons") {
  const auto sq = unit_square();
  const auto cs = CoordinateSystem::blend(Weight(0.5), CoordinateSystem::triangulation(sq), CoordinateSystem::wachspress(sq));
  CHECK(cs.kind() == CoordinateSystem::Kind::Blend);
  check_close(cs.evaluate_raw({0.5, 0.25}), {0.4375, 0.3125, 0.1875, 0.0625}, 1e-15);
  CHECK(error_kind([&] {
          CoordinateSystem::blend(Weight(0.5), CoordinateSystem::wachspress(sq), CoordinateSystem::wachspress(pentagon()));
        }) == ErrorKind::PolygonMismatch);
}

TEST_CASE("verifier reports do not depend on the thread count") {
  const auto poly = pentagon();
  const auto pts = sample_interior(poly, 997, 5);
  const auto cs = CoordinateSystem::wachspress(poly);
  const auto one = verify_linear_precision(cs, pts, 1e-9, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = verify_linear_precision(cs, pts, 1e-9, threads);
    CHECK(many.max_violation == one.max_violation);
    CHECK(many.worst_point == one.worst_point);
    CHECK(many.samples_checked == one.samples_checked);
  }
  // Outside points surface as errors from any worker.
  std::vector<Point> bad = pts;
  bad[600] = {5, 5};
  CHECK(error_kind([&] { verify_partition_of_unity(cs, bad, 1e-9, 4); }) == ErrorKind::PointOutsidePolygon);
}

TEST_CASE("table CSV round trip and malformed input") {
  SampleTable table;
  table.points = {{0.25, 0.5}, {1, 0}};
  table.rows = {{0.125, 0.375, 0.5}, {0, 1, 0}};
  std::stringstream io;
  write_table_csv(io, table);
  CHECK(io.str().rfind("x,y,b1,b2,b3\n", 0) == 0);
  const auto back = read_table_csv(io);
  CHECK(back.points == table.points);
  CHECK(back.rows == table.rows);

  std::istringstream bad_header("x,y,c1\n0,0,1\n");
  CHECK(error_kind([&] { read_table_csv(bad_header); }) == ErrorKind::MalformedInput);
  std::istringstream short_row("x,y,b1,b2\n0,0,1\n");
  CHECK(error_kind([&] { read_table_csv(short_row); }) == ErrorKind::MalformedInput);
  std::istringstream bad_number("x,y,b1\n0,zero,1\n");
  CHECK(error_kind([&] { read_table_csv(bad_number); }) == ErrorKind::MalformedInput);
}
