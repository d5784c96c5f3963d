#include "barycentric/coordsys.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "barycentric/error.hpp"
#include "barycentric/parallel.hpp"
#include "barycentric/termlang.hpp"

namespace bary {

const std::vector<double>* SampleTable::find(const Point& p, double tol) const {
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (distance(points[k], p) <= tol) return &rows[k];
  }
  return nullptr;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double read_number(const std::string& field, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
  if (used == 0 || used != field.size()) {
    throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": cannot read '" + field + "'");
  }
  return v;
}

void require_inside(const Polygon& poly, const Point& p) {
  if (!is_finite(p) || !contains(poly, p, kDomainTol)) {
    throw Error(ErrorKind::PointOutsidePolygon,
                "(" + format_double(p.x) + ", " + format_double(p.y) + ") is not in the polygon");
  }
}

}  // namespace

SampleTable read_table_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedInput, "empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "x" || header[1] != "y") {
    throw Error(ErrorKind::MalformedInput, "header must be x,y,b1,...,bn");
  }
  for (std::size_t i = 2; i < header.size(); ++i) {
    if (header[i] != "b" + std::to_string(i - 1)) {
      throw Error(ErrorKind::MalformedInput, "header column " + std::to_string(i + 1) + " must be b" +
                                                 std::to_string(i - 1));
    }
  }
  const std::size_t n = header.size() - 2;

  SampleTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != n + 2) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + " has " +
                                                 std::to_string(fields.size()) + " fields, expected " +
                                                 std::to_string(n + 2));
    }
    table.points.push_back({read_number(fields[0], line_no), read_number(fields[1], line_no)});
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = read_number(fields[i + 2], line_no);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_table_csv(std::ostream& out, const SampleTable& table) {
  const std::size_t n = table.rows.empty() ? 0 : table.rows.front().size();
  out << "x,y";
  for (std::size_t i = 1; i <= n; ++i) out << ",b" << i;
  out << '\n';
  for (std::size_t k = 0; k < table.points.size(); ++k) {
    out << format_double(table.points[k].x) << ',' << format_double(table.points[k].y);
    for (double b : table.rows[k]) out << ',' << format_double(b);
    out << '\n';
  }
}

std::vector<double> triangulation_coords_raw(const Polygon& poly, const Point& p) {
  require_inside(poly, p);
  const auto fan = fan_triangulate(poly);

  std::array<double, 3> best{};
  std::size_t best_tri = 0;
  double best_min = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < fan.size(); ++t) {
    const auto& [i, j, k] = fan[t].indices;
    const Point& a = poly.vertex(i);
    const Point& b = poly.vertex(j);
    const Point& c = poly.vertex(k);
    // Cramer's rule on [a b c; 1 1 1] lambda = [p; 1].
    const double det = orient(a, b, c);
    const std::array<double, 3> lambda{orient(p, b, c) / det, orient(a, p, c) / det, orient(a, b, p) / det};
    const double lo = std::min({lambda[0], lambda[1], lambda[2]});
    if (lo >= -1e-12) {
      best = lambda;
      best_tri = t;
      best_min = lo;
      break;
    }
    if (lo > best_min) {
      best = lambda;
      best_tri = t;
      best_min = lo;
    }
  }
  if (best_min < -1e-12) {
    // p is within kDomainTol of the polygon but outside every fan triangle:
    // project onto the nearest one.
    for (double& l : best) l = std::max(l, 0.0);
    const double s = best[0] + best[1] + best[2];
    for (double& l : best) l /= s;
  }

  std::vector<double> out(poly.size(), 0.0);
  for (std::size_t m = 0; m < 3; ++m) out[fan[best_tri].indices[m]] = best[m];
  return out;
}

ConvexCombination triangulation_coords(const Polygon& poly, const Point& p) {
  return ConvexCombination(triangulation_coords_raw(poly, p));
}

std::vector<double> wachspress_coords_raw(const Polygon& poly, const Point& p) {
  require_inside(poly, p);
  const std::size_t n = poly.size();
  const double boundary_eps = 1e-12 * (1.0 + poly.extent());

  std::size_t nearest = 0;
  double nearest_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double d = edge_distance(poly, j, p);
    if (d < nearest_dist) {
      nearest_dist = d;
      nearest = j;
    }
  }

  std::vector<double> out(n, 0.0);
  if (nearest_dist <= boundary_eps) {
    // Edge limit: linear interpolation between the edge endpoints.
    const Point& a = poly.vertex(nearest);
    const Point e = poly.next(nearest) - a;
    const double t = std::clamp(dot(p - a, e) / dot(e, e), 0.0, 1.0);
    out[nearest] = 1.0 - t;
    out[(nearest + 1) % n] = t;
    return out;
  }

  // Clearing denominators: w_i is proportional to C_i times the product of
  // A_j over the edges j not incident to v_i. Areas are scaled by the largest
  // one to keep the products in range.
  std::vector<double> area(n);
  for (std::size_t j = 0; j < n; ++j) area[j] = orient(poly.vertex(j), poly.next(j), p);
  const double scale = *std::max_element(area.begin(), area.end());
  for (double& a : area) a /= scale;

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = orient(poly.prev(i), poly.vertex(i), poly.next(i));
    const std::size_t before = (i + n - 1) % n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && j != before) w *= area[j];
    }
    out[i] = w;
    total += w;
  }
  for (double& w : out) w /= total;
  return out;
}

ConvexCombination wachspress_coords(const Polygon& poly, const Point& p) {
  return ConvexCombination(wachspress_coords_raw(poly, p));
}

struct CoordinateSystem::Impl {
  struct BlendOf {
    Weight q;
    CoordinateSystem a;
    CoordinateSystem b;
  };
  Kind kind;
  Polygon polygon;
  std::variant<std::monostate, std::vector<double>, BlendOf, SampleTable> data;
};

CoordinateSystem CoordinateSystem::triangulation(Polygon poly) {
  return CoordinateSystem(std::make_shared<const Impl>(Impl{Kind::Triangulation, std::move(poly), {}}));
}

CoordinateSystem CoordinateSystem::wachspress(Polygon poly) {
  return CoordinateSystem(std::make_shared<const Impl>(Impl{Kind::Wachspress, std::move(poly), {}}));
}

CoordinateSystem CoordinateSystem::constant(Polygon poly, std::vector<double> values) {
  if (values.size() != poly.size()) {
    throw Error(ErrorKind::MalformedInput, "constant system needs " + std::to_string(poly.size()) + " values");
  }
  return CoordinateSystem(std::make_shared<const Impl>(Impl{Kind::Constant, std::move(poly), std::move(values)}));
}

CoordinateSystem CoordinateSystem::blend(Weight q, const CoordinateSystem& a, const CoordinateSystem& b) {
  if (!(a.polygon() == b.polygon())) throw Error(ErrorKind::PolygonMismatch, "blended systems live on different polygons");
  return CoordinateSystem(std::make_shared<const Impl>(Impl{Kind::Blend, a.polygon(), Impl::BlendOf{q, a, b}}));
}

CoordinateSystem CoordinateSystem::external(Polygon poly, SampleTable table) {
  for (const auto& row : table.rows) {
    if (row.size() != poly.size()) {
      throw Error(ErrorKind::MalformedInput, "table has " + std::to_string(row.size()) + " coordinates per row, polygon has " +
                                                 std::to_string(poly.size()) + " vertices");
    }
  }
  return CoordinateSystem(std::make_shared<const Impl>(Impl{Kind::External, std::move(poly), std::move(table)}));
}

CoordinateSystem::Kind CoordinateSystem::kind() const noexcept { return impl_->kind; }
const Polygon& CoordinateSystem::polygon() const noexcept { return impl_->polygon; }

const SampleTable* CoordinateSystem::table() const noexcept { return std::get_if<SampleTable>(&impl_->data); }

std::vector<double> CoordinateSystem::evaluate_raw(const Point& p) const {
  switch (impl_->kind) {
    case Kind::Triangulation: return triangulation_coords_raw(impl_->polygon, p);
    case Kind::Wachspress: return wachspress_coords_raw(impl_->polygon, p);
    case Kind::Constant:
      require_inside(impl_->polygon, p);
      return std::get<std::vector<double>>(impl_->data);
    case Kind::Blend: {
      const auto& blend = std::get<Impl::BlendOf>(impl_->data);
      auto out = blend.a.evaluate_raw(p);
      const auto other = blend.b.evaluate_raw(p);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = weighted_mean(blend.q, out[i], other[i]);
      return out;
    }
    case Kind::External: {
      require_inside(impl_->polygon, p);
      const auto* row = std::get<SampleTable>(impl_->data).find(p);
      if (row == nullptr) {
        throw Error(ErrorKind::SampleNotTabulated,
                    "(" + format_double(p.x) + ", " + format_double(p.y) + ") has no table row");
      }
      return *row;
    }
  }
  return {};
}

ConvexCombination CoordinateSystem::evaluate(const Point& p) const { return ConvexCombination(evaluate_raw(p)); }

namespace {

PropertyReport make_report(std::size_t checked, const WorstSample& worst, Point worst_point, double tol) {
  PropertyReport report;
  report.samples_checked = checked;
  report.max_violation = checked == 0 ? 0.0 : worst.violation;
  report.tolerance = tol;
  report.passed = report.max_violation <= tol;
  report.worst_point = worst_point;
  return report;
}

}  // namespace

PropertyReport verify_partition_of_unity(const CoordinateSystem& cs, std::span<const Point> points, double tol,
                                         unsigned threads) {
  const auto worst = reduce_worst(points.size(), threads, [&](std::size_t k) {
    const auto b = cs.evaluate_raw(points[k]);
    return std::abs(std::accumulate(b.begin(), b.end(), 0.0) - 1.0);
  });
  return make_report(points.size(), worst, points.empty() ? Point{} : points[worst.index], tol);
}

PropertyReport verify_linear_precision(const CoordinateSystem& cs, std::span<const Point> points, double tol,
                                       unsigned threads) {
  const auto& vertices = cs.polygon().vertices();
  const auto worst = reduce_worst(points.size(), threads, [&](std::size_t k) {
    const auto b = cs.evaluate_raw(points[k]);
    Point image;
    for (std::size_t i = 0; i < b.size(); ++i) image += b[i] * vertices[i];
    return distance(image, points[k]);
  });
  return make_report(points.size(), worst, points.empty() ? Point{} : points[worst.index], tol);
}

PropertyReport verify_lagrange(const CoordinateSystem& cs, double tol) {
  const auto& vertices = cs.polygon().vertices();
  const auto worst = reduce_worst(vertices.size(), 1, [&](std::size_t j) {
    const auto b = cs.evaluate_raw(vertices[j]);
    double v = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) v = std::max(v, std::abs(b[i] - (i == j ? 1.0 : 0.0)));
    return v;
  });
  return make_report(vertices.size(), worst, vertices[worst.index], tol);
}

}  // namespace bary
