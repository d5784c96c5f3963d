#include "barycentric/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "barycentric/baryterm.hpp"
#include "barycentric/coordsys.hpp"
#include "barycentric/error.hpp"
#include "barycentric/geometry.hpp"
#include "barycentric/tautomap.hpp"
#include "barycentric/termlang.hpp"

namespace bary::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string polygon_path;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  double tol = 1e-9;
  unsigned threads = 1;
  std::string output_path;
  bool timing = false;
};

Polygon load_polygon(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::MalformedInput, "--polygon is required");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(ErrorKind::MalformedInput, path + ": expected {\"vertices\": [[x,y], ...]}");
  }
  std::vector<Point> raw;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw Error(ErrorKind::MalformedInput, path + ": every vertex must be [x, y]");
    }
    raw.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return validate_polygon(raw);
}

SampleTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  return read_table_csv(in);
}

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::MalformedInput, "point must be written x,y");
  try {
    std::size_t used_x = 0, used_y = 0;
    const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
    const Point p{std::stod(xs, &used_x), std::stod(ys, &used_y)};
    if (used_x != xs.size() || used_y != ys.size() || !is_finite(p)) throw std::invalid_argument(text);
    return p;
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedInput, "cannot read point '" + text + "'");
  }
}

Weight parse_weight(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorKind::InvalidWeight, "cannot read weight '" + text + "'");
  return Weight(v);
}

std::string json_numbers(std::span<const double> values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  return s + "]";
}

CoordinateSystem make_system(const std::string& method, const Polygon& poly) {
  if (method == "triangulation") return CoordinateSystem::triangulation(poly);
  if (method == "wachspress") return CoordinateSystem::wachspress(poly);
  if (method == "constant") {
    return CoordinateSystem::constant(poly, std::vector<double>(poly.size(), 1.0 / static_cast<double>(poly.size())));
  }
  throw Error(ErrorKind::MalformedInput, "unknown method '" + method + "'");
}

Json point_json(const Point& p) { return Json::array({p.x, p.y}); }

Json report_json(const PropertyReport& r) {
  Json j;
  j["samples_checked"] = r.samples_checked;
  j["max_violation"] = r.max_violation;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["worst_point"] = point_json(r.worst_point);
  return j;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["polygon"] = c.polygon_path;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["tol"] = c.tol;
  return j;
}

// Runs the three coordinate-system verifiers and records them under
// "properties"; returns whether all passed.
bool verify_into(Json& report, const CoordinateSystem& cs, std::span<const Point> points, const RunConfig& c) {
  const auto pou = verify_partition_of_unity(cs, points, c.tol, c.threads);
  const auto lp = verify_linear_precision(cs, points, c.tol, c.threads);
  const auto lag = verify_lagrange(cs, c.tol);
  report["properties"]["partition_of_unity"] = report_json(pou);
  report["properties"]["linear_precision"] = report_json(lp);
  report["properties"]["lagrange"] = report_json(lag);
  const bool passed = pou.passed && lp.passed && lag.passed;
  report["passed"] = passed;
  return passed;
}

void add_run_options(CLI::App& sub, RunConfig& c) {
  sub.add_option("--polygon", c.polygon_path, "Polygon JSON file")->required();
  sub.add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
  sub.add_option("--samples", c.samples, "Number of interior samples")->capture_default_str();
  sub.add_option("--tol", c.tol, "Verification tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  sub.add_option("--threads", c.threads, "Verifier threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  sub.add_flag("--timing", c.timing, "Add wall time to the report (makes output run-dependent)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Barycentric algebra toolkit: terms, coordinate systems and the tautological map"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  app.add_option("--out", config.output_path, "Write the result here instead of stdout");

  std::string term_text;
  std::string points_json;
  std::size_t arity = 0;
  std::string method = "wachspress";
  std::string point_text;
  std::string table_path;
  std::string q_text;
  std::string first = "triangulation";
  std::string second = "wachspress";
  std::string pou_name = "wachspress";
  std::size_t grid = 11;

  auto* parse_cmd = app.add_subcommand("parse", "Print a term in canonical form");
  parse_cmd->add_option("term", term_text, "Term text")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a term at points (default: polygon vertices)");
  eval_cmd->add_option("term", term_text, "Term text")->required();
  eval_cmd->add_option("--points", points_json, "JSON array of [x,y] assigned to v1, v2, ...");
  eval_cmd->add_option("--polygon", config.polygon_path, "Use the polygon vertices as v1..vn");

  auto* flatten_cmd = app.add_subcommand("flatten", "Convex-combination coefficients of a term");
  flatten_cmd->add_option("term", term_text, "Term text")->required();
  flatten_cmd->add_option("--arity", arity, "Number of generators")->required();

  auto* coords_cmd = app.add_subcommand("coords", "Evaluate a coordinate system at one point");
  coords_cmd->add_option("--polygon", config.polygon_path, "Polygon JSON file")->required();
  coords_cmd->add_option("--method", method, "triangulation | wachspress")->capture_default_str();
  coords_cmd->add_option("--point", point_text, "x,y")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Partition of unity, linear precision and Lagrange checks");
  add_run_options(*verify_cmd, config);
  auto* verify_method = verify_cmd->add_option("--method", method, "triangulation | wachspress | constant");
  verify_cmd->add_option("--table", table_path, "CSV table x,y,b1..bn to verify instead")->excludes(verify_method);

  auto* blend_cmd = app.add_subcommand("blend", "Verify a pointwise blend of two coordinate systems");
  add_run_options(*blend_cmd, config);
  blend_cmd->add_option("--q", q_text, "Blend weight in (0,1)")->required();
  blend_cmd->add_option("--first", first, "First method")->capture_default_str();
  blend_cmd->add_option("--second", second, "Second method")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Classify a partition of unity");
  add_run_options(*classify_cmd, config);
  classify_cmd
      ->add_option("--pou", pou_name, "triangulation | wachspress | constant | cyclic-shift | table")
      ->capture_default_str();
  classify_cmd->add_option("--table", table_path, "CSV table for --pou table");

  auto* plot_cmd = app.add_subcommand("plotdata", "CSV of coordinates and residuals on a lattice");
  plot_cmd->add_option("--polygon", config.polygon_path, "Polygon JSON file")->required();
  plot_cmd->add_option("--method", method, "triangulation | wachspress | constant")->capture_default_str();
  plot_cmd->add_option("--grid", grid, "Lattice points per axis")->capture_default_str()->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  std::ostringstream result;
  int code = kOk;
  try {
    if (parse_cmd->parsed()) {
      result << print_term(parse_term(term_text)) << '\n';
    } else if (eval_cmd->parsed()) {
      const BaryTerm term = parse_term(term_text);
      std::vector<Point> points;
      if (!points_json.empty()) {
        Json doc;
        try {
          doc = Json::parse(points_json);
          for (const auto& p : doc) points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        } catch (const Json::exception& e) {
          throw Error(ErrorKind::MalformedInput, std::string("--points: ") + e.what());
        }
      } else if (!config.polygon_path.empty()) {
        const Polygon poly = load_polygon(config.polygon_path);
        points = poly.vertices();
      } else {
        throw Error(ErrorKind::MalformedInput, "eval needs --points or --polygon");
      }
      const Point p = eval_term(term, points);
      result << '[' << format_double(p.x) << ',' << format_double(p.y) << "]\n";
    } else if (flatten_cmd->parsed()) {
      const auto cc = flatten(parse_term(term_text), arity);
      result << json_numbers(cc.coefficients()) << '\n';
    } else if (coords_cmd->parsed()) {
      const Polygon poly = load_polygon(config.polygon_path);
      if (method != "triangulation" && method != "wachspress") {
        throw Error(ErrorKind::MalformedInput, "unknown method '" + method + "'");
      }
      const auto cc = make_system(method, poly).evaluate(parse_point(point_text));
      result << json_numbers(cc.coefficients()) << '\n';
    } else if (verify_cmd->parsed()) {
      const Polygon poly = load_polygon(config.polygon_path);
      Json report;
      report["command"] = "verify";
      report["config"] = config_json(config);
      bool passed = false;
      if (!table_path.empty()) {
        report["config"]["table"] = table_path;
        SampleTable table = load_table(table_path);
        const std::vector<Point> points = table.points;
        passed = verify_into(report, CoordinateSystem::external(poly, std::move(table)), points, config);
      } else {
        report["config"]["method"] = method;
        const auto points = sample_interior(poly, config.samples, config.seed);
        passed = verify_into(report, make_system(method, poly), points, config);
      }
      if (config.timing) {
        report["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      }
      result << report.dump(2) << '\n';
      if (!passed) code = kVerificationFailed;
    } else if (blend_cmd->parsed()) {
      const Weight q = parse_weight(q_text);
      const Polygon poly = load_polygon(config.polygon_path);
      const auto cs = CoordinateSystem::blend(q, make_system(first, poly), make_system(second, poly));
      Json report;
      report["command"] = "blend";
      report["config"] = config_json(config);
      report["config"]["q"] = q.value();
      report["config"]["first"] = first;
      report["config"]["second"] = second;
      const auto points = sample_interior(poly, config.samples, config.seed);
      const bool passed = verify_into(report, cs, points, config);
      if (config.timing) {
        report["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      }
      result << report.dump(2) << '\n';
      if (!passed) code = kVerificationFailed;
    } else if (classify_cmd->parsed()) {
      const Polygon poly = load_polygon(config.polygon_path);
      std::optional<PartitionOfUnity> f;
      std::vector<Point> points;
      if (pou_name == "table") {
        if (table_path.empty()) throw Error(ErrorKind::MalformedInput, "--pou table needs --table");
        SampleTable table = load_table(table_path);
        points = table.points;
        f = PartitionOfUnity::table(poly, std::move(table));
      } else {
        points = sample_interior(poly, config.samples, config.seed);
        if (pou_name == "constant") {
          f = PartitionOfUnity::constant(
              poly, ConvexCombination(std::vector<double>(poly.size(), 1.0 / static_cast<double>(poly.size()))));
        } else if (pou_name == "cyclic-shift") {
          std::vector<Point> images;
          for (std::size_t j = 0; j < poly.size(); ++j) images.push_back(poly.next(j));
          f = pou_from_selfmap(CoordinateSystem::triangulation(poly), affine_extension(poly, images));
        } else {
          f = PartitionOfUnity::from_coordinates(make_system(pou_name, poly));
        }
      }
      const auto flags = classify(*f, points, config.tol, config.threads);
      Json report;
      report["command"] = "classify";
      report["config"] = config_json(config);
      report["config"]["pou"] = pou_name;
      auto& fl = report["flags"];
      fl["in_set1"] = {{"value", flags.in_set1}, {"max_violation", flags.set1_violation}};
      fl["lagrange"] = {{"value", flags.lagrange}, {"max_violation", flags.lagrange_violation}};
      fl["taut_maps_into_polygon"] = {{"value", flags.taut_maps_into_polygon},
                                      {"max_violation", flags.containment_violation}};
      fl["in_K_pi"] = {{"value", flags.in_K_pi}, {"max_violation", flags.identity_violation}};
      if (config.timing) {
        report["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      }
      result << report.dump(2) << '\n';
    } else if (plot_cmd->parsed()) {
      const Polygon poly = load_polygon(config.polygon_path);
      const auto cs = make_system(method, poly);
      double xmin = poly.vertex(0).x, xmax = xmin, ymin = poly.vertex(0).y, ymax = ymin;
      for (const auto& v : poly.vertices()) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
      }
      result << "x,y";
      for (std::size_t i = 1; i <= poly.size(); ++i) result << ",b" << i;
      result << ",pou_residual,lp_residual\n";
      auto lattice = [&](double lo, double hi, std::size_t k) {
        return grid == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
      };
      for (std::size_t r = 0; r < grid; ++r) {
        for (std::size_t c = 0; c < grid; ++c) {
          const Point p{lattice(xmin, xmax, c), lattice(ymin, ymax, r)};
          if (!contains(poly, p, 1e-12)) continue;
          const auto b = cs.evaluate_raw(p);
          double sum = 0.0;
          Point image;
          result << format_double(p.x) << ',' << format_double(p.y);
          for (std::size_t i = 0; i < b.size(); ++i) {
            result << ',' << format_double(b[i]);
            sum += b[i];
            image += b[i] * poly.vertex(i);
          }
          result << ',' << format_double(std::abs(sum - 1.0)) << ',' << format_double(distance(image, p)) << '\n';
        }
      }
    }
  } catch (const SourceError& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_domain_error(e.kind()) ? kDomainError : kInputError;
  }

  if (config.output_path.empty()) {
    out << result.str();
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << config.output_path << '\n';
      return kInputError;
    }
    file << result.str();
  }
  return code;
}

}  // namespace bary::cli
