#include "barycentric/baryterm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "barycentric/error.hpp"

namespace bary {

Weight::Weight(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << value << " is not inside (0,1)";
    throw Error(ErrorKind::InvalidWeight, os.str());
  }
}

Weight complement(Weight p) { return Weight(1.0 - p.value()); }

Weight dual_mul(Weight p, Weight r) {
  // Evaluated as 1 - (1-p)(1-r) so the result never rounds up to 1 before
  // the product does.
  return Weight(1.0 - (1.0 - p.value()) * (1.0 - r.value()));
}

Point weighted_mean(Weight p, const Point& u, const Point& v) {
  return {weighted_mean(p, u.x, v.x), weighted_mean(p, u.y, v.y)};
}

double weighted_mean(Weight p, double u, double v) { return (1.0 - p.value()) * u + p.value() * v; }

ConvexCombination::ConvexCombination(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw Error(ErrorKind::InvalidCombination, "no coefficients");
  for (double& c : coefficients_) {
    if (!std::isfinite(c) || c < -kNegativeSlack) {
      std::ostringstream os;
      os << "coefficient " << c << " is negative or not finite";
      throw Error(ErrorKind::InvalidCombination, os.str());
    }
    c = std::max(c, 0.0);
  }
  const double sum = std::accumulate(coefficients_.begin(), coefficients_.end(), 0.0);
  if (std::abs(sum - 1.0) > kRenormalizeTol) {
    std::ostringstream os;
    os.precision(17);
    os << "coefficients sum to " << sum;
    throw Error(ErrorKind::InvalidCombination, os.str());
  }
  if (sum != 1.0) {
    for (double& c : coefficients_) c /= sum;
  }
  for (double& c : coefficients_) c = std::min(c, 1.0);
}

Point ConvexCombination::apply(std::span<const Point> points) const {
  Point out;
  for (std::size_t i = 0; i < size(); ++i) out += coefficients_[i] * points[i];
  return out;
}

BaryTerm BaryTerm::leaf(std::size_t generator) {
  if (generator == 0) throw Error(ErrorKind::LeafIndexOutOfRange, "generator indices start at 1");
  BaryTerm t;
  t.generator_ = generator;
  return t;
}

BaryTerm BaryTerm::node(Weight weight, BaryTerm left, BaryTerm right) {
  BaryTerm t;
  t.node_ = std::make_shared<const Node>(Node{weight, std::move(left), std::move(right)});
  return t;
}

std::size_t BaryTerm::depth() const {
  if (is_leaf()) return 0;
  return 1 + std::max(left().depth(), right().depth());
}

std::size_t BaryTerm::max_generator() const {
  if (is_leaf()) return generator_;
  return std::max(left().max_generator(), right().max_generator());
}

bool operator==(const BaryTerm& a, const BaryTerm& b) {
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf() && a.generator_ == b.generator_;
  if (a.node_ == b.node_) return true;
  return a.weight() == b.weight() && a.left() == b.left() && a.right() == b.right();
}

Point eval_term(const BaryTerm& term, const Assignment& assignment) {
  if (term.is_leaf()) {
    const auto it = assignment.find(term.generator());
    if (it == assignment.end()) {
      throw Error(ErrorKind::UnboundGenerator, "v" + std::to_string(term.generator()) + " has no assigned point");
    }
    return it->second;
  }
  return weighted_mean(term.weight(), eval_term(term.left(), assignment), eval_term(term.right(), assignment));
}

Point eval_term(const BaryTerm& term, std::span<const Point> points) {
  Assignment assignment;
  for (std::size_t i = 0; i < points.size(); ++i) assignment.emplace(i + 1, points[i]);
  return eval_term(term, assignment);
}

namespace {

void accumulate_coefficients(const BaryTerm& term, double scale, std::vector<double>& out) {
  if (term.is_leaf()) {
    if (term.generator() > out.size()) {
      throw Error(ErrorKind::LeafIndexOutOfRange,
                  "v" + std::to_string(term.generator()) + " exceeds arity " + std::to_string(out.size()));
    }
    out[term.generator() - 1] += scale;
    return;
  }
  const double p = term.weight().value();
  accumulate_coefficients(term.left(), scale * (1.0 - p), out);
  accumulate_coefficients(term.right(), scale * p, out);
}

}  // namespace

ConvexCombination flatten(const BaryTerm& term, std::size_t arity) {
  std::vector<double> coeffs(arity, 0.0);
  accumulate_coefficients(term, 1.0, coeffs);
  return ConvexCombination(std::move(coeffs));
}

BaryTerm comb_from_combination(const ConvexCombination& cc) {
  for (std::size_t i = 0; i < cc.size(); ++i) {
    if (!(cc[i] > 0.0)) {
      throw Error(ErrorKind::ZeroCoefficient, "coefficient " + std::to_string(i + 1) + " is not strictly positive");
    }
  }
  BaryTerm term = BaryTerm::leaf(1);
  double prefix = cc[0];
  for (std::size_t i = 1; i < cc.size(); ++i) {
    prefix += cc[i];
    term = BaryTerm::node(Weight(cc[i] / prefix), std::move(term), BaryTerm::leaf(i + 1));
  }
  return term;
}

BaryTerm left_comb(std::span<const Weight> weights) {
  BaryTerm term = BaryTerm::leaf(1);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    term = BaryTerm::node(weights[i], std::move(term), BaryTerm::leaf(i + 2));
  }
  return term;
}

AxiomReport check_axioms(Weight p, Weight r, const Point& a, const Point& b, const Point& c, double tol) {
  AxiomReport report;
  report.idempotence_violation = distance(weighted_mean(p, a, a), a);
  report.skew_commutativity_violation = distance(weighted_mean(p, a, b), weighted_mean(complement(p), b, a));

  const Weight outer = dual_mul(r, p);
  // p < r o p for p, r in (0,1), so the quotient is a weight; the Weight
  // constructor enforces it.
  const Weight inner(p.value() / outer.value());
  const Point lhs = weighted_mean(p, weighted_mean(r, a, b), c);
  const Point rhs = weighted_mean(outer, a, weighted_mean(inner, b, c));
  report.skew_associativity_violation = distance(lhs, rhs);

  report.idempotence = report.idempotence_violation <= tol;
  report.skew_commutativity = report.skew_commutativity_violation <= tol;
  report.skew_associativity = report.skew_associativity_violation <= tol;
  return report;
}

}  // namespace bary
