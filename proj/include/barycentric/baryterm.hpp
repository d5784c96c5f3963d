#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "barycentric/geometry.hpp"

namespace bary {

// A weight of the open unit interval; construction rejects 0, 1 and anything
// outside (0,1) with ErrorKind::InvalidWeight.
class Weight {
 public:
  explicit Weight(double value);
  double value() const noexcept { return value_; }
  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  double value_;
};

// 1 - p
Weight complement(Weight p);
// p + r - p*r, the complement of the product of complements.
Weight dual_mul(Weight p, Weight r);

// (1-p) u + p v
Point weighted_mean(Weight p, const Point& u, const Point& v);
// Scalar form used by the pointwise operations on functions.
double weighted_mean(Weight p, double u, double v);

// Absolute slack allowed on the raw coefficient sum before renormalizing.
inline constexpr double kRenormalizeTol = 1e-9;
// Coefficients in [-kNegativeSlack, 0) are rounding noise and snap to 0.
inline constexpr double kNegativeSlack = 1e-12;

// A point of the standard simplex. The constructor renormalizes sums within
// kRenormalizeTol of 1 and throws InvalidCombination otherwise.
class ConvexCombination {
 public:
  explicit ConvexCombination(std::vector<double> coefficients);

  std::size_t size() const noexcept { return coefficients_.size(); }
  double operator[](std::size_t i) const { return coefficients_[i]; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }

  // Sum of coeff_i * points_i; sizes must agree.
  Point apply(std::span<const Point> points) const;

 private:
  std::vector<double> coefficients_;
};

// Binary weighted-mean term over generators v1, v2, ... (1-based indices).
// Immutable; subtrees are shared.
class BaryTerm {
 public:
  static BaryTerm leaf(std::size_t generator);
  static BaryTerm node(Weight weight, BaryTerm left, BaryTerm right);

  bool is_leaf() const noexcept { return node_ == nullptr; }
  std::size_t generator() const noexcept { return generator_; }
  // Only meaningful on internal nodes.
  Weight weight() const;
  const BaryTerm& left() const;
  const BaryTerm& right() const;

  std::size_t depth() const;
  std::size_t max_generator() const;

  // Structural equality; weights compared exactly.
  friend bool operator==(const BaryTerm& a, const BaryTerm& b);

 private:
  struct Node;
  BaryTerm() = default;
  std::size_t generator_ = 0;
  std::shared_ptr<const Node> node_;
};

struct BaryTerm::Node {
  Weight weight;
  BaryTerm left;
  BaryTerm right;
};

inline Weight BaryTerm::weight() const { return node_->weight; }
inline const BaryTerm& BaryTerm::left() const { return node_->left; }
inline const BaryTerm& BaryTerm::right() const { return node_->right; }

using Assignment = std::map<std::size_t, Point>;

// Throws UnboundGenerator when a leaf has no assigned point.
Point eval_term(const BaryTerm& term, const Assignment& assignment);
// Assigns points[i] to generator i+1.
Point eval_term(const BaryTerm& term, std::span<const Point> points);

// Coefficients alpha such that eval_term(term, A) = sum alpha_i A(i) for every
// assignment. Repeated leaves accumulate. Throws LeafIndexOutOfRange when a
// leaf exceeds arity.
ConvexCombination flatten(const BaryTerm& term, std::size_t arity);

// Left comb p_{r-1}(...p_1(v1, v2)..., v_r) with p_i = alpha_{i+1} / (alpha_1 + ... + alpha_{i+1}).
// A single coefficient yields the leaf v1. Throws ZeroCoefficient when any
// coefficient is not strictly positive; callers strip zeros first.
BaryTerm comb_from_combination(const ConvexCombination& cc);

// Left comb over v1..v_{weights.size()+1}.
BaryTerm left_comb(std::span<const Weight> weights);

struct AxiomReport {
  bool idempotence = false;
  bool skew_commutativity = false;
  bool skew_associativity = false;
  double idempotence_violation = 0.0;
  double skew_commutativity_violation = 0.0;
  double skew_associativity_violation = 0.0;

  bool all() const noexcept { return idempotence && skew_commutativity && skew_associativity; }
};

// Checks p(a,a) = a, p(a,b) = (1-p)(b,a), and
// p(r(a,b), c) = (r o p)(a, (p / (r o p))(b, c)) at tolerance tol.
AxiomReport check_axioms(Weight p, Weight r, const Point& a, const Point& b, const Point& c, double tol);

}  // namespace bary
