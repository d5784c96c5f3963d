#include <doctest.h>

#include <numeric>

#include "barycentric/baryterm.hpp"
#include "barycentric/error.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace bary;
using namespace bary::testing;

namespace {

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::MalformedInput;
}

BaryTerm v(std::size_t i) { return BaryTerm::leaf(i); }
BaryTerm node(double p, BaryTerm l, BaryTerm r) { return BaryTerm::node(Weight(p), std::move(l), std::move(r)); }

}  // namespace

TEST_CASE("Weight rejects the closed endpoints") {
  CHECK(error_kind([] { Weight(0.0); }) == ErrorKind::InvalidWeight);
  CHECK(error_kind([] { Weight(1.0); }) == ErrorKind::InvalidWeight);
  CHECK(error_kind([] { Weight(-0.5); }) == ErrorKind::InvalidWeight);
  CHECK(error_kind([] { Weight(NAN); }) == ErrorKind::InvalidWeight);
  CHECK(Weight(0.25).value() == 0.25);
}

TEST_CASE("complement") {
  CHECK(complement(Weight(0.25)).value() == 0.75);
  CHECK(complement(Weight(0.5)).value() == 0.5);
  SampleRng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const Weight p = random_weight(rng, 0.001, 0.999);
    CHECK(complement(complement(p)).value() == doctest::Approx(p.value()).epsilon(1e-15));
  }
}

TEST_CASE("dual_mul") {
  CHECK(dual_mul(Weight(0.5), Weight(0.5)).value() == 0.75);
  CHECK(dual_mul(Weight(0.5), Weight(1.0 / 3.0)).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  SampleRng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const Weight p = random_weight(rng), r = random_weight(rng);
    const double d = dual_mul(p, r).value();
    CHECK(d == doctest::Approx(p.value() + r.value() - p.value() * r.value()).epsilon(1e-15));
    CHECK(d > 0.0);
    CHECK(d < 1.0);
    // p < r o p, which keeps the skew-associativity quotient a weight.
    CHECK(p.value() < d);
  }
}

TEST_CASE("weighted_mean") {
  CHECK(weighted_mean(Weight(0.5), Point{0, 0}, Point{1, 1}) == Point{0.5, 0.5});
  CHECK(weighted_mean(Weight(0.25), Point{0, 0}, Point{4, 0}) == Point{1, 0});
  SampleRng rng(3);
  for (int k = 0; k < 100; ++k) {
    const Point u = random_point(rng);
    const Point m = weighted_mean(random_weight(rng), u, u);
    CHECK(distance(m, u) <= 1e-14 * (1 + norm(u)));
  }
}

TEST_CASE("eval_term") {
  CHECK(eval_term(v(1), Assignment{{1, {3, 4}}}) == Point{3, 4});
  const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}};
  CHECK(eval_term(node(0.5, v(1), v(2)), pts) == Point{0.5, 0});
  const Point p = eval_term(node(1.0 / 3.0, node(0.5, v(1), v(2)), v(3)), pts);
  CHECK(p.x == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(error_kind([&] { eval_term(node(0.5, v(1), v(4)), pts); }) == ErrorKind::UnboundGenerator);
}

TEST_CASE("flatten examples") {
  const auto leaf = flatten(v(2), 3);
  CHECK(std::vector<double>(leaf.coefficients().begin(), leaf.coefficients().end()) == std::vector<double>{0, 1, 0});

  const auto rep = flatten(node(0.5, v(1), v(1)), 1);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0] == 1.0);

  CHECK(error_kind([] { flatten(node(0.5, v(1), v(3)), 2); }) == ErrorKind::LeafIndexOutOfRange);
  CHECK(error_kind([] { BaryTerm::leaf(0); }) == ErrorKind::LeafIndexOutOfRange);
}

TEST_CASE("flatten of the 1/2, 1/3 left comb against a solved oracle") {
  // Oracle: evaluate the term at random triangles, solve for the barycentric
  // coefficients of the result, and compare with the product formulas.
  const BaryTerm term = node(1.0 / 3.0, node(0.5, v(1), v(2)), v(3));
  const std::vector<double> closed = left_comb_closed_form({Weight(0.5), Weight(1.0 / 3.0)});
  for (double c : closed) CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto flat = flatten(term, 3);
  SampleRng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> tri{random_point(rng), random_point(rng), random_point(rng)};
    if (std::abs(orient(tri[0], tri[1], tri[2])) < 1.0) {
      --trial;
      continue;
    }
    const auto solved = barycentric_oracle(tri[0], tri[1], tri[2], eval_term(term, tri));
    for (int i = 0; i < 3; ++i) {
      CHECK(solved[i] == doctest::Approx(closed[i]).epsilon(1e-12));
      CHECK(flat[i] == doctest::Approx(solved[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("comb_from_combination") {
  const auto comb = comb_from_combination(ConvexCombination({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  REQUIRE_FALSE(comb.is_leaf());
  CHECK(comb.weight().value() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(comb.left().weight().value() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(comb.left().left() == v(1));
  CHECK(comb.left().right() == v(2));
  CHECK(comb.right() == v(3));

  const auto two = comb_from_combination(ConvexCombination({0.7, 0.3}));
  REQUIRE_FALSE(two.is_leaf());
  CHECK(two.weight().value() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(two.left() == v(1));

  CHECK(comb_from_combination(ConvexCombination({1.0})) == v(1));
  CHECK(error_kind([] { comb_from_combination(ConvexCombination({0.5, 0.0, 0.5})); }) == ErrorKind::ZeroCoefficient);
}

TEST_CASE("ConvexCombination renormalizes small drift and rejects the rest") {
  const ConvexCombination cc({0.5, 0.5 + 5e-10});
  CHECK(cc[0] + cc[1] == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(error_kind([] { ConvexCombination({0.5, 0.6}); }) == ErrorKind::InvalidCombination);
  CHECK(error_kind([] { ConvexCombination({1.1, -0.1}); }) == ErrorKind::InvalidCombination);
  CHECK(error_kind([] { ConvexCombination(std::vector<double>{}); }) == ErrorKind::InvalidCombination);
  const ConvexCombination snapped({-1e-13, 1.0});
  CHECK(snapped[0] == 0.0);
}

TEST_CASE("check_axioms on the 1/2, 1/3 example") {
  // Both sides of skew-associativity equal 7/6 for scalars 0, 1, 2.
  const Weight p(0.5), r(1.0 / 3.0);
  const Point a{0, 0}, b{1, 0}, c{2, 0};
  const Point lhs = weighted_mean(p, weighted_mean(r, a, b), c);
  CHECK(lhs.x == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
  CHECK(dual_mul(r, p).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto report = check_axioms(p, r, a, b, c, 1e-12);
  CHECK(report.all());

  const auto same = check_axioms(Weight(0.9), Weight(0.01), {3, -2}, {3, -2}, {3, -2}, 1e-12);
  CHECK(same.all());
}

TEST_CASE("check_axioms violations stay at rounding level on generic inputs") {
  const auto report = check_axioms(Weight(0.3), Weight(0.6), {1, 2}, {-4, 5}, {7, -1}, 0.0);
  // Exact arithmetic would give zero everywhere; the report never invents
  // violations beyond rounding.
  CHECK(report.idempotence_violation <= 1e-14);
  CHECK(report.skew_commutativity_violation <= 1e-14);
  CHECK(report.skew_associativity_violation <= 1e-14);
}

TEST_CASE("property: axioms hold on random inputs") {
  SampleRng rng(5);
  for (int k = 0; k < 10000; ++k) {
    const auto report = check_axioms(random_weight(rng), random_weight(rng), random_point(rng), random_point(rng),
                                     random_point(rng), 1e-10);
    REQUIRE(report.all());
  }
}

TEST_CASE("property: flatten and eval agree") {
  SampleRng rng(6);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t arity = 1 + rng.index(6);
    const BaryTerm t = random_term(rng, 8, arity);
    std::vector<Point> pts;
    double scale = 0.0;
    for (std::size_t i = 0; i < arity; ++i) {
      pts.push_back(random_point(rng, 100.0));
      scale = std::max({scale, std::abs(pts.back().x), std::abs(pts.back().y)});
    }
    const Point direct = eval_term(t, pts);
    const Point via = flatten(t, arity).apply(pts);
    REQUIRE(std::max(std::abs(direct.x - via.x), std::abs(direct.y - via.y)) <= 1e-12 * (1 + scale));
  }
}

TEST_CASE("property: comb_from_combination round trips through flatten") {
  SampleRng rng(7);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t r = 1 + rng.index(10);
    std::vector<double> c(r);
    for (double& x : c) x = rng.uniform(1e-3, 1.0);
    const double s = std::accumulate(c.begin(), c.end(), 0.0);
    for (double& x : c) x /= s;
    const ConvexCombination cc(c);
    const auto back = flatten(comb_from_combination(cc), r);
    for (std::size_t i = 0; i < r; ++i) REQUIRE(std::abs(back[i] - cc[i]) <= 1e-12);
  }
}

TEST_CASE("property: flatten matches the closed form on left combs") {
  SampleRng rng(8);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t r = 2 + rng.index(9);
    std::vector<Weight> p;
    for (std::size_t i = 0; i + 1 < r; ++i) p.push_back(random_weight(rng, 1e-3, 1 - 1e-3));
    const auto flat = flatten(left_comb(p), r);
    const auto closed = left_comb_closed_form(p);
    for (std::size_t i = 0; i < r; ++i) REQUIRE(std::abs(flat[i] - closed[i]) <= 1e-14);
  }
}
