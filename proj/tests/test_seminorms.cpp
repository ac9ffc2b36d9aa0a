#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "procstar/seminorms.hpp"

using namespace procstar;

namespace {

const Complex I(0.0, 1.0);

GroupAlgebraElement zsum(std::initializer_list<std::pair<std::int64_t, Complex>> terms) {
  GroupAlgebraElement a(DiscreteGroup::integers());
  for (const auto& [x, c] : terms) a.add(z_element({x}), c);
  return a;
}

// Character oracle on Z/n: max_j |sum_x a(x) exp(2 pi i j x / n)|.
double cyclic_oracle(const GroupAlgebraElement& a, int n) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (const auto& [x, c] : a.terms())
      s += c * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * x.coords[0]) / n);
    best = std::max(best, std::abs(s));
  }
  return best;
}

GroupAlgebraElement random_gaussian(const DiscreteGroup& g, std::mt19937_64& rng, int support, int box) {
  std::uniform_int_distribution<std::int64_t> coord(-box, box);
  std::uniform_int_distribution<int> coef(-3, 3);
  GroupAlgebraElement a(g);
  for (int i = 0; i < support; ++i) {
    Element e = g.identity();
    for (auto& v : e.coords) v = coord(rng);
    a.add(e, Complex(coef(rng), coef(rng)));
  }
  return a;
}

}  // namespace

TEST_CASE("kappa examples") {
  const auto z = DiscreteGroup::integers();
  const auto q3 = mod_quotient(z, {3});
  const auto k = kappa(q3, zsum({{5, 1.0}}));
  CHECK(k == GroupAlgebraElement::delta(DiscreteGroup::finite(q3.target()), finite_element(2)));

  CHECK(kappa(mod_quotient(z, {2}), zsum({{1, 1.0}, {-1, -1.0}})).is_zero());

  const auto h = DiscreteGroup::heisenberg();
  const auto q2 = mod_quotient(h, {2});
  GroupAlgebraElement a(h);
  a.add(heisenberg_element(1, 0, 0), 1.0).add(heisenberg_element(-1, 0, 0), 1.0);
  const auto ka = kappa(q2, a);
  CHECK(ka.terms().size() == 1);
  CHECK(ka.coefficient(finite_element(q2.apply(heisenberg_element(1, 0, 0)))) == Complex(2.0));
}

TEST_CASE("kappa is a *-homomorphism") {
  std::mt19937_64 rng(21);
  const auto h = DiscreteGroup::heisenberg();
  const auto q = mod_quotient(h, {3});
  for (int t = 0; t < 20; ++t) {
    const auto a = random_gaussian(h, rng, 5, 3), b = random_gaussian(h, rng, 5, 3);
    CHECK(kappa(q, a * b) == kappa(q, a) * kappa(q, b));
    CHECK(kappa(q, involution(a)) == involution(kappa(q, a)));
  }
}

TEST_CASE("seminorm examples on Z mod 4") {
  const auto q4 = mod_quotient(DiscreteGroup::integers(), {4});
  const auto e = zsum({{0, 1.0}});
  CHECK(seminorm(q4, e).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(seminorm(mod_quotient(DiscreteGroup::heisenberg(), {3}),
                 GroupAlgebraElement::delta(DiscreteGroup::heisenberg(), heisenberg_element(0, 0, 0)))
            .value == doctest::Approx(1.0).epsilon(1e-12));

  const auto a = zsum({{1, 1.0}, {0, -1.0}});
  CHECK(cyclic_oracle(a, 4) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(seminorm(q4, a).value - 2.0) < 1e-9);

  const auto b = zsum({{1, 1.0}, {0, I}});
  CHECK(cyclic_oracle(b, 4) == doctest::Approx(2.0).epsilon(1e-15));
  const auto v = seminorm(q4, b);
  CHECK(std::abs(v.value - 2.0) < 1e-9);
  CHECK(v.method == NormMethod::Regular);
  CHECK(v.l1_bound == 2.0);
}

TEST_CASE("seminorm matches the character oracle on cyclic targets") {
  std::mt19937_64 rng(5);
  const auto z = DiscreteGroup::integers();
  for (int n : {1, 2, 3, 5, 8, 12}) {
    const auto q = mod_quotient(z, {n});
    for (int t = 0; t < 10; ++t) {
      const auto a = random_gaussian(z, rng, 4, 10);
      const double oracle = cyclic_oracle(a, n);
      CHECK(std::abs(seminorm(q, a).value - oracle) < 1e-9);
      CHECK(std::abs(seminorm_via_irreps(q, a).value - oracle) < 1e-9);
    }
  }
}

TEST_CASE("S3 target: both methods agree") {
  auto s3 = build_finite_group(symmetric(3));
  const auto g = DiscreteGroup::finite(s3);
  const auto q = normal_quotient(g, {});
  GroupAlgebraElement a(g);
  a.add(finite_element(permutation_index(std::vector<int>{1, 0, 2})), 1.0)
      .add(finite_element(permutation_index(std::vector<int>{1, 2, 0})), 1.0);
  const double reg = seminorm(q, a).value;
  const double blocks = seminorm_via_irreps(q, a).value;
  CHECK(std::abs(reg - blocks) < 1e-6);
  CHECK(reg <= 2.0 + 1e-12);
}

TEST_CASE("seminorm axioms on random elements") {
  std::mt19937_64 rng(77);
  const Config cfg;
  struct Case {
    DiscreteGroup g;
    std::vector<std::int64_t> chain;
  };
  const std::vector<Case> cases = {{DiscreteGroup::integers(), {2, 4, 12, 24}},
                                   {DiscreteGroup::integers(2), {2, 4, 8}},
                                   {DiscreteGroup::heisenberg(), {2, 4}}};
  for (const auto& c : cases) {
    CAPTURE(c.g.label());
    const auto schedule = modulus_schedule(c.g, c.chain);
    for (int t = 0; t < 6; ++t) {
      const auto a = random_gaussian(c.g, rng, 4, 3);
      double previous = 0.0;
      for (const auto& q : schedule) {
        const double v = seminorm(q, a).value;
        CHECK(v <= l1_norm(a) + cfg.tol.norm);
        CHECK(v >= previous - cfg.tol.norm);
        previous = v;
        const double vstar = seminorm(q, involution(a) * a).value;
        CHECK(std::abs(vstar - v * v) <= 2e-6 * std::max(1.0, v * v));
      }
    }
  }
}

TEST_CASE("connecting compatibility of kappa") {
  std::mt19937_64 rng(31);
  const auto z = DiscreteGroup::integers();
  const auto fine = mod_quotient(z, {12}), coarse = mod_quotient(z, {4});
  const auto conn = connecting_map(fine, coarse);
  REQUIRE(conn);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_gaussian(z, rng, 6, 30);
    const Eigen::VectorXcd pushed = pushforward(*conn, 4, kappa_coefficients(fine, a));
    CHECK(pushed == kappa_coefficients(coarse, a));
  }
}

TEST_CASE("Lanczos agrees with the dense SVD") {
  std::mt19937_64 rng(2);
  Config small;
  small.caps.dense_svd_max = 4;
  const auto h = DiscreteGroup::heisenberg();
  const auto q = mod_quotient(h, {3});
  for (int t = 0; t < 5; ++t) {
    const auto a = random_gaussian(h, rng, 4, 2);
    CHECK(std::abs(seminorm(q, a, small).value - seminorm(q, a).value) < 1e-6);
  }
}

TEST_CASE("seminorm cap") {
  Config cfg;
  cfg.caps.group_order = 10;
  const auto q = mod_quotient(DiscreteGroup::integers(), {12});
  CHECK_THROWS_AS(seminorm(q, zsum({{0, 1.0}}), cfg), CapExceeded);
}

TEST_CASE("sup_seminorm") {
  const auto z = DiscreteGroup::integers();
  SUBCASE("circle maximiser zeta = i is hit at mod 4") {
    const auto r = sup_seminorm(zsum({{1, 1.0}, {0, I}}), modulus_schedule(z, {2, 4, 8, 16, 32, 64}));
    CHECK(std::abs(r.sup - 2.0) < 1e-9);
    CHECK(r.values[0].value < 2.0 - 1e-3);
    CHECK(std::abs(r.running_sup[1] - 2.0) < 1e-9);
    CHECK(r.monotone);
    CHECK(r.norm_certified);
  }
  SUBCASE("identity is constant 1") {
    const auto r = sup_seminorm(zsum({{0, 1.0}}), modulus_schedule(z, {1, 3, 9}));
    for (const auto& v : r.values) CHECK(v.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("trivial character present at every stage") {
    const auto r = sup_seminorm(zsum({{1, 1.0}, {0, 1.0}, {-1, 1.0}}), modulus_schedule(z, {1, 2, 6, 30}));
    for (const auto& v : r.values) CHECK(v.value == doctest::Approx(3.0).epsilon(1e-9));
  }
  SUBCASE("non-chain schedules are rejected") {
    CHECK_THROWS_AS(sup_seminorm(zsum({{0, 1.0}}), modulus_schedule(z, {4, 6})), UsageError);
  }
}
