#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "procstar/quotients.hpp"

using namespace procstar;

TEST_CASE("apply on Z and Heisenberg") {
  const auto z = DiscreteGroup::integers();
  const auto q3 = mod_quotient(z, {3});
  CHECK(q3.apply(z_element({5})) == 2);
  CHECK(q3.apply(z_element({-1})) == 2);
  CHECK(q3.apply(z.identity()) == q3.target()->identity());

  const auto h = DiscreteGroup::heisenberg();
  const auto q2 = mod_quotient(h, {2});
  CHECK(q2.target_order() == 8);
  // (1,1,1) reduces to the matrix with entries (1,1,1) mod 2.
  CHECK(q2.apply(heisenberg_element(1, 1, 1)) == heisenberg_mod_index(2, 1, 1, 1));
  CHECK(q2.apply(heisenberg_element(3, -1, 5)) == heisenberg_mod_index(2, 1, 1, 1));
}

TEST_CASE("F2 onto S3 via g1 -> (12), g2 -> (123)") {
  const auto f = DiscreteGroup::free2();
  auto s3 = build_finite_group(symmetric(3));
  const std::vector<int> t12{1, 0, 2}, c123{1, 2, 0};
  const auto q = catalog_quotient(f, s3, {permutation_index(t12), permutation_index(c123)});
  // (12)(123): apply (123) first, then (12).
  std::vector<int> prod(3);
  for (int i = 0; i < 3; ++i) prod[i] = t12[c123[i]];
  CHECK(q.apply(free_word("g1 g2")) == permutation_index(prod));
  CHECK(is_surjective(q));
  CHECK(is_homomorphism_on_samples(q, 1));
}

TEST_CASE("quotient invariants") {
  std::vector<FiniteQuotient> qs = {
      mod_quotient(DiscreteGroup::integers(), {6}),
      mod_quotient(DiscreteGroup::integers(2), {2, 3}),
      mod_quotient(DiscreteGroup::heisenberg(), {3}),
      mod_quotient(DiscreteGroup::heisenberg(), {4}),
      trivial_quotient(DiscreteGroup::free2()),
      normal_quotient(DiscreteGroup::finite(build_finite_group(symmetric(3))), {3}),
  };
  for (const auto& q : qs) {
    CAPTURE(q.label());
    CHECK(is_surjective(q));
    CHECK(is_homomorphism_on_samples(q, 42));
  }
  // S3 modulo A3 is cyclic of order 2.
  CHECK(qs.back().target_order() == 2);
}

TEST_CASE("catalog relations are enforced") {
  auto s3 = build_finite_group(symmetric(3));
  // Two noncommuting images cannot come from Z^2.
  CHECK_THROWS_AS(catalog_quotient(DiscreteGroup::integers(2), s3, {1, 3}), UsageError);
  // Not surjective.
  CHECK_THROWS_AS(catalog_quotient(DiscreteGroup::free2(), s3, {1, 1}), UsageError);
  // Heisenberg into H3(Z/2) with the standard images.
  auto h2 = build_finite_group(heisenberg_mod(2));
  const auto q = catalog_quotient(
      DiscreteGroup::heisenberg(), h2,
      {heisenberg_mod_index(2, 1, 0, 0), heisenberg_mod_index(2, 0, 1, 0), heisenberg_mod_index(2, 0, 0, 1)});
  const auto m = mod_quotient(DiscreteGroup::heisenberg(), {2});
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) CHECK(q.apply(heisenberg_element(a, b, c)) == m.apply(heisenberg_element(a, b, c)));
}

TEST_CASE("refine Z: mod 4 and mod 6 give mod 12") {
  const auto z = DiscreteGroup::integers();
  const auto q4 = mod_quotient(z, {4}), q6 = mod_quotient(z, {6});
  const auto r = refine(q4, q6);
  CHECK(r.moduli() == std::vector<std::int64_t>{12});
  for (int x = -24; x <= 24; ++x) {
    const bool in_kernel = r.apply(z_element({x})) == r.target()->identity();
    const bool in_both = q4.apply(z_element({x})) == 0 && q6.apply(z_element({x})) == 0;
    CHECK(in_kernel == in_both);
  }
  CHECK(refines(r, q4));
  CHECK(refines(r, q6));
  CHECK_FALSE(refines(q4, q6));
  CHECK_FALSE(refines(q4, r));
}

TEST_CASE("refine a quotient with itself") {
  const auto q = mod_quotient(DiscreteGroup::integers(2), {3, 5});
  CHECK(refine(q, q).moduli() == q.moduli());
}

TEST_CASE("refine Heisenberg: mod 2 and mod 3 give mod 6") {
  const auto h = DiscreteGroup::heisenberg();
  const auto q2 = mod_quotient(h, {2}), q3 = mod_quotient(h, {3});
  const auto r = refine(q2, q3);
  CHECK(r.target_order() == 216);
  const auto to2 = connecting_map(r, q2), to3 = connecting_map(r, q3);
  REQUIRE(to2);
  REQUIRE(to3);
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c) {
        const auto x = heisenberg_element(a, b, c);
        CHECK((*to2)[r.apply(x)] == q2.apply(x));
        CHECK((*to3)[r.apply(x)] == q3.apply(x));
        if (r.apply(x) == r.target()->identity()) {
          CHECK(q2.apply(x) == q2.target()->identity());
          CHECK(q3.apply(x) == q3.target()->identity());
        }
      }
}

TEST_CASE("generic refinement through the pair map") {
  const auto f = DiscreteGroup::free2();
  auto s3 = build_finite_group(symmetric(3));
  auto c4 = build_finite_group(cyclic(4));
  const auto a = catalog_quotient(f, s3, {1, 3});
  const auto b = catalog_quotient(f, c4, {1, 0});
  const auto r = refine(a, b);
  CHECK(is_surjective(r));
  CHECK(is_homomorphism_on_samples(r, 3));
  CHECK(refines(r, a));
  CHECK(refines(r, b));

  // Mixed kinds on Heisenberg: mod 2 and an explicit map onto Z/3 through the abelianisation.
  const auto h = DiscreteGroup::heisenberg();
  const auto m2 = mod_quotient(h, {2});
  const auto ab = catalog_quotient(h, build_finite_group(cyclic(3)), {1, 0, 0});
  const auto hr = refine(m2, ab);
  CHECK(refines(hr, m2));
  CHECK(refines(hr, ab));
  CHECK(hr.target_order() == 24);
}

TEST_CASE("refine finite groups by kernel intersection") {
  const auto g = DiscreteGroup::finite(build_finite_group(direct_product({cyclic(2), cyclic(3)})));
  // Kernels: the Z/2 factor {0,3} and the Z/3 factor {0,2,4}.
  const auto a = normal_quotient(g, {3});
  const auto b = normal_quotient(g, {2});
  const auto r = refine(a, b);
  CHECK(r.target_order() == 6);
  CHECK(r.kernel() == std::vector<int>{0});
  CHECK(refines(r, a));
  CHECK(refines(r, b));
}

TEST_CASE("refine respects the order cap") {
  const auto z = DiscreteGroup::integers();
  CHECK_THROWS_AS(refine(mod_quotient(z, {97}), mod_quotient(z, {89}), 1000), CapExceeded);
}

TEST_CASE("min_injective_quotient") {
  const auto z = DiscreteGroup::integers();
  SUBCASE("Z: {-1,0,1} needs mod 3") {
    const std::vector<Element> s = {z_element({-1}), z_element({0}), z_element({1})};
    const auto q = min_injective_quotient(z, s);
    CHECK(q.moduli() == std::vector<std::int64_t>{3});
    CHECK(is_injective_on(q, s));
    CHECK_FALSE(is_injective_on(mod_quotient(z, {2}), s));
  }
  SUBCASE("singleton gives the trivial quotient") {
    CHECK(min_injective_quotient(z, {z.identity()}).target_order() == 1);
    CHECK(min_injective_quotient(DiscreteGroup::heisenberg(), {heisenberg_element(0, 0, 0)}).target_order() == 1);
    CHECK(min_injective_quotient(DiscreteGroup::free2(), {Element{}}).target_order() == 1);
  }
  SUBCASE("Heisenberg box [-1,1]^3 needs mod 3") {
    const auto h = DiscreteGroup::heisenberg();
    std::vector<Element> box;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) box.push_back(heisenberg_element(a, b, c));
    const auto q = min_injective_quotient(h, box);
    CHECK(q.moduli() == std::vector<std::int64_t>{3});
    CHECK(is_injective_on(mod_quotient(h, {3}), box));
    CHECK_FALSE(is_injective_on(mod_quotient(h, {2}), box));
  }
  SUBCASE("minimality property over random sets") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> coord(-6, 6);
    const auto h = DiscreteGroup::heisenberg();
    for (int t = 0; t < 30; ++t) {
      std::vector<Element> s;
      for (int k = 0; k < 4; ++k) s.push_back(heisenberg_element(coord(rng), coord(rng), coord(rng)));
      const auto q = min_injective_quotient(h, s);
      CHECK(is_injective_on(q, s));
      for (std::int64_t n = 1; n < q.moduli()[0]; ++n) CHECK_FALSE(is_injective_on(mod_quotient(h, {n}), s));
    }
  }
  SUBCASE("F2 catalog") {
    const auto f = DiscreteGroup::free2();
    const std::vector<Element> s = {Element{}, free_word("g1"), free_word("g2"), free_word("g1 g2")};
    const auto q = min_injective_quotient(f, s);
    CHECK(is_injective_on(q, s));
    CHECK(q.kind() == QuotientKind::Catalog);
    // No target of order below 4 can separate four elements.
    CHECK(q.target_order() >= 4);
    // A commutator is invisible to every abelian target; needs a nonabelian one.
    const std::vector<Element> comm = {Element{}, free_word("g1 g2 -g1 -g2")};
    const auto qc = min_injective_quotient(f, comm);
    CHECK(qc.target_order() == 6);
  }
  SUBCASE("finite groups search the normal subgroup lattice") {
    const auto s3 = DiscreteGroup::finite(build_finite_group(symmetric(3)));
    // Identity and a transposition are separated by the sign map.
    const auto q = min_injective_quotient(s3, {finite_element(0), finite_element(1)});
    CHECK(q.target_order() == 2);
    const auto all = min_injective_quotient(s3, {finite_element(0), finite_element(3)});
    CHECK(all.target_order() == 6);
  }
  SUBCASE("cap exhaustion is NotFound") {
    Caps caps;
    caps.group_order = 8;
    CHECK_THROWS_AS(min_injective_quotient(z, {z_element({0}), z_element({8 * 9 * 5 * 7})}, caps), NotFound);
  }
}

TEST_CASE("quotients compose along the modulus chain") {
  const auto h = DiscreteGroup::heisenberg();
  const auto z2 = DiscreteGroup::integers(2);
  for (std::int64_t n : {2, 3}) {
    for (std::int64_t k : {1, 2, 3}) {
      const auto fine = canonical_quotient(h, k * n), coarse = canonical_quotient(h, n);
      const auto conn = connecting_map(fine, coarse);
      REQUIRE(conn);
      for (int a = -3; a <= 3; ++a)
        for (int c = -3; c <= 3; ++c) {
          const auto x = heisenberg_element(a, c - a, c);
          CHECK((*conn)[fine.apply(x)] == coarse.apply(x));
        }
      const auto zf = canonical_quotient(z2, k * n), zc = canonical_quotient(z2, n);
      const auto zconn = connecting_map(zf, zc);
      REQUIRE(zconn);
      for (int a = -5; a <= 5; ++a) {
        const auto x = z_element({a, 2 * a - 1});
        CHECK((*zconn)[zf.apply(x)] == zc.apply(x));
      }
    }
  }
}
