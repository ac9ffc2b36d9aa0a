#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "procstar/linalg.hpp"
#include "procstar/prostructure.hpp"

using namespace procstar;

namespace {

GroupAlgebraElement zsum(std::initializer_list<std::pair<std::int64_t, Complex>> terms) {
  GroupAlgebraElement a(DiscreteGroup::integers());
  for (const auto& [x, c] : terms) a.add(z_element({x}), c);
  return a;
}

SystemTruncation zchain(std::initializer_list<std::int64_t> moduli) {
  return SystemTruncation(modulus_schedule(DiscreteGroup::integers(), moduli));
}

}  // namespace

TEST_CASE("system structure") {
  const auto sys = zchain({2, 4, 8});
  CHECK(sys.leq(0, 2));
  CHECK_FALSE(sys.leq(2, 0));
  CHECK(sys.is_functorial());
  CHECK(sys.is_directed());
  CHECK(sys.maximum() == std::optional<std::size_t>(2));

  const auto fork = zchain({2, 3});
  CHECK_FALSE(fork.is_directed());
  CHECK_FALSE(fork.maximum());
  CHECK(zchain({2, 3, 6}).is_directed());

  const auto h = DiscreteGroup::heisenberg();
  CHECK(SystemTruncation(modulus_schedule(h, {2, 4, 3, 12})).is_functorial());
  CHECK_THROWS_AS(SystemTruncation({mod_quotient(DiscreteGroup::integers(), {2}), mod_quotient(h, {2})}),
                  UsageError);
}

TEST_CASE("check_consistent") {
  const auto sys = zchain({2, 4, 8});
  const auto a = zsum({{1, 1.0}, {3, Complex(0.0, 2.0)}, {-5, -1.0}});
  auto fam = phi_truncated(a, sys);
  const auto ok = check_consistent(fam, sys);
  CHECK(ok.pass);
  CHECK(ok.max_defect == 0.0);
  CHECK(ok.pairs_checked == 3);

  fam.entries[1](0) += 1e-3;
  const auto bad = check_consistent(fam, sys);
  CHECK_FALSE(bad.pass);
  // A perturbation of a single coefficient by t has C* norm t.
  CHECK(bad.max_defect == doctest::Approx(1e-3).epsilon(1e-9));

  const auto single = zchain({5});
  ConsistentFamily any{{Eigen::VectorXcd::Random(5)}};
  CHECK(check_consistent(any, single).pass);
  CHECK(check_consistent(any, single).pairs_checked == 0);
  CHECK_THROWS_AS(check_consistent(any, sys), UsageError);
}

TEST_CASE("phi_truncated examples") {
  const Config cfg;
  const auto sys = zchain({2, 4, 8});
  const auto e = phi_truncated(zsum({{0, 1.0}}), sys);
  CHECK(bounded_check(e, sys, 1.0).sup_norm == doctest::Approx(1.0).epsilon(1e-12));

  const auto shift = phi_truncated(zsum({{1, 1.0}}), sys);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const int n = sys.node(i).target_order();
    CHECK(shift.entries[i].norm() == doctest::Approx(1.0));
    CHECK(shift.entries[i](1 % n) == Complex(1.0));
    CHECK(regular_norm(*sys.node(i).target(), shift.entries[i], cfg) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const auto two = zchain({2, 4});
  const auto diff = phi_truncated(zsum({{1, 1.0}, {-1, -1.0}}), two);
  CHECK(diff.entries[0].isZero(0.0));
  CHECK_FALSE(diff.entries[1].isZero(0.0));
  CHECK(check_consistent(diff, two).max_defect == 0.0);
}

TEST_CASE("phi_truncated on random elements") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> coord(-4, 4);
  std::normal_distribution<double> n01;
  const auto h = DiscreteGroup::heisenberg();
  const SystemTruncation sys(modulus_schedule(h, {2, 4, 3, 6}));
  for (int t = 0; t < 5; ++t) {
    GroupAlgebraElement a(h);
    for (int s = 0; s < 5; ++s)
      a.add(heisenberg_element(coord(rng), coord(rng), coord(rng)), Complex(n01(rng), n01(rng)));
    const auto fam = phi_truncated(a, sys);
    CHECK(check_consistent(fam, sys).max_defect == 0.0);
    const auto rep = bounded_check(fam, sys, l1_norm(a));
    CHECK(rep.is_bounded);
    // Quotients cannot increase norm.
    for (std::size_t j = 0; j < sys.size(); ++j)
      for (std::size_t i = 0; i < sys.size(); ++i)
        if (sys.leq(i, j)) CHECK(rep.node_norms[i] <= rep.node_norms[j] + 1e-6);
  }
}

TEST_CASE("bounded_check") {
  const auto sys = zchain({2, 4, 8});
  const auto a = zsum({{1, 1.0}, {0, Complex(0.0, 1.0)}});
  auto fam = phi_truncated(a, sys);
  const double base = bounded_check(fam, sys, 10.0).sup_norm;
  CHECK(base == doctest::Approx(2.0));
  for (auto& v : fam.entries) v *= Complex(-3.0, 4.0);
  CHECK(bounded_check(fam, sys, 10.0).sup_norm == doctest::Approx(5.0 * base));
  CHECK(bounded_check(fam, sys, 9.0).is_bounded == false);

  // Entry norm log(k + 1) at the k-th node of a cyclic chain.
  std::vector<std::int64_t> moduli;
  for (int k = 0; k < 10; ++k) moduli.push_back(std::int64_t{1} << (k + 1));
  const double bound = 2.0;
  for (std::size_t len = 1; len <= moduli.size(); ++len) {
    ConsistentFamily grow;
    std::vector<std::int64_t> prefix(moduli.begin(), moduli.begin() + static_cast<long>(len));
    const SystemTruncation part(modulus_schedule(DiscreteGroup::integers(), prefix));
    for (std::size_t k = 0; k < len; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(part.node(k).target_order());
      v(0) = std::log(static_cast<double>(k + 1));
      grow.entries.push_back(v);
    }
    const auto rep = bounded_check(grow, part, bound);
    CHECK(rep.sup_norm == doctest::Approx(std::log(static_cast<double>(len))));
    CHECK(rep.is_bounded == (std::log(static_cast<double>(len)) <= bound));
  }
}

TEST_CASE("fullness at truncation") {
  std::mt19937_64 rng(4);
  const Config cfg;
  const auto h = DiscreteGroup::heisenberg();
  const SystemTruncation sys(modulus_schedule(h, {2, 3, 6}));
  const auto top = sys.maximum();
  REQUIRE(top);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXcd v = random_complex(sys.node(*top).target_order(), 1, rng);
    v /= regular_norm(*sys.node(*top).target(), v, cfg);
    ConsistentFamily fam;
    for (std::size_t i = 0; i < sys.size(); ++i) fam.entries.push_back(sys.push(*top, i, v));
    CHECK(check_consistent(fam, sys).pass);
    const auto rep = fullness_at_truncation(fam, sys);
    CHECK(rep.has_maximum);
    CHECK(rep.reconstructs_exactly);
    CHECK(rep.top_norm <= 1.0 + 1e-9);
  }
  const auto fork = zchain({2, 3});
  CHECK_FALSE(fullness_at_truncation(phi_truncated(zsum({{0, 1.0}}), fork), fork).has_maximum);
}

TEST_CASE("faithfulness_probe") {
  const auto z = DiscreteGroup::integers();
  const auto schedule = modulus_schedule(z, {2, 3, 4});
  const auto out = faithfulness_probe({zsum({{1, 1.0}, {0, -1.0}}), GroupAlgebraElement(z),
                                       zsum({{1, 1.0}, {-1, -1.0}})},
                                      schedule);
  REQUIRE(out.size() == 3);
  CHECK(out[0].separated_at == std::optional<std::size_t>(0));
  CHECK(out[0].values[0] == doctest::Approx(2.0));
  CHECK(out[1].zero_input);
  CHECK_FALSE(out[1].separated_at);
  CHECK(out[2].separated_at == std::optional<std::size_t>(1));
  CHECK(out[2].values[0] < 1e-12);
  CHECK(out[2].values[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

  const auto short_schedule = modulus_schedule(z, {2});
  CHECK_FALSE(faithfulness_probe({zsum({{1, 1.0}, {-1, -1.0}})}, short_schedule)[0].separated_at);
}

TEST_CASE("pointwise topology of C(X)") {
  for (int size : {1, 5, 64}) {
    const auto r = pointwise_topology_demo(size, 3);
    CHECK(r.equivalence_holds);
    CHECK(r.domination_holds);
    REQUIRE(r.sequences.size() == 4);
    CHECK(r.sequences[0].converges_pointwise);
    CHECK(r.sequences[0].converges_in_all_seminorms);
    CHECK_FALSE(r.sequences[1].converges_pointwise);
    CHECK(r.sequences[2].converges_in_all_seminorms);
    const auto& osc = r.sequences[3];
    CHECK_FALSE(osc.converges_pointwise);
    for (int x = 0; x + 1 < size; ++x) CHECK(osc.coordinate_converges[x]);
    CHECK(osc.subset_converges == osc.subset_expected);
  }
  CHECK_THROWS_AS(pointwise_topology_demo(65), UsageError);
  CHECK_THROWS_AS(pointwise_topology_demo(0), UsageError);
}
