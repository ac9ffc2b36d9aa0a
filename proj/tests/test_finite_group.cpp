#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <complex>
#include <random>
#include <set>

#include "procstar/finite_group.hpp"
#include "procstar/linalg.hpp"

using namespace procstar;

namespace {

using Mat3 = std::array<std::array<long, 3>, 3>;

Mat3 unitriangular(long a, long b, long c) { return {{{1, a, c}, {0, 1, b}, {0, 0, 1}}}; }

Mat3 matmul_mod(const Mat3& x, const Mat3& y, long n) {
  Mat3 z{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long s = 0;
      for (int k = 0; k < 3; ++k) s += x[i][k] * y[k][j];
      z[i][j] = ((s % n) + n) % n;
    }
  return z;
}

bool check_group_laws(const FiniteGroup& g) {
  for (int x = 0; x < g.order(); ++x) {
    if (g.mul(g.identity(), x) != x || g.mul(x, g.identity()) != x) return false;
    if (g.mul(x, g.inv(x)) != g.identity()) return false;
  }
  return g.is_associative();
}

Eigen::VectorXcd random_gaussian_integer(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {double(d(rng)), double(d(rng))};
  return v;
}

}  // namespace

TEST_CASE("trivial group") {
  auto g = build_finite_group(cyclic(1));
  CHECK(g->order() == 1);
  CHECK(g->identity() == 0);
  CHECK(check_group_laws(*g));
  const auto reg = regular_representation(g);
  CHECK(reg.dense(0) == Eigen::MatrixXd::Ones(1, 1));
  const auto dec = decompose_regular(g, 1);
  REQUIRE(dec.blocks.size() == 1);
  CHECK(dec.blocks[0].dim == 1);
  CHECK(std::abs(dec.blocks[0].matrices[0](0, 0) - 1.0) < 1e-12);
}

TEST_CASE("heisenberg_mod(2) matches the unitriangular matrix product mod 2") {
  auto g = build_finite_group(heisenberg_mod(2));
  REQUIRE(g->order() == 8);
  std::set<Mat3> seen;
  for (int x = 0; x < 8; ++x) {
    const Mat3 mx = unitriangular(x / 4, (x / 2) % 2, x % 2);
    seen.insert(mx);
    for (int y = 0; y < 8; ++y) {
      const Mat3 my = unitriangular(y / 4, (y / 2) % 2, y % 2);
      const int z = g->mul(x, y);
      CHECK(matmul_mod(mx, my, 2) == unitriangular(z / 4, (z / 2) % 2, z % 2));
    }
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("family orders and group laws") {
  const std::vector<std::pair<GroupDescriptor, int>> cases = {
      {cyclic(7), 7},
      {elementary_abelian_2(3), 8},
      {dihedral(4), 8},
      {dihedral(1), 2},
      {symmetric(3), 6},
      {symmetric(4), 24},
      {heisenberg_mod(3), 27},
      {direct_product({cyclic(2), cyclic(3)}), 6},
      {direct_product({symmetric(3), cyclic(2)}), 12},
  };
  for (const auto& [d, order] : cases) {
    auto g = build_finite_group(d);
    CAPTURE(g->label());
    CHECK(g->order() == order);
    CHECK(check_group_laws(*g));
  }
  CHECK(build_finite_group(symmetric(6))->order() == 720);
  CHECK(build_finite_group(heisenberg_mod(5))->order() == 125);
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(build_finite_group({"quaternion", {8}, {}}), UsageError);
  CHECK_THROWS_AS(build_finite_group(symmetric(7)), UsageError);
  CHECK_THROWS_AS(build_finite_group(cyclic(0)), UsageError);
  CHECK_THROWS_AS(build_finite_group(heisenberg_mod(18)), CapExceeded);
  CHECK_THROWS_AS(build_finite_group(cyclic(100), 50), CapExceeded);
  CHECK(build_finite_group({"heisenberg-mod", {2}, {}})->order() == 8);
}

TEST_CASE("symmetric(3) has three conjugacy classes") {
  auto g = build_finite_group(symmetric(3));
  // Brute force on explicit permutations, independent of the table.
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < 6; ++i) perms.push_back(permutation_from_index(3, i));
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(3);
    for (int i = 0; i < 3; ++i) c[i] = a[b[i]];
    return c;
  };
  auto inverse = [](const std::vector<int>& a) {
    std::vector<int> c(3);
    for (int i = 0; i < 3; ++i) c[a[i]] = i;
    return c;
  };
  std::set<std::set<std::vector<int>>> classes;
  for (const auto& x : perms) {
    std::set<std::vector<int>> cls;
    for (const auto& y : perms) cls.insert(compose(compose(y, x), inverse(y)));
    classes.insert(cls);
  }
  CHECK(classes.size() == 3);
  CHECK(g->conjugacy_classes().size() == 3);
  CHECK(permutation_index(std::vector<int>{0, 1, 2}) == 0);
}

TEST_CASE("permutation rank round trip") {
  for (int n = 1; n <= 5; ++n) {
    int fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int r = 0; r < fact; ++r) CHECK(permutation_index(permutation_from_index(n, r)) == r);
  }
}

TEST_CASE("regular representation") {
  SUBCASE("cyclic generator is the cyclic shift") {
    const int n = 5;
    auto g = build_finite_group(cyclic(n));
    const auto reg = regular_representation(g);
    Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) shift((j + 1) % n, j) = 1.0;
    CHECK(reg.dense(1) == shift);
  }
  SUBCASE("symmetric(3) is faithful and multiplicative") {
    auto g = build_finite_group(symmetric(3));
    const auto reg = regular_representation(g);
    for (int x = 0; x < 6; ++x) {
      for (int y = x + 1; y < 6; ++y) CHECK(reg.dense(x) != reg.dense(y));
      for (int y = 0; y < 6; ++y) CHECK(reg.dense(g->mul(x, y)) == reg.dense(x) * reg.dense(y));
    }
  }
  SUBCASE("operator_of is left convolution") {
    auto g = build_finite_group(dihedral(3));
    const auto reg = regular_representation(g);
    std::mt19937_64 rng(3);
    const Eigen::VectorXcd c = random_gaussian_integer(g->order(), rng);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(6, 6);
    for (int s = 0; s < 6; ++s) expected += c(s) * reg.dense(s).cast<std::complex<double>>();
    CHECK(max_abs_diff(reg.operator_of(c), expected) == 0.0);
  }
}

TEST_CASE("decompose cyclic(4): four characters i^{jk}") {
  auto g = build_finite_group(cyclic(4));
  const auto dec = decompose_regular(g, 11);
  REQUIRE(dec.blocks.size() == 4);
  const std::complex<double> i(0.0, 1.0);
  std::set<int> matched;
  for (const auto& b : dec.blocks) {
    REQUIRE(b.dim == 1);
    for (int k = 0; k < 4; ++k) {
      bool all = true;
      for (int j = 0; j < 4; ++j) all = all && std::abs(b.matrices[j](0, 0) - std::pow(i, j * k)) < 1e-10;
      if (all) matched.insert(k);
    }
  }
  CHECK(matched.size() == 4);
}

TEST_CASE("decompose symmetric(3): dims {1,1,2}") {
  auto g = build_finite_group(symmetric(3));
  const auto dec = decompose_regular(g, 5);
  CHECK(dec.dims() == std::vector<int>{1, 1, 2});
  CHECK(dec.multiplicities == std::vector<int>{1, 1, 2});
  for (const auto& b : dec.blocks) {
    CHECK(is_unitary_representation(b, 1e-10));
    CHECK(is_homomorphism(*g, b, 1e-10));
    CHECK(is_irreducible(*g, b, 1e-10));
  }
  // The regular representation itself is reducible.
  Representation reg;
  reg.dim = 6;
  const auto rr = regular_representation(g);
  for (int x = 0; x < 6; ++x) reg.matrices.push_back(rr.dense(x).cast<std::complex<double>>());
  CHECK_FALSE(is_irreducible(*g, reg, 1e-6));
}

TEST_CASE("decomposition invariants across families") {
  const std::vector<GroupDescriptor> ds = {
      cyclic(6),       elementary_abelian_2(3), dihedral(4), dihedral(5),
      symmetric(4),    heisenberg_mod(3),       direct_product({symmetric(3), cyclic(2)}),
      heisenberg_mod(2)};
  std::mt19937_64 rng(17);
  for (const auto& d : ds) {
    auto g = build_finite_group(d);
    CAPTURE(g->label());
    const auto dec = decompose_regular(g, 3);
    int total = 0;
    for (int dim : dec.dims()) total += dim * dim;
    CHECK(total == g->order());
    CHECK(dec.blocks.size() == g->conjugacy_classes().size());
    for (std::size_t a = 0; a < dec.blocks.size(); ++a)
      for (std::size_t b = a + 1; b < dec.blocks.size(); ++b)
        CHECK(std::abs(character_inner(*g, dec.blocks[a], dec.blocks[b])) < 1e-10);

    // Norm in the regular representation equals the max over blocks.
    const auto reg = regular_representation(g);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXcd c = random_gaussian_integer(g->order(), rng);
      CHECK(std::abs(spectral_norm(reg.operator_of(c)) - block_norm(dec, c)) < 1e-6);
    }
  }
}

TEST_CASE("decomposition is seed independent up to characters") {
  auto g = build_finite_group(dihedral(5));
  const auto a = decompose_regular(g, 1);
  const auto b = decompose_regular(g, 999);
  REQUIRE(a.blocks.size() == b.blocks.size());
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    CHECK(a.blocks[k].dim == b.blocks[k].dim);
    const auto ca = a.blocks[k].character(), cb = b.blocks[k].character();
    for (std::size_t x = 0; x < ca.size(); ++x) CHECK(std::abs(ca[x] - cb[x]) < 1e-10);
  }
}

TEST_CASE("degenerate split exhausts retries") {
  Config cfg;
  cfg.tol.spec = 1e6;  // every eigenvalue gap counts as degenerate
  cfg.caps.decompose_retries = 2;
  CHECK_THROWS_AS(decompose_regular(build_finite_group(cyclic(3)), 1, cfg), PrecisionError);
}
