#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "procstar/config.hpp"

namespace procstar {

/// Parametrised family of explicit finite groups.
struct GroupDescriptor {
  std::string family;  // cyclic, elementary_abelian_2, dihedral, symmetric, heisenberg_mod, direct_product
  std::vector<int> params;
  std::vector<GroupDescriptor> factors;  // direct_product only

  bool operator==(const GroupDescriptor&) const = default;
};

/// Finite group stored by its multiplication table. Element 0 is not assumed to be the identity.
class FiniteGroup {
 public:
  /// Takes a row-major order×order table; validates identity and inverses.
  FiniteGroup(int order, std::vector<int> table, std::string label);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int x, int y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
  int inv(int x) const { return inverse_[x]; }
  int power(int x, std::int64_t e) const;
  int element_order(int x) const;
  const std::string& label() const { return label_; }
  std::span<const int> table() const { return table_; }

  /// Greedy generating set: repeatedly adjoin the least element outside the subgroup generated so far.
  const std::vector<int>& generators() const { return generators_; }
  /// Word in generators() (indices into that list, each with exponent +1) multiplying to x.
  std::vector<int> word(int x) const;

  std::vector<std::vector<int>> conjugacy_classes() const;
  /// Class index of every element, consistent with conjugacy_classes().
  std::vector<int> class_of() const;

  /// Exhaustive for order <= 200, otherwise `samples` random triples.
  bool is_associative(std::uint64_t seed = 1, int samples = 200000) const;
  /// Subgroup generated by the given elements, sorted.
  std::vector<int> closure(std::span<const int> gens) const;
  /// Smallest normal subgroup containing the given elements, sorted.
  std::vector<int> normal_closure(std::span<const int> gens) const;

  bool same_table(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string label_;
  std::vector<int> generators_;
  std::vector<int> bfs_parent_;      // element reached from
  std::vector<int> bfs_generator_;   // via right multiplication by generators_[..]
};

using FiniteGroupPtr = std::shared_ptr<const FiniteGroup>;

std::size_t family_order(const GroupDescriptor& d);
/// Builds one of the supported families; throws UsageError / CapExceeded.
FiniteGroupPtr build_finite_group(const GroupDescriptor& d, std::size_t order_cap = 5000);

GroupDescriptor cyclic(int n);
GroupDescriptor elementary_abelian_2(int k);
GroupDescriptor dihedral(int n);
GroupDescriptor symmetric(int n);
GroupDescriptor heisenberg_mod(int n);
GroupDescriptor direct_product(std::vector<GroupDescriptor> factors);

/// Lexicographic rank of a permutation of {0..n-1}; the element index in symmetric(n).
int permutation_index(std::span<const int> perm);
std::vector<int> permutation_from_index(int n, int index);
/// Index of (a, b, c) mod n in heisenberg_mod(n).
int heisenberg_mod_index(int n, std::int64_t a, std::int64_t b, std::int64_t c);
/// Index of r^i s^f in dihedral(n).
int dihedral_index(int n, int rotation, int reflection);

/// Left regular representation by permutation matrices: matrix(g) e_h = e_{gh}.
class RegularRepresentation {
 public:
  explicit RegularRepresentation(FiniteGroupPtr group);
  int dim() const { return group_->order(); }
  const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>& matrix(int g) const {
    return perms_[g];
  }
  Eigen::MatrixXd dense(int g) const;
  /// Left-convolution matrix M[x][y] = c(x y^-1) of the coefficient vector c.
  Eigen::MatrixXcd operator_of(const Eigen::VectorXcd& coeffs) const;

 private:
  FiniteGroupPtr group_;
  std::vector<Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int>> perms_;
};

RegularRepresentation regular_representation(FiniteGroupPtr group);

/// Unitary matrix representation of a finite group, one matrix per element index.
struct Representation {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> matrices;

  std::vector<std::complex<double>> character() const;
};
using Irrep = Representation;

struct IrrepDecomposition {
  std::vector<Irrep> blocks;
  std::vector<int> multiplicities;
  int attempts = 1;

  std::vector<int> dims() const;
};

/// Splits the regular representation: isotypic components from a random Hermitian central
/// element, then one copy of each irreducible from a random Hermitian element of the
/// commutant (right translations). Blocks are sorted by (dim, character).
IrrepDecomposition decompose_regular(const FiniteGroupPtr& group, std::uint64_t seed,
                                     const Config& cfg = {});

bool is_unitary_representation(const Representation& rep, double tol);
bool is_homomorphism(const FiniteGroup& g, const Representation& rep, double tol);
/// Averages a random matrix over the group action; irreducible iff the average is scalar.
bool is_irreducible(const FiniteGroup& g, const Representation& rep, double tol,
                    std::uint64_t seed = 7);
/// <chi_a, chi_b> = |G|^-1 sum chi_a(g) conj(chi_b(g)).
std::complex<double> character_inner(const FiniteGroup& g, const Representation& a,
                                     const Representation& b);

/// max over blocks of || sum_g c(g) block(g) ||.
double block_norm(const IrrepDecomposition& dec, const Eigen::VectorXcd& coeffs);

}  // namespace procstar
