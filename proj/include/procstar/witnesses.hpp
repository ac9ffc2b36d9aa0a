#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "procstar/seminorms.hpp"

namespace procstar {

/// Certificate that seminorm(quotient, b) >= lower_bound, after the proof that residually finite
/// amenable groups have faithful profinite structure.
struct SeparationWitness {
  FiniteQuotient quotient;
  std::vector<Element> st_set;   // supp(b) * supp(xi)
  bool injective_on_st = false;  // exact
  Eigen::VectorXcd vector;       // eta = pushforward of xi, a unit vector on the quotient
  double lower_bound = 0.0;      // ||b * xi||_2 summed over S*T
  double achieved = 0.0;         // ||kappa(b) eta||_2 on the quotient
};

/// Throws UsageError for b = 0 or xi = 0. xi defaults to delta_e and is normalised.
SeparationWitness rf_amen_witness(const GroupAlgebraElement& b,
                                  const std::optional<GroupAlgebraElement>& xi = std::nullopt,
                                  const Config& cfg = {});

/// e^{2 pi i numerator / order}.
struct RootOfUnity {
  int numerator = 0;
  int order = 1;
  Complex value() const;
  bool operator==(const RootOfUnity&) const = default;
};

struct HeisenbergParams {
  int n = 1;
  int k = 1;
  Complex alpha = 1.0;
  Complex beta = 1.0;
};

/// Unitary matrices for the generators of a discrete group.
struct GeneratorRep {
  DiscreteGroup group;
  int dim = 1;
  std::vector<Eigen::MatrixXcd> generators;
  std::optional<HeisenbergParams> heisenberg;
};

/// pi(g) = alpha diag(omega^{jk}), pi(h) = beta s_n with s_n delta_j = delta_{j+1}, pi(z) = omega^k.
GeneratorRep heisenberg_irrep(int n, int k, Complex alpha, Complex beta, const Config& cfg = {});
/// Restriction of a representation of a finite group to its generators().
GeneratorRep generator_rep(const DiscreteGroup& finite, const Representation& rep);
GeneratorRep trivial_rep(const DiscreteGroup& g);

Eigen::MatrixXcd evaluate(const GeneratorRep& rep, const Element& g);
Eigen::MatrixXcd evaluate(const GeneratorRep& rep, const GroupAlgebraElement& a);

/// Largest generator unitarity defect.
double unitarity_defect(const GeneratorRep& rep);
/// Largest defect of the defining relations: gh = zhg and z central for Heisenberg, commutators
/// for Z^d, all products for finite groups (sampled above order 200), none for F2.
double relation_defect(const GeneratorRep& rep, std::uint64_t seed = 1);

enum class ClosureStatus { Finite, Overflow, PrecisionFailure };
std::string to_string(ClosureStatus s);

/// Image of a representation, enumerated by closing the generators under right multiplication.
struct ClosureResult {
  ClosureStatus status = ClosureStatus::Overflow;
  std::vector<Eigen::MatrixXcd> elements;  // element 0 is the identity matrix
  std::vector<std::vector<int>> cayley;    // cayley[x][s] = index of elements[x] * generator s
  std::vector<int> parent;                 // BFS tree: elements[x] = elements[parent[x]] * gen
  std::vector<int> parent_generator;
  double ambiguity = 0.0;                  // distance that triggered a precision failure

  std::size_t order() const { return elements.size(); }
  /// Generator indices whose product is elements[x].
  std::vector<int> word(int x) const;
  /// Image group with multiplication table; requires status Finite.
  FiniteGroupPtr image_group(std::size_t order_cap = 5000) const;
  /// Schreier relators word(x) s word(xs)^-1, as signed 1-based generator letters.
  std::vector<std::vector<int>> kernel_words() const;
};

/// Throws UsageError for size_bound > 1e6.
ClosureResult finite_range_check(const GeneratorRep& rep, std::size_t size_bound, const Config& cfg = {});

struct SeparationSearch {
  int max_n = 12;
  int max_root_order = 24;
  double min_norm = -1.0;  // negative: cfg.tol.norm
};

struct HeisenbergSeparation {
  GeneratorRep rep;
  int n = 1, k = 1;
  RootOfUnity alpha, beta;
  double norm = 0.0;
  std::size_t image_order = 0;
  std::size_t tuples_tried = 0;
};

/// Roots of unity of order at most max_order, sorted by (order, numerator), primitive only.
std::vector<RootOfUnity> roots_of_unity(int max_order);

/// Lexicographically least (n, k, alpha, beta) whose representation has ||pi(a)|| > min_norm and a
/// finite image. Returns nullopt when the ranges are exhausted. Throws UsageError for a = 0.
std::optional<HeisenbergSeparation> heisenberg_separation(const GroupAlgebraElement& a,
                                                          const SeparationSearch& search = {},
                                                          const Config& cfg = {});

struct Factorization {
  FiniteQuotient quotient;
  std::vector<Eigen::MatrixXcd> quotient_rep;  // tautological representation of the image group
  double max_error = 0.0;                      // ||pi(a) - mu(kappa(a))|| over the samples
  bool verified = false;
};

/// Quotient onto the enumerated image; compares pi(a) with the quotient representation on kappa(a).
/// Throws PrecisionError / CapExceeded when the closure does not finish.
Factorization factor_through_quotient(const GeneratorRep& rep, const std::vector<GroupAlgebraElement>& samples,
                                      const Config& cfg = {});

/// Random elements with Gaussian-integer coefficients and small support.
std::vector<GroupAlgebraElement> random_elements(const DiscreteGroup& g, int count, std::uint64_t seed,
                                                 int support = 4, int box = 3);

struct U3Report {
  Eigen::Matrix3cd u, v, a, b;  // a = (uv)^2, b = (uv^2)^2
  int max_word_length = 0;
  std::size_t words_checked = 0;
  double min_distance = 0.0;
  std::string argmin_word;
  bool all_separated = false;  // min_distance > 10 tol.alg
};

Eigen::Matrix3cd u3_u();
Eigen::Matrix3cd u3_v();

/// Every nontrivial reduced word in a, b of length <= max_word_length, distance measured by ||W - I||.
U3Report free_group_u3_check(int max_word_length, const Config& cfg = {});

}  // namespace procstar
