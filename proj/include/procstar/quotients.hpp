#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "procstar/group_algebra.hpp"

namespace procstar {

enum class QuotientKind {
  Mod,      // congruence quotient: moduli per Z^d coordinate, or one modulus for Heisenberg
  Catalog,  // explicit generator images in a finite target
  Normal,   // finite source modulo a normal subgroup
};

std::string to_string(QuotientKind k);

/// Surjection from a supported group onto an explicit finite group.
class FiniteQuotient {
 public:
  const DiscreteGroup& source() const { return source_; }
  const FiniteGroupPtr& target() const { return target_; }
  int target_order() const { return target_->order(); }
  QuotientKind kind() const { return kind_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  /// Image of source().generator(i).
  const std::vector<int>& generator_images() const { return images_; }
  /// Normal kind: sorted kernel element indices of the finite source.
  const std::vector<int>& kernel() const { return kernel_; }
  /// Normal kind: the generators the kernel was built from.
  const std::vector<int>& kernel_generators() const { return kernel_generators_; }
  std::string label() const;

  int apply(const Element& g) const;

  friend FiniteQuotient mod_quotient(const DiscreteGroup&, std::vector<std::int64_t>, std::size_t);
  friend FiniteQuotient catalog_quotient(const DiscreteGroup&, FiniteGroupPtr, std::vector<int>,
                                         std::string);
  friend FiniteQuotient normal_quotient(const DiscreteGroup&, std::vector<int>, std::size_t);

 private:
  FiniteQuotient() = default;
  int evaluate_word(const Element& g) const;

  DiscreteGroup source_;
  FiniteGroupPtr target_;
  QuotientKind kind_ = QuotientKind::Mod;
  std::vector<std::int64_t> moduli_;
  std::vector<int> images_;
  std::vector<int> kernel_;
  std::vector<int> kernel_generators_;
  std::vector<int> coset_of_;  // Normal kind: element -> coset index
  std::string catalog_label_;
};

/// Z^d modulo (m_1, ..., m_d) onto the product of cyclic groups (last coordinate fastest), or
/// Heisenberg modulo n onto heisenberg_mod(n).
FiniteQuotient mod_quotient(const DiscreteGroup& g, std::vector<std::int64_t> moduli,
                            std::size_t order_cap = 5000);
/// Homomorphism given by generator images; relations and surjectivity are verified.
FiniteQuotient catalog_quotient(const DiscreteGroup& g, FiniteGroupPtr target,
                                std::vector<int> generator_images, std::string label = {});
/// Finite source modulo the normal closure of the given elements.
FiniteQuotient normal_quotient(const DiscreteGroup& g, std::vector<int> kernel_generators,
                               std::size_t order_cap = 5000);
FiniteQuotient trivial_quotient(const DiscreteGroup& g);

/// Exact checks of the quotient invariants.
bool is_surjective(const FiniteQuotient& q);
bool is_homomorphism_on_samples(const FiniteQuotient& q, std::uint64_t seed, int samples = 200);
bool is_injective_on(const FiniteQuotient& q, const std::vector<Element>& s);

/// Connecting surjection fine.target -> coarse.target with coarse = conn o fine, when it exists.
std::optional<std::vector<int>> connecting_map(const FiniteQuotient& fine,
                                               const FiniteQuotient& coarse);
bool refines(const FiniteQuotient& fine, const FiniteQuotient& coarse);

/// Common refinement: a quotient whose kernel is the intersection of both kernels.
FiniteQuotient refine(const FiniteQuotient& q1, const FiniteQuotient& q2,
                      std::size_t order_cap = 5000);

/// Least quotient in the family's canonical chain that is injective on s.
/// Throws NotFound when nothing within the caps separates s.
FiniteQuotient min_injective_quotient(const DiscreteGroup& g, const std::vector<Element>& s,
                                      const Caps& caps = {});

/// Canonical chain entry: uniform modulus n for Z^d and Heisenberg.
FiniteQuotient canonical_quotient(const DiscreteGroup& g, std::int64_t n,
                                  std::size_t order_cap = 5000);

/// Catalog targets for F2, sorted by (order, label).
std::vector<FiniteGroupPtr> free_group_catalog_targets(std::size_t max_order = 120);

}  // namespace procstar
