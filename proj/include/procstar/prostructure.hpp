#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "procstar/seminorms.hpp"

namespace procstar {

/// Finite piece of the inverse system of quotient algebras C[G/N], N in a finite set of nodes.
/// Node i precedes node j when j refines i; the connecting map then pushes C[G/N_j] onto C[G/N_i].
class SystemTruncation {
 public:
  explicit SystemTruncation(std::vector<FiniteQuotient> nodes);

  std::size_t size() const { return nodes_.size(); }
  const FiniteQuotient& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<FiniteQuotient>& nodes() const { return nodes_; }

  /// True when node j refines node i.
  bool leq(std::size_t i, std::size_t j) const { return maps_[j][i].has_value(); }
  /// Connecting surjection target(j) -> target(i); requires leq(i, j).
  const std::vector<int>& connecting(std::size_t j, std::size_t i) const;
  Eigen::VectorXcd push(std::size_t from, std::size_t to, const Eigen::VectorXcd& entry) const;

  /// A node refining every other node, if present (first in node order).
  std::optional<std::size_t> maximum() const;
  /// Every pair of nodes has a common refinement among the nodes.
  bool is_directed() const;
  /// conn(j->i) o conn(k->j) == conn(k->i) for all comparable triples, exactly.
  bool is_functorial() const;

 private:
  std::vector<FiniteQuotient> nodes_;
  std::vector<std::vector<std::optional<std::vector<int>>>> maps_;  // maps_[from][to]
};

/// One coefficient vector per node.
struct ConsistentFamily {
  std::vector<Eigen::VectorXcd> entries;
};

struct ConsistencyReport {
  bool pass = true;
  double max_defect = 0.0;
  std::size_t pairs_checked = 0;
};

/// max over comparable pairs i < j of || push(j -> i, entry_j) - entry_i ||, measured in the
/// C* norm of the coarse node.
ConsistencyReport check_consistent(const ConsistentFamily& fam, const SystemTruncation& sys,
                                   const Config& cfg = {});

/// (kappa_N(a))_N over the nodes.
ConsistentFamily phi_truncated(const GroupAlgebraElement& a, const SystemTruncation& sys);

struct BoundedFamilyReport {
  std::vector<double> node_norms;
  double sup_norm = 0.0;
  bool is_bounded = true;
};

BoundedFamilyReport bounded_check(const ConsistentFamily& fam, const SystemTruncation& sys, double bound,
                                  const Config& cfg = {});

/// Pushforward family of the entry at the maximum node.
ConsistentFamily reconstruct_from_top(const ConsistentFamily& fam, const SystemTruncation& sys);

struct FullnessReport {
  bool has_maximum = false;
  bool reconstructs_exactly = false;
  double top_norm = 0.0;
};

/// Truncated fullness: with a maximum node, the family is the pushforward of its top entry.
FullnessReport fullness_at_truncation(const ConsistentFamily& fam, const SystemTruncation& sys,
                                      const Config& cfg = {});

struct FaithfulnessEntry {
  bool zero_input = false;
  std::optional<std::size_t> separated_at;  // least schedule index with seminorm > tol.norm
  std::vector<double> values;
};

/// Seminorms of each element along the schedule, stopping at the first separating entry.
std::vector<FaithfulnessEntry> faithfulness_probe(const std::vector<GroupAlgebraElement>& elements,
                                                  const std::vector<FiniteQuotient>& schedule,
                                                  const Config& cfg = {});

struct SequenceVerdict {
  std::string name;
  std::vector<bool> coordinate_converges;  // per point of X
  bool converges_pointwise = false;
  bool converges_in_all_seminorms = false;
  /// For each sampled subset F, whether the sequence converges in p_F.
  std::vector<bool> subset_converges;
  std::vector<bool> subset_expected;
};

struct PointwiseTopologyReport {
  int size = 0;
  std::vector<SequenceVerdict> sequences;
  std::vector<std::vector<int>> subsets;
  bool equivalence_holds = true;  // all seminorms <=> pointwise, for every sequence
  bool domination_holds = true;   // p_F(f) <= max_{x in F} |f(x)| on samples
};

/// C(X) for a finite X of the given size (at most 64), with its coordinate seminorms.
PointwiseTopologyReport pointwise_topology_demo(int size, std::uint64_t seed = 1);

}  // namespace procstar
