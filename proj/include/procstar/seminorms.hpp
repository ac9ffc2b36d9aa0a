#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "procstar/quotients.hpp"

namespace procstar {

enum class NormMethod { Regular, IrrepBlocks };

std::string to_string(NormMethod m);

struct SeminormValue {
  FiniteQuotient quotient;
  double value = 0.0;
  NormMethod method = NormMethod::Regular;
  double l1_bound = 0.0;
};

/// Pushforward kappa(a)(x) = sum over g in supp(a) with q(g) = x of a(g).
GroupAlgebraElement kappa(const FiniteQuotient& q, const GroupAlgebraElement& a);
/// Same pushforward as a dense vector over the target.
Eigen::VectorXcd kappa_coefficients(const FiniteQuotient& q, const GroupAlgebraElement& a);

/// Pushes a coefficient vector on fine.target down a connecting map.
Eigen::VectorXcd pushforward(const std::vector<int>& connecting, int coarse_order,
                             const Eigen::VectorXcd& fine);

/// Operator norm of left convolution by c on l2 of a finite group: dense SVD up to
/// caps.dense_svd_max, matrix-free restarted Lanczos on M*M above.
double regular_norm(const FiniteGroup& group, const Eigen::VectorXcd& coeffs, const Config& cfg = {});

SeminormValue seminorm(const FiniteQuotient& q, const GroupAlgebraElement& a, const Config& cfg = {});

SeminormValue seminorm_via_irreps(const FiniteQuotient& q, const GroupAlgebraElement& a,
                                  const IrrepDecomposition& dec);
SeminormValue seminorm_via_irreps(const FiniteQuotient& q, const GroupAlgebraElement& a,
                                  const Config& cfg = {});

struct SupSeminormReport {
  std::vector<SeminormValue> values;   // schedule order
  std::vector<double> running_sup;
  double sup = 0.0;
  double l1_bound = 0.0;
  bool monotone = true;                 // nondecreasing within tol.norm
  bool norm_certified = false;          // sup reached the l1 upper bound within tol.norm
};

/// Seminorms along a refinement chain; entries are evaluated concurrently.
/// Throws UsageError if some entry does not refine its predecessor.
SupSeminormReport sup_seminorm(const GroupAlgebraElement& a, const std::vector<FiniteQuotient>& schedule,
                               const Config& cfg = {});

/// Canonical chain q_{m_1}, q_{m_2}, ... for Z^d or Heisenberg.
std::vector<FiniteQuotient> modulus_schedule(const DiscreteGroup& g, const std::vector<std::int64_t>& moduli,
                                             std::size_t order_cap = 5000);

}  // namespace procstar
