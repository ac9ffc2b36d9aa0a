#include "procstar/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include <Eigen/Eigenvalues>

#include "procstar/linalg.hpp"

namespace procstar {

std::string to_string(NormMethod m) {
  return m == NormMethod::Regular ? "regular" : "irrep_blocks";
}

Eigen::VectorXcd kappa_coefficients(const FiniteQuotient& q, const GroupAlgebraElement& a) {
  if (!(a.group() == q.source())) throw UsageError("kappa: element is not over the quotient's group");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(q.target_order());
  for (const auto& [g, c] : a.terms()) v(q.apply(g)) += c;
  return v;
}

GroupAlgebraElement kappa(const FiniteQuotient& q, const GroupAlgebraElement& a) {
  if (!(a.group() == q.source())) throw UsageError("kappa: element is not over the quotient's group");
  GroupAlgebraElement out(DiscreteGroup::finite(q.target()));
  for (const auto& [g, c] : a.terms()) out.add(finite_element(q.apply(g)), c);
  return out;
}

Eigen::VectorXcd pushforward(const std::vector<int>& connecting, int coarse_order,
                             const Eigen::VectorXcd& fine) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(coarse_order);
  for (Eigen::Index x = 0; x < fine.size(); ++x) out(connecting[x]) += fine(x);
  return out;
}

namespace {

// y = c * f on the group: y(x) = sum_s c(s) f(s^-1 x).
void convolve_into(const FiniteGroup& g, const std::vector<std::pair<int, Complex>>& c,
                   const Eigen::VectorXcd& f, Eigen::VectorXcd& y) {
  y.setZero(g.order());
  for (const auto& [s, cs] : c)
    for (int h = 0; h < g.order(); ++h) y(g.mul(s, h)) += cs * f(h);
}

double lanczos_norm(const FiniteGroup& g, const Eigen::VectorXcd& coeffs, const Config& cfg) {
  std::vector<std::pair<int, Complex>> c, c_adj;
  for (int s = 0; s < g.order(); ++s)
    if (coeffs(s) != Complex(0.0)) {
      c.emplace_back(s, coeffs(s));
      c_adj.emplace_back(g.inv(s), std::conj(coeffs(s)));
    }
  if (c.empty()) return 0.0;
  const int n = g.order();
  const int m = std::min(n, 64);
  std::mt19937_64 rng(cfg.seed);
  Eigen::VectorXcd v = random_complex(n, 1, rng);
  v.normalize();
  // Restarted Lanczos on M*M with full reorthogonalization; stop once the Ritz residual
  // of the top eigenvalue is below 1e-8 relative.
  Eigen::MatrixXcd basis(n, m);
  Eigen::VectorXcd w, u;
  double lambda = 0.0;
  for (int restart = 0, matvecs = 0; matvecs < 10000; ++restart) {
    Eigen::VectorXd alpha(m), beta(m);
    int k = 0;
    basis.col(0) = v;
    for (; k < m; ++k) {
      convolve_into(g, c, basis.col(k), w);
      convolve_into(g, c_adj, w, u);
      ++matvecs;
      alpha(k) = basis.col(k).dot(u).real();
      for (int pass = 0; pass < 2; ++pass)
        u -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * u);
      beta(k) = u.norm();
      if (k + 1 == m || beta(k) <= 1e-14 * std::abs(alpha(0))) {
        ++k;
        break;
      }
      basis.col(k + 1) = u / beta(k);
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = alpha(i);
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    lambda = es.eigenvalues()(k - 1);
    const Eigen::VectorXd y = es.eigenvectors().col(k - 1);
    const double residual = std::abs(beta(k - 1) * y(k - 1));
    if (lambda <= 0.0) return 0.0;
    if (residual <= 1e-8 * lambda) break;
    v = (basis.leftCols(k) * y.cast<Complex>()).normalized();
  }
  return std::sqrt(lambda);
}

}  // namespace

double regular_norm(const FiniteGroup& group, const Eigen::VectorXcd& coeffs, const Config& cfg) {
  if (static_cast<std::size_t>(group.order()) > cfg.caps.group_order)
    throw CapExceeded("seminorm target order above the cap");
  if (coeffs.isZero(0.0)) return 0.0;
  if (static_cast<std::size_t>(group.order()) > cfg.caps.dense_svd_max)
    return lanczos_norm(group, coeffs, cfg);
  const int n = group.order();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    if (coeffs(s) == Complex(0.0)) continue;
    for (int y = 0; y < n; ++y) m(group.mul(s, y), y) += coeffs(s);
  }
  return spectral_norm(m);
}

SeminormValue seminorm(const FiniteQuotient& q, const GroupAlgebraElement& a, const Config& cfg) {
  SeminormValue out{q, 0.0, NormMethod::Regular, l1_norm(a)};
  out.value = regular_norm(*q.target(), kappa_coefficients(q, a), cfg);
  return out;
}

SeminormValue seminorm_via_irreps(const FiniteQuotient& q, const GroupAlgebraElement& a,
                                  const IrrepDecomposition& dec) {
  SeminormValue out{q, 0.0, NormMethod::IrrepBlocks, l1_norm(a)};
  out.value = block_norm(dec, kappa_coefficients(q, a));
  return out;
}

SeminormValue seminorm_via_irreps(const FiniteQuotient& q, const GroupAlgebraElement& a,
                                  const Config& cfg) {
  return seminorm_via_irreps(q, a, decompose_regular(q.target(), cfg.seed, cfg));
}

SupSeminormReport sup_seminorm(const GroupAlgebraElement& a, const std::vector<FiniteQuotient>& schedule,
                               const Config& cfg) {
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!refines(schedule[i], schedule[i - 1]))
      throw UsageError("schedule entry " + std::to_string(i) + " does not refine its predecessor");

  std::vector<std::future<SeminormValue>> jobs;
  jobs.reserve(schedule.size());
  for (const auto& q : schedule)
    jobs.push_back(std::async(std::launch::async, [&q, &a, &cfg] { return seminorm(q, a, cfg); }));

  SupSeminormReport report;
  report.l1_bound = l1_norm(a);
  for (auto& job : jobs) {
    report.values.push_back(job.get());
    const double v = report.values.back().value;
    if (!report.running_sup.empty() && v < report.running_sup.back() - cfg.tol.norm)
      report.monotone = false;
    report.sup = std::max(report.sup, v);
    report.running_sup.push_back(report.sup);
  }
  report.norm_certified = !schedule.empty() && report.sup >= report.l1_bound - cfg.tol.norm;
  return report;
}

std::vector<FiniteQuotient> modulus_schedule(const DiscreteGroup& g, const std::vector<std::int64_t>& moduli,
                                             std::size_t order_cap) {
  std::vector<FiniteQuotient> out;
  for (auto m : moduli) out.push_back(canonical_quotient(g, m, order_cap));
  return out;
}

}  // namespace procstar
