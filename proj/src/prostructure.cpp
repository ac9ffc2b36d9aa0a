#include "procstar/prostructure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "procstar/linalg.hpp"

namespace procstar {

SystemTruncation::SystemTruncation(std::vector<FiniteQuotient> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw UsageError("a system truncation needs at least one node");
  for (const auto& q : nodes_)
    if (!(q.source() == nodes_.front().source()))
      throw UsageError("system nodes must be quotients of one group");
  const std::size_t n = nodes_.size();
  maps_.assign(n, std::vector<std::optional<std::vector<int>>>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) maps_[j][i] = connecting_map(nodes_[j], nodes_[i]);
}

const std::vector<int>& SystemTruncation::connecting(std::size_t j, std::size_t i) const {
  if (!maps_[j][i]) throw UsageError("nodes are not comparable");
  return *maps_[j][i];
}

Eigen::VectorXcd SystemTruncation::push(std::size_t from, std::size_t to,
                                        const Eigen::VectorXcd& entry) const {
  return pushforward(connecting(from, to), nodes_[to].target_order(), entry);
}

std::optional<std::size_t> SystemTruncation::maximum() const {
  for (std::size_t j = 0; j < size(); ++j) {
    bool top = true;
    for (std::size_t i = 0; i < size() && top; ++i) top = leq(i, j);
    if (top) return j;
  }
  return std::nullopt;
}

bool SystemTruncation::is_directed() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b) {
      bool bounded = false;
      for (std::size_t c = 0; c < size() && !bounded; ++c) bounded = leq(a, c) && leq(b, c);
      if (!bounded) return false;
    }
  return true;
}

bool SystemTruncation::is_functorial() const {
  for (std::size_t k = 0; k < size(); ++k)
    for (std::size_t j = 0; j < size(); ++j) {
      if (!leq(j, k)) continue;
      for (std::size_t i = 0; i < size(); ++i) {
        if (!leq(i, j)) continue;
        if (!leq(i, k)) return false;
        const auto& kj = connecting(k, j);
        const auto& ji = connecting(j, i);
        const auto& ki = connecting(k, i);
        for (std::size_t x = 0; x < kj.size(); ++x)
          if (ji[kj[x]] != ki[x]) return false;
      }
    }
  return true;
}

ConsistencyReport check_consistent(const ConsistentFamily& fam, const SystemTruncation& sys,
                                   const Config& cfg) {
  if (fam.entries.size() != sys.size()) throw UsageError("family does not cover every node");
  ConsistencyReport r;
  for (std::size_t j = 0; j < sys.size(); ++j)
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (i == j || !sys.leq(i, j)) continue;
      ++r.pairs_checked;
      const Eigen::VectorXcd diff = sys.push(j, i, fam.entries[j]) - fam.entries[i];
      r.max_defect = std::max(r.max_defect, regular_norm(*sys.node(i).target(), diff, cfg));
    }
  r.pass = r.max_defect <= cfg.tol.alg;
  return r;
}

ConsistentFamily phi_truncated(const GroupAlgebraElement& a, const SystemTruncation& sys) {
  ConsistentFamily fam;
  for (const auto& q : sys.nodes()) fam.entries.push_back(kappa_coefficients(q, a));
  return fam;
}

BoundedFamilyReport bounded_check(const ConsistentFamily& fam, const SystemTruncation& sys, double bound,
                                  const Config& cfg) {
  if (fam.entries.size() != sys.size()) throw UsageError("family does not cover every node");
  BoundedFamilyReport r;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    r.node_norms.push_back(regular_norm(*sys.node(i).target(), fam.entries[i], cfg));
    r.sup_norm = std::max(r.sup_norm, r.node_norms.back());
  }
  r.is_bounded = r.sup_norm <= bound;
  return r;
}

ConsistentFamily reconstruct_from_top(const ConsistentFamily& fam, const SystemTruncation& sys) {
  const auto top = sys.maximum();
  if (!top) throw UsageError("truncation has no maximum node");
  ConsistentFamily out;
  for (std::size_t i = 0; i < sys.size(); ++i)
    out.entries.push_back(i == *top ? fam.entries[i] : sys.push(*top, i, fam.entries[*top]));
  return out;
}

FullnessReport fullness_at_truncation(const ConsistentFamily& fam, const SystemTruncation& sys,
                                      const Config& cfg) {
  FullnessReport r;
  const auto top = sys.maximum();
  r.has_maximum = top.has_value();
  if (!top) return r;
  r.top_norm = regular_norm(*sys.node(*top).target(), fam.entries[*top], cfg);
  const auto rebuilt = reconstruct_from_top(fam, sys);
  r.reconstructs_exactly = true;
  for (std::size_t i = 0; i < sys.size(); ++i)
    r.reconstructs_exactly = r.reconstructs_exactly && rebuilt.entries[i] == fam.entries[i];
  return r;
}

std::vector<FaithfulnessEntry> faithfulness_probe(const std::vector<GroupAlgebraElement>& elements,
                                                  const std::vector<FiniteQuotient>& schedule,
                                                  const Config& cfg) {
  std::vector<FaithfulnessEntry> out;
  for (const auto& a : elements) {
    FaithfulnessEntry e;
    e.zero_input = a.is_zero();
    if (!e.zero_input)
      for (std::size_t k = 0; k < schedule.size(); ++k) {
        e.values.push_back(seminorm(schedule[k], a, cfg).value);
        if (e.values.back() > cfg.tol.norm) {
          e.separated_at = k;
          break;
        }
      }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

using Sequence = std::function<Complex(int k, int x)>;

// Tail Cauchy test over k in [K/2, K]: oscillation of the values below the threshold.
constexpr int kTail = 4096;
constexpr double kCauchy = 1e-2;

double tail_oscillation(const Sequence& f, const std::vector<int>& coords) {
  double osc = 0.0;
  for (int x : coords) {
    const Complex ref = f(kTail, x);
    for (int k = kTail / 2; k <= kTail; ++k) osc = std::max(osc, std::abs(f(k, x) - ref));
  }
  return osc;
}

// C* norm of the image of f in C(F): the spectral norm of diag(f|F).
double quotient_seminorm(const Eigen::VectorXcd& f, const std::vector<int>& subset) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(subset.size()),
                                              static_cast<Eigen::Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) d(i, i) = f(subset[i]);
  return spectral_norm(d);
}

}  // namespace

PointwiseTopologyReport pointwise_topology_demo(int size, std::uint64_t seed) {
  if (size < 1 || size > 64) throw UsageError("pointwise_topology_demo needs 1 <= |X| <= 64");
  PointwiseTopologyReport r;
  r.size = size;
  const int x0 = 0, x1 = size - 1;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int s = 0; s < 16; ++s) {
    std::vector<int> f;
    for (int x = 0; x < size; ++x)
      if (coin(rng)) f.push_back(x);
    if (f.empty()) f.push_back(static_cast<int>(rng() % static_cast<unsigned>(size)));
    r.subsets.push_back(std::move(f));
  }
  r.subsets.push_back({x0});
  r.subsets.push_back({x1});

  struct Named {
    std::string name;
    Sequence f;
    int bad_coordinate;  // coordinate where it fails to converge, -1 if none, -2 if all
  };
  const std::vector<Named> seqs = {
      {"constant 1+1/k", [](int k, int) { return Complex(1.0 + 1.0 / k); }, -1},
      {"constant (-1)^k", [](int k, int) { return Complex(k % 2 ? -1.0 : 1.0); }, -2},
      {"indicator of x0 scaled by 1/k", [x0](int k, int x) { return Complex(x == x0 ? 1.0 / k : 0.0); }, -1},
      {"oscillation at x1", [x1](int k, int x) { return Complex(x == x1 ? (k % 2 ? -1.0 : 1.0) : 0.0); }, x1},
  };

  std::vector<int> all(size);
  for (int x = 0; x < size; ++x) all[x] = x;
  for (const auto& s : seqs) {
    SequenceVerdict v;
    v.name = s.name;
    for (int x = 0; x < size; ++x) v.coordinate_converges.push_back(tail_oscillation(s.f, {x}) < kCauchy);
    v.converges_pointwise = std::all_of(v.coordinate_converges.begin(), v.coordinate_converges.end(),
                                        [](bool b) { return b; });
    v.converges_in_all_seminorms = true;
    for (const auto& subset : r.subsets) {
      const bool conv = tail_oscillation(s.f, subset) < kCauchy;
      v.subset_converges.push_back(conv);
      const bool covers_bad = s.bad_coordinate == -2 ||
                              std::find(subset.begin(), subset.end(), s.bad_coordinate) != subset.end();
      v.subset_expected.push_back(!covers_bad);
      v.converges_in_all_seminorms = v.converges_in_all_seminorms && conv;
    }
    v.converges_in_all_seminorms = v.converges_in_all_seminorms && tail_oscillation(s.f, all) < kCauchy;
    r.equivalence_holds = r.equivalence_holds && v.converges_pointwise == v.converges_in_all_seminorms &&
                          v.subset_converges == v.subset_expected;
    r.sequences.push_back(std::move(v));
  }

  std::normal_distribution<double> n01;
  for (int t = 0; t < 32; ++t) {
    Eigen::VectorXcd f(size);
    for (int x = 0; x < size; ++x) f(x) = {n01(rng), n01(rng)};
    for (const auto& subset : r.subsets) {
      double coord_max = 0.0;
      for (int x : subset) coord_max = std::max(coord_max, std::abs(f(x)));
      if (quotient_seminorm(f, subset) > coord_max * (1.0 + 1e-12)) r.domination_holds = false;
    }
  }
  return r;
}

}  // namespace procstar
