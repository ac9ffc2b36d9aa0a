#include "procstar/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <numbers>
#include <random>
#include <set>

#include "procstar/linalg.hpp"

namespace procstar {

void SuiteResult::add(CheckResult c) {
  pass = pass && c.pass;
  checks.push_back(std::move(c));
}

namespace {

CheckResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

CheckResult holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)};
}

GroupAlgebraElement zsum(std::initializer_list<std::pair<std::int64_t, Complex>> terms) {
  GroupAlgebraElement a(DiscreteGroup::integers());
  for (const auto& [x, c] : terms) a.add(z_element({x}), c);
  return a;
}

void circle_norm(SuiteResult& r, const Config& cfg) {
  const auto z = DiscreteGroup::integers();
  const auto a = zsum({{1, 1.0}, {0, Complex(0.0, 1.0)}});
  const auto rep = sup_seminorm(a, modulus_schedule(z, {2, 4, 8, 16, 32, 64}), cfg);
  r.add(at_most("sup |delta_1 + i delta_0| over mod 2..64 equals 2", std::abs(rep.sup - 2.0), 1e-9));
  r.add(holds("maximiser zeta = i first hit at mod 4",
              rep.values[0].value < 2.0 - 1e-3 && std::abs(rep.running_sup[1] - 2.0) <= 1e-9));
  const auto b = zsum({{1, 1.0}, {0, std::polar(1.0, -2.0 * std::numbers::pi / 3.0)}});
  const auto rep3 = sup_seminorm(b, modulus_schedule(z, {1, 3, 6, 12}), cfg);
  r.add(at_most("sup |delta_1 + e^{-2 pi i/3} delta_0| over a chain through mod 3 equals 2",
                std::abs(rep3.sup - 2.0), 1e-9));
}

void peter_weyl(SuiteResult& r, const Config& cfg) {
  const std::vector<GroupDescriptor> targets = {symmetric(3), dihedral(4), heisenberg_mod(3),
                                                elementary_abelian_2(3)};
  for (const auto& d : targets) {
    const auto f = build_finite_group(d, cfg.caps.group_order);
    const auto g = DiscreteGroup::finite(f);
    const auto q = normal_quotient(g, {});
    const auto dec = decompose_regular(f, cfg.seed, cfg);
    double worst = 0.0;
    for (const auto& a : random_elements(g, 25, cfg.seed + 11, 6)) {
      const double reg = seminorm(q, a, cfg).value;
      worst = std::max(worst, std::abs(reg - seminorm_via_irreps(q, a, dec).value));
    }
    r.add(at_most("regular = max over irrep blocks on " + f->label(), worst, 1e-6, "25 elements"));
  }
}

void witness_soundness(SuiteResult& r, const Config& cfg) {
  const auto h = DiscreteGroup::heisenberg();
  double worst_gap = -1e300, worst_exact = 0.0;
  bool injective = true;
  std::int64_t largest = 1;
  for (const auto& b : random_elements(h, 20, cfg.seed + 23, 4, 2)) {
    const auto w = rf_amen_witness(b, std::nullopt, cfg);
    injective = injective && w.injective_on_st && is_injective_on(w.quotient, w.st_set);
    worst_gap = std::max(worst_gap, w.lower_bound - seminorm(w.quotient, b, cfg).value);
    worst_exact = std::max(worst_exact, std::abs(w.achieved - w.lower_bound));
    largest = std::max(largest, w.quotient.moduli().at(0));
  }
  r.add(holds("witness quotient injective on S*T", injective));
  r.add(at_most("lower_bound - seminorm(q, b)", worst_gap, 1e-9,
                "largest modulus " + std::to_string(largest)));
  r.add(at_most("|pi_q(b) eta| = |b xi|", worst_exact, cfg.tol.alg));
}

void heisenberg_relations(SuiteResult& r, const Config& cfg) {
  double worst = 0.0;
  bool scalar = true, finite = true;
  std::size_t reps = 0, largest = 0;
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      const Complex wk = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % n) / n);
      for (int p = 0; p < 12; ++p)
        for (int s = 0; s < 12; ++s) {
          const auto rep = heisenberg_irrep(n, k, RootOfUnity{p, 12}.value(), RootOfUnity{s, 12}.value(), cfg);
          ++reps;
          worst = std::max(worst, relation_defect(rep));
          scalar = scalar && rep.generators[2] == Eigen::MatrixXcd(wk * Eigen::MatrixXcd::Identity(n, n));
          const auto c = finite_range_check(rep, cfg.caps.closure_size, cfg);
          finite = finite && c.status == ClosureStatus::Finite;
          largest = std::max(largest, c.order());
        }
    }
  r.add(at_most("gh = zhg, zg = gz, zh = hz", worst, 1e-12, std::to_string(reps) + " representations"));
  r.add(holds("pi(z) = e^{2 pi i k/n} 1 exactly", scalar));
  r.add(holds("finite_range_check finite", finite, "largest image " + std::to_string(largest)));
}

void compatibility(SuiteResult& r, const Config& cfg) {
  struct Pair {
    DiscreteGroup g;
    std::int64_t fine, coarse;
  };
  const std::vector<Pair> pairs = {{DiscreteGroup::integers(), 12, 4},
                                   {DiscreteGroup::integers(), 6, 3},
                                   {DiscreteGroup::heisenberg(), 6, 3}};
  for (const auto& p : pairs) {
    const auto fine = canonical_quotient(p.g, p.fine, cfg.caps.group_order);
    const auto coarse = canonical_quotient(p.g, p.coarse, cfg.caps.group_order);
    const auto conn = connecting_map(fine, coarse);
    bool exact = conn.has_value();
    if (conn)
      for (const auto& a : random_elements(p.g, 25, cfg.seed + 31, 6, 20))
        exact = exact && pushforward(*conn, coarse.target_order(), kappa_coefficients(fine, a)) ==
                             kappa_coefficients(coarse, a);
    r.add(holds("pushforward o kappa_" + std::to_string(p.fine) + " = kappa_" + std::to_string(p.coarse) +
                    " on " + p.g.label(),
                exact));
  }
}

struct GridEntry {
  std::string name;
  std::vector<FiniteQuotient> chain;  // each entry refines its predecessor
  std::vector<GroupAlgebraElement> elements;
};

std::vector<GridEntry> seminorm_grid(const Config& cfg) {
  std::vector<GridEntry> grid;
  const auto z = DiscreteGroup::integers(), z2 = DiscreteGroup::integers(2), h = DiscreteGroup::heisenberg();
  const std::size_t cap = cfg.caps.group_order;
  grid.push_back({"Z mod 2|4|8|16", modulus_schedule(z, {2, 4, 8, 16}, cap), random_elements(z, 8, cfg.seed + 1, 4, 20)});
  grid.push_back({"Z mod 3|6|12|24", modulus_schedule(z, {3, 6, 12, 24}, cap), random_elements(z, 8, cfg.seed + 2, 4, 20)});
  grid.push_back({"Z^2 mod 2|4|8", modulus_schedule(z2, {2, 4, 8}, cap), random_elements(z2, 8, cfg.seed + 3, 4, 5)});
  grid.push_back({"Heisenberg mod 2|4", modulus_schedule(h, {2, 4}, cap), random_elements(h, 6, cfg.seed + 4, 4, 3)});
  grid.push_back({"Heisenberg mod 3|6", modulus_schedule(h, {3, 6}, cap), random_elements(h, 6, cfg.seed + 5, 4, 3)});

  const auto f2 = DiscreteGroup::free2();
  const auto s3 = build_finite_group(symmetric(3));
  const auto c4 = build_finite_group(cyclic(4));
  const auto qs3 = catalog_quotient(f2, s3, {permutation_index(std::vector<int>{1, 0, 2}),
                                             permutation_index(std::vector<int>{1, 2, 0})}, "S3");
  const auto qc4 = catalog_quotient(f2, c4, {1, 0}, "C4");
  const auto f2_elements = random_elements(f2, 8, cfg.seed + 6, 4, 4);
  grid.push_back({"F2 S3 | S3 x C4", {qs3, refine(qs3, qc4, cap)}, f2_elements});
  grid.push_back({"F2 C4 | S3 x C4", {qc4, refine(qs3, qc4, cap)}, f2_elements});

  const auto s4g = DiscreteGroup::finite(build_finite_group(symmetric(4)));
  const int v4 = permutation_index(std::vector<int>{1, 0, 3, 2});
  const int transposition = permutation_index(std::vector<int>{1, 0, 2, 3});
  const int three_cycle = permutation_index(std::vector<int>{1, 2, 0, 3});
  grid.push_back({"S4 / S4 | S4 / A4 | S4 / V4 | S4",
                  {normal_quotient(s4g, {transposition}), normal_quotient(s4g, {three_cycle}),
                   normal_quotient(s4g, {v4}), normal_quotient(s4g, {})},
                  random_elements(s4g, 8, cfg.seed + 7, 5)});
  return grid;
}

void seminorm_axioms(SuiteResult& r, const Config& cfg, bool monotone_only) {
  for (const auto& entry : seminorm_grid(cfg)) {
    double cstar = 0.0, domination = -1e300, monotone = -1e300;
    for (const auto& a : entry.elements) {
      double previous = 0.0;
      for (std::size_t i = 0; i < entry.chain.size(); ++i) {
        if (i > 0 && !refines(entry.chain[i], entry.chain[i - 1]))
          throw UsageError("grid chain does not refine: " + entry.name);
        const double v = seminorm(entry.chain[i], a, cfg).value;
        if (i > 0) monotone = std::max(monotone, previous - v);
        previous = v;
        if (monotone_only) continue;
        domination = std::max(domination, v - l1_norm(a));
        cstar = std::max(cstar, std::abs(seminorm(entry.chain[i], involution(a) * a, cfg).value - v * v));
      }
    }
    r.add(at_most("monotone under refinement on " + entry.name, monotone, 1e-6));
    if (monotone_only) continue;
    r.add(at_most("C* identity on " + entry.name, cstar, 2e-6));
    r.add(at_most("seminorm <= l1 on " + entry.name, domination, 1e-6));
  }
  if (monotone_only) {
    const auto z = DiscreteGroup::integers();
    bool flag = true;
    for (const auto& a : random_elements(z, 10, cfg.seed + 41, 4, 30))
      flag = flag && sup_seminorm(a, modulus_schedule(z, {2, 4, 8, 16, 32}), cfg).monotone;
    r.add(holds("sup_seminorm reports monotone running values", flag));
  }
}

void z2_range(SuiteResult& r, const Config& cfg) {
  for (int k = 0; k <= 8; ++k) {
    const auto f = build_finite_group(elementary_abelian_2(k), cfg.caps.group_order);
    const auto dec = decompose_regular(f, cfg.seed, cfg);
    bool one_dim = true, exact = true;
    double deviation = 0.0;
    std::set<std::vector<int>> characters;
    for (const auto& b : dec.blocks) {
      one_dim = one_dim && b.dim == 1;
      if (b.dim != 1) continue;
      // Certify: every value within tol.alg of +-1, and the rounded values multiply exactly.
      std::vector<int> sign(f->order());
      for (int x = 0; x < f->order(); ++x) {
        const Complex v = b.matrices[x](0, 0);
        sign[x] = v.real() >= 0.0 ? 1 : -1;
        deviation = std::max(deviation, std::abs(v - Complex(sign[x])));
      }
      for (int x = 0; x < f->order(); ++x)
        for (int y = 0; y < f->order(); ++y) exact = exact && sign[x] * sign[y] == sign[f->mul(x, y)];
      characters.insert(sign);
    }
    const std::string label = "(Z/2)^" + std::to_string(k);
    r.add(holds(label + " irreps are 1-dimensional", one_dim,
                std::to_string(dec.blocks.size()) + " blocks"));
    r.add(at_most(label + " values within tol of +-1", deviation, cfg.tol.alg));
    r.add(holds(label + " rounded values are exact +-1 characters, all distinct",
                exact && characters.size() == static_cast<std::size_t>(f->order())));
  }
}

void u3_free(SuiteResult& r, const Config& cfg) {
  const auto rep = free_group_u3_check(8, cfg);
  r.add(holds("all 2(3^8 - 1) nontrivial reduced words of length <= 8 checked", rep.words_checked == 13120));
  r.add(at_least("min ||W - I|| over reduced words", rep.min_distance, 1e-6, rep.argmin_word));
}

void truncated_fullness(SuiteResult& r, const Config& cfg) {
  const auto z = DiscreteGroup::integers(), h = DiscreteGroup::heisenberg();
  const std::vector<std::pair<DiscreteGroup, std::vector<std::int64_t>>> chains = {
      {z, {2, 4, 8, 16}}, {z, {3, 6, 12}}, {h, {2, 4}}, {h, {3, 6}}};
  std::mt19937_64 rng(cfg.seed + 53);
  std::uniform_real_distribution<double> scale(0.0, 1.0);
  for (const auto& [g, moduli] : chains) {
    const SystemTruncation sys(modulus_schedule(g, moduli, cfg.caps.group_order));
    const auto top = sys.maximum();
    bool ok = top.has_value() && sys.is_functorial();
    double top_norm = 0.0;
    for (int t = 0; ok && t < 10; ++t) {
      Eigen::VectorXcd v = random_complex(sys.node(*top).target_order(), 1, rng);
      v *= scale(rng) / regular_norm(*sys.node(*top).target(), v, cfg);
      ConsistentFamily fam;
      for (std::size_t i = 0; i < sys.size(); ++i) fam.entries.push_back(i == *top ? v : sys.push(*top, i, v));
      const auto rep = fullness_at_truncation(fam, sys, cfg);
      ok = ok && check_consistent(fam, sys, cfg).pass && rep.reconstructs_exactly;
      top_norm = std::max(top_norm, rep.top_norm);
    }
    double defect = 0.0;
    for (const auto& a : random_elements(g, 10, cfg.seed + 59, 4, 6))
      defect = std::max(defect, check_consistent(phi_truncated(a, sys), sys, cfg).max_defect);
    const std::string label = g.label() + " chain of " + std::to_string(sys.size());
    r.add(holds("norm <= 1 families reconstruct from the top node on " + label, ok && top_norm <= 1.0 + 1e-9));
    r.add(at_most("phi_truncated consistency defect on " + label, defect, 0.0));
  }
}

void heisenberg_separation_suite(SuiteResult& r, const Config& cfg) {
  const auto h = DiscreteGroup::heisenberg();
  std::mt19937_64 rng(cfg.seed + 67);
  std::uniform_int_distribution<int> size(1, 4);
  double worst_ratio = 1e300, worst_error = 0.0;
  bool found = true;
  std::string detail;
  for (int t = 0; t < 10; ++t) {
    const auto b = random_elements(h, 1, rng(), size(rng), 2).front();
    const double bound = rf_amen_witness(b, std::nullopt, cfg).lower_bound;
    SeparationSearch search;
    search.min_norm = 0.5 * bound;
    const auto s = heisenberg_separation(b, search, cfg);
    if (!s) {
      found = false;
      continue;
    }
    worst_ratio = std::min(worst_ratio, s->norm / bound);
    const auto f = factor_through_quotient(s->rep, random_elements(h, 10, cfg.seed + 71 + t, 4, 4), cfg);
    worst_error = std::max(worst_error, f.max_error);
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(s->n) + " image " +
              std::to_string(f.quotient.target_order());
  }
  r.add(holds("finite-range separating representation found for every element", found));
  r.add(at_least("min ||pi(b)|| / witness lower bound", worst_ratio, 0.5, detail));
  r.add(at_most("factorization error through the image quotient", worst_error, 1e-10));
}

const std::map<std::string, std::function<void(SuiteResult&, const Config&)>>& registry() {
  static const std::map<std::string, std::function<void(SuiteResult&, const Config&)>> suites = {
      {"circle-norm", circle_norm},
      {"peter-weyl", peter_weyl},
      {"witness-soundness", witness_soundness},
      {"heisenberg-relations", heisenberg_relations},
      {"compatibility", compatibility},
      {"seminorm-axioms", [](SuiteResult& r, const Config& c) { seminorm_axioms(r, c, false); }},
      {"seminorm-monotonicity", [](SuiteResult& r, const Config& c) { seminorm_axioms(r, c, true); }},
      {"z2-range", z2_range},
      {"u3-free", u3_free},
      {"truncated-fullness", truncated_fullness},
      {"heisenberg-separation", heisenberg_separation_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "circle-norm",    "peter-weyl", "witness-soundness", "heisenberg-relations", "compatibility",
      "seminorm-axioms", "seminorm-monotonicity", "z2-range", "u3-free", "truncated-fullness",
      "heisenberg-separation"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UsageError("unknown suite \"" + name + "\"");
  SuiteResult r;
  r.suite = name;
  const auto t0 = std::chrono::steady_clock::now();
  it->second(r, cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json to_json(const SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold},
                      {"detail", c.detail}});
  return {{"suite", r.suite}, {"pass", r.pass}, {"checks", checks}};
}

}  // namespace procstar
