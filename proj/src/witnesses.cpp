#include "procstar/witnesses.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_map>

#include "procstar/linalg.hpp"

namespace procstar {

SeparationWitness rf_amen_witness(const GroupAlgebraElement& b, const std::optional<GroupAlgebraElement>& xi,
                                  const Config& cfg) {
  if (b.is_zero()) throw UsageError("rf_amen_witness needs b != 0");
  const DiscreteGroup& g = b.group();
  if (g.family() != Family::ZPower && g.family() != Family::Heisenberg)
    throw UsageError("rf_amen_witness supports Z^d and the Heisenberg group");
  GroupAlgebraElement x = xi.value_or(GroupAlgebraElement::delta(g, g.identity()));
  if (!(x.group() == g)) throw UsageError("xi is not over the group of b");
  if (x.is_zero()) throw UsageError("xi must be nonzero");
  x *= Complex(1.0 / l2_norm(x));

  const auto st = product_set(g, b.support(), x.support());
  const auto q = min_injective_quotient(g, st, cfg.caps);
  Eigen::VectorXcd eta = kappa_coefficients(q, x);
  const Eigen::VectorXcd bk = kappa_coefficients(q, b);

  // pi_q(b) eta as a convolution on the quotient.
  const FiniteGroup& f = *q.target();
  Eigen::VectorXcd image = Eigen::VectorXcd::Zero(f.order());
  for (int s = 0; s < f.order(); ++s) {
    if (bk(s) == Complex(0.0)) continue;
    for (int y = 0; y < f.order(); ++y)
      if (eta(y) != Complex(0.0)) image(f.mul(s, y)) += bk(s) * eta(y);
  }
  return {q, st, is_injective_on(q, st), eta, l2_norm(b * x), image.norm()};
}

Complex RootOfUnity::value() const {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(numerator) / order);
}

GeneratorRep heisenberg_irrep(int n, int k, Complex alpha, Complex beta, const Config& cfg) {
  if (n < 1) throw UsageError("heisenberg_irrep needs n >= 1");
  if (std::gcd(k, n) != 1) throw UsageError("heisenberg_irrep needs gcd(k, n) = 1");
  if (std::abs(std::abs(alpha) - 1.0) > cfg.tol.alg || std::abs(std::abs(beta) - 1.0) > cfg.tol.alg)
    throw UsageError("heisenberg_irrep needs |alpha| = |beta| = 1");
  const auto omega = [n](std::int64_t e) {
    const std::int64_t r = ((e % n) + n) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / n);
  };
  Eigen::MatrixXcd pg = Eigen::MatrixXcd::Zero(n, n), ph = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    pg(j, j) = alpha * omega(static_cast<std::int64_t>(j) * k);
    ph((j + 1) % n, j) = beta;
  }
  const Eigen::MatrixXcd pz = omega(k) * Eigen::MatrixXcd::Identity(n, n);
  return {DiscreteGroup::heisenberg(), n, {pg, ph, pz}, HeisenbergParams{n, k, alpha, beta}};
}

GeneratorRep generator_rep(const DiscreteGroup& finite, const Representation& rep) {
  if (finite.family() != Family::Finite) throw UsageError("generator_rep needs a finite group");
  GeneratorRep out{finite, rep.dim, {}, std::nullopt};
  for (int s : finite.finite_group()->generators()) out.generators.push_back(rep.matrices[s]);
  return out;
}

GeneratorRep trivial_rep(const DiscreteGroup& g) {
  return {g, 1, std::vector<Eigen::MatrixXcd>(g.generator_count(), Eigen::MatrixXcd::Identity(1, 1)),
          std::nullopt};
}

Eigen::MatrixXcd evaluate(const GeneratorRep& rep, const Element& g) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
  for (const auto& l : rep.group.word(g)) m = m * unitary_power(rep.generators[l.generator], l.exponent);
  return m;
}

Eigen::MatrixXcd evaluate(const GeneratorRep& rep, const GroupAlgebraElement& a) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
  for (const auto& [g, c] : a.terms()) m += c * evaluate(rep, g);
  return m;
}

double unitarity_defect(const GeneratorRep& rep) {
  double d = 0.0;
  for (const auto& m : rep.generators)
    d = std::max(d, max_abs_diff(m.adjoint() * m, Eigen::MatrixXcd::Identity(rep.dim, rep.dim)));
  return d;
}

double relation_defect(const GeneratorRep& rep, std::uint64_t seed) {
  const auto& gen = rep.generators;
  double d = 0.0;
  switch (rep.group.family()) {
    case Family::Heisenberg:
      d = std::max({max_abs_diff(gen[0] * gen[1], gen[2] * gen[1] * gen[0]),
                    max_abs_diff(gen[2] * gen[0], gen[0] * gen[2]),
                    max_abs_diff(gen[2] * gen[1], gen[1] * gen[2])});
      break;
    case Family::ZPower:
      for (std::size_t i = 0; i < gen.size(); ++i)
        for (std::size_t j = i + 1; j < gen.size(); ++j)
          d = std::max(d, max_abs_diff(gen[i] * gen[j], gen[j] * gen[i]));
      break;
    case Family::Free2:
      break;
    case Family::Finite: {
      const FiniteGroup& f = *rep.group.finite_group();
      std::vector<Eigen::MatrixXcd> all;
      for (int x = 0; x < f.order(); ++x) all.push_back(evaluate(rep, finite_element(x)));
      const auto check = [&](int x, int y) {
        d = std::max(d, max_abs_diff(all[x] * all[y], all[f.mul(x, y)]));
      };
      if (f.order() <= 200) {
        for (int x = 0; x < f.order(); ++x)
          for (int y = 0; y < f.order(); ++y) check(x, y);
      } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, f.order() - 1);
        for (int t = 0; t < 4000; ++t) check(pick(rng), pick(rng));
      }
      break;
    }
  }
  return d;
}

std::string to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::Finite: return "finite";
    case ClosureStatus::Overflow: return "overflow";
    case ClosureStatus::PrecisionFailure: return "precision_failure";
  }
  return {};
}

std::vector<int> ClosureResult::word(int x) const {
  std::vector<int> w;
  for (; parent[x] >= 0; x = parent[x]) w.push_back(parent_generator[x]);
  std::reverse(w.begin(), w.end());
  return w;
}

FiniteGroupPtr ClosureResult::image_group(std::size_t order_cap) const {
  if (status != ClosureStatus::Finite) throw UsageError("image group of an unfinished closure");
  const int n = static_cast<int>(order());
  if (static_cast<std::size_t>(n) > order_cap) throw CapExceeded("image group above the order cap");
  // Elements are stored in BFS order, so parent[j] < j.
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    int* row = &table[static_cast<std::size_t>(i) * n];
    row[0] = i;
    for (int j = 1; j < n; ++j) row[j] = cayley[row[parent[j]]][parent_generator[j]];
  }
  return std::make_shared<const FiniteGroup>(n, std::move(table), "image" + std::to_string(n));
}

std::vector<std::vector<int>> ClosureResult::kernel_words() const {
  std::vector<std::vector<int>> out;
  for (int x = 0; x < static_cast<int>(order()); ++x)
    for (std::size_t s = 0; s < cayley[x].size(); ++s) {
      const int y = cayley[x][s];
      if (parent[y] == x && parent_generator[y] == static_cast<int>(s)) continue;
      std::vector<int> w;
      for (int l : word(x)) w.push_back(l + 1);
      w.push_back(static_cast<int>(s) + 1);
      const auto back = word(y);
      for (auto it = back.rbegin(); it != back.rend(); ++it) w.push_back(-(*it + 1));
      out.push_back(std::move(w));
    }
  return out;
}

ClosureResult finite_range_check(const GeneratorRep& rep, std::size_t size_bound, const Config& cfg) {
  if (size_bound > 1000000) throw UsageError("finite_range_check size bound above 1e6");
  const int d = rep.dim;
  const double tau = cfg.tol.group;
  std::mt19937_64 rng(cfg.seed);
  const Eigen::MatrixXcd r = random_complex(d, d, rng);
  // |Re tr(R D)| <= |R|_F d max|D|, so matrices within 10 tau land in adjacent buckets.
  const double width = r.norm() * d * 10.0 * tau;
  const auto key = [&](const Eigen::MatrixXcd& m) {
    return static_cast<std::int64_t>(std::floor((r * m).trace().real() / width));
  };

  ClosureResult out;
  std::unordered_multimap<std::int64_t, int> buckets;
  const auto insert = [&](Eigen::MatrixXcd m, int from, int gen) {
    buckets.emplace(key(m), static_cast<int>(out.elements.size()));
    out.elements.push_back(std::move(m));
    out.cayley.emplace_back(rep.generators.size(), -1);
    out.parent.push_back(from);
    out.parent_generator.push_back(gen);
  };
  // Index of a known matrix within tau, -1 if new, -2 on an ambiguous match.
  const auto find = [&](const Eigen::MatrixXcd& m) {
    const std::int64_t k = key(m);
    int hit = -1;
    for (std::int64_t b = k - 1; b <= k + 1; ++b) {
      auto [lo, hi] = buckets.equal_range(b);
      for (auto it = lo; it != hi; ++it) {
        const double dist = max_abs_diff(out.elements[it->second], m);
        if (dist <= tau) {
          hit = it->second;
        } else if (dist <= 10.0 * tau) {
          out.ambiguity = dist;
          return -2;
        }
      }
    }
    return hit;
  };

  if (unitarity_defect(rep) > cfg.tol.alg) throw UsageError("generator matrices are not unitary");
  insert(Eigen::MatrixXcd::Identity(d, d), -1, -1);
  for (std::size_t x = 0; x < out.elements.size(); ++x)
    for (std::size_t s = 0; s < rep.generators.size(); ++s) {
      Eigen::MatrixXcd m = out.elements[x] * rep.generators[s];
      const int hit = find(m);
      if (hit == -2) {
        out.status = ClosureStatus::PrecisionFailure;
        return out;
      }
      if (hit >= 0) {
        out.cayley[x][s] = hit;
        continue;
      }
      if (out.elements.size() >= size_bound) {
        out.status = ClosureStatus::Overflow;
        return out;
      }
      out.cayley[x][s] = static_cast<int>(out.elements.size());
      insert(std::move(m), static_cast<int>(x), static_cast<int>(s));
    }
  out.status = ClosureStatus::Finite;
  return out;
}

std::vector<RootOfUnity> roots_of_unity(int max_order) {
  std::vector<RootOfUnity> out;
  for (int q = 1; q <= max_order; ++q)
    for (int p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) out.push_back({p, q});
  return out;
}

std::optional<HeisenbergSeparation> heisenberg_separation(const GroupAlgebraElement& a,
                                                          const SeparationSearch& search, const Config& cfg) {
  if (a.is_zero()) throw UsageError("heisenberg_separation needs a != 0");
  if (a.group().family() != Family::Heisenberg) throw UsageError("heisenberg_separation needs a Heisenberg element");
  const double threshold = search.min_norm < 0.0 ? cfg.tol.norm : search.min_norm;
  const auto roots = roots_of_unity(search.max_root_order);
  std::size_t tried = 0;
  for (int n = 1; n <= search.max_n; ++n)
    for (int k = 1; k <= n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      for (const auto& al : roots)
        for (const auto& be : roots) {
          ++tried;
          GeneratorRep rep = heisenberg_irrep(n, k, al.value(), be.value(), cfg);
          const double norm = spectral_norm(evaluate(rep, a));
          if (norm <= threshold) continue;
          const auto closure = finite_range_check(rep, cfg.caps.closure_size, cfg);
          if (closure.status != ClosureStatus::Finite) continue;
          return HeisenbergSeparation{std::move(rep), n, k, al, be, norm, closure.order(), tried};
        }
    }
  return std::nullopt;
}

Factorization factor_through_quotient(const GeneratorRep& rep, const std::vector<GroupAlgebraElement>& samples,
                                      const Config& cfg) {
  const auto closure = finite_range_check(rep, cfg.caps.closure_size, cfg);
  if (closure.status == ClosureStatus::PrecisionFailure)
    throw PrecisionError("closure ambiguity at distance " + std::to_string(closure.ambiguity));
  if (closure.status == ClosureStatus::Overflow) throw CapExceeded("closure did not finish within the size bound");
  const auto image = closure.image_group(cfg.caps.group_order);
  std::vector<int> images;
  for (std::size_t s = 0; s < rep.generators.size(); ++s) images.push_back(closure.cayley[0][s]);
  Factorization out{catalog_quotient(rep.group, image, images, "image"), closure.elements, 0.0, false};
  for (const auto& a : samples) {
    const Eigen::VectorXcd k = kappa_coefficients(out.quotient, a);
    Eigen::MatrixXcd via = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
    for (int x = 0; x < image->order(); ++x)
      if (k(x) != Complex(0.0)) via += k(x) * out.quotient_rep[x];
    out.max_error = std::max(out.max_error, max_abs_diff(evaluate(rep, a), via));
  }
  out.verified = out.max_error <= cfg.tol.alg;
  return out;
}

std::vector<GroupAlgebraElement> random_elements(const DiscreteGroup& g, int count, std::uint64_t seed,
                                                 int support, int box) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-box, box);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<GroupAlgebraElement> out;
  while (static_cast<int>(out.size()) < count) {
    GroupAlgebraElement a(g);
    for (int i = 0; i < support; ++i) {
      Element e = g.identity();
      switch (g.family()) {
        case Family::ZPower:
        case Family::Heisenberg:
          for (auto& v : e.coords) v = coord(rng);
          break;
        case Family::Free2: {
          std::vector<std::int64_t> letters;
          std::uniform_int_distribution<int> len(0, box), letter(0, 3);
          for (int l = len(rng); l > 0; --l) {
            const std::int64_t x = letter(rng) < 2 ? 1 : 2;
            letters.push_back(letter(rng) % 2 ? x : -x);
          }
          for (auto x : letters) e = g.multiply(e, {{x}});
          break;
        }
        case Family::Finite:
          e = finite_element(std::uniform_int_distribution<int>(0, g.finite_group()->order() - 1)(rng));
          break;
      }
      a.add(e, Complex(coef(rng), coef(rng)));
    }
    if (!a.is_zero()) out.push_back(std::move(a));
  }
  return out;
}

Eigen::Matrix3cd u3_u() {
  const double r = std::sqrt(2.0) / 2.0;
  Eigen::Matrix3cd u;
  u << r, 0, -r, 0, 1, 0, r, 0, r;
  return u;
}

Eigen::Matrix3cd u3_v() {
  const double c = std::sqrt(3.0) / 2.0;
  Eigen::Matrix3cd v;
  v << 1, 0, 0, 0, c, -0.5, 0, 0.5, c;
  return v;
}

namespace {

struct U3Search {
  std::array<Eigen::Matrix3cd, 4> letters;  // a, b, a^-1, b^-1
  int max_length = 0;
  std::size_t count = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> word, best_word;

  void descend(const Eigen::Matrix3cd& w, int last) {
    if (!word.empty()) {
      ++count;
      const double dist = spectral_norm(w - Eigen::Matrix3cd::Identity());
      if (dist < best) {
        best = dist;
        best_word = word;
      }
    }
    if (static_cast<int>(word.size()) == max_length) return;
    for (int l = 0; l < 4; ++l) {
      if (last >= 0 && l == (last + 2) % 4) continue;
      word.push_back(l);
      descend(w * letters[l], l);
      word.pop_back();
    }
  }
};

}  // namespace

U3Report free_group_u3_check(int max_word_length, const Config& cfg) {
  if (max_word_length < 0 || max_word_length > cfg.caps.word_length)
    throw UsageError("u3 check word length must be in [0, " + std::to_string(cfg.caps.word_length) + "]");
  U3Report r;
  r.u = u3_u();
  r.v = u3_v();
  r.a = (r.u * r.v) * (r.u * r.v);
  const Eigen::Matrix3cd uvv = r.u * r.v * r.v;
  r.b = uvv * uvv;
  r.max_word_length = max_word_length;
  U3Search s;
  s.letters = {r.a, r.b, r.a.adjoint(), r.b.adjoint()};
  s.max_length = max_word_length;
  s.descend(Eigen::Matrix3cd::Identity(), -1);
  r.words_checked = s.count;
  r.min_distance = s.count ? s.best : 0.0;
  static const char* names[] = {"a", "b", "a^-1", "b^-1"};
  for (std::size_t i = 0; i < s.best_word.size(); ++i)
    r.argmin_word += (i ? " " : "") + std::string(names[s.best_word[i]]);
  r.all_separated = s.count == 0 || r.min_distance > 10.0 * cfg.tol.alg;
  return r;
}

}  // namespace procstar
