#include "procstar/quotients.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

namespace procstar {

std::string to_string(QuotientKind k) {
  switch (k) {
    case QuotientKind::Mod: return "mod";
    case QuotientKind::Catalog: return "catalog";
    case QuotientKind::Normal: return "normal";
  }
  return {};
}

namespace {

std::int64_t floor_mod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

std::vector<int> images_of_generators(const FiniteQuotient& q) {
  std::vector<int> out;
  for (int i = 0; i < q.source().generator_count(); ++i) out.push_back(q.apply(q.source().generator(i)));
  return out;
}

bool generates(const FiniteGroup& t, const std::vector<int>& gens) {
  return static_cast<int>(t.closure(gens).size()) == t.order();
}

// Relations every generator-image assignment must satisfy for the source family.
bool satisfies_relations(const DiscreteGroup& g, const FiniteGroup& t, const std::vector<int>& im) {
  auto commute = [&](int a, int b) { return t.mul(a, b) == t.mul(b, a); };
  switch (g.family()) {
    case Family::ZPower:
      for (std::size_t i = 0; i < im.size(); ++i)
        for (std::size_t j = i + 1; j < im.size(); ++j)
          if (!commute(im[i], im[j])) return false;
      return true;
    case Family::Heisenberg: {
      const int gg = im[0], h = im[1], z = im[2];
      return t.mul(gg, h) == t.mul(z, t.mul(h, gg)) && commute(z, gg) && commute(z, h);
    }
    case Family::Free2: return true;
    case Family::Finite: {
      const FiniteGroup& src = *g.finite_group();
      std::vector<int> f(src.order());
      for (int x = 0; x < src.order(); ++x) {
        int acc = t.identity();
        for (int gen : src.word(x)) acc = t.mul(acc, im[gen]);
        f[x] = acc;
      }
      for (int x = 0; x < src.order(); ++x)
        for (std::size_t i = 0; i < src.generators().size(); ++i)
          if (f[src.mul(x, src.generators()[i])] != t.mul(f[x], im[i])) return false;
      return true;
    }
  }
  return false;
}

std::size_t checked_order(const std::vector<std::int64_t>& moduli, std::size_t cap) {
  std::size_t order = 1;
  for (auto m : moduli) {
    if (m < 1) throw UsageError("moduli must be positive");
    if (static_cast<std::size_t>(m) > cap || order > cap / static_cast<std::size_t>(m))
      throw CapExceeded("quotient order above the cap " + std::to_string(cap));
    order *= static_cast<std::size_t>(m);
  }
  return order;
}

}  // namespace

std::string FiniteQuotient::label() const {
  std::string s = source_.label() + " -> " + target_->label();
  if (kind_ == QuotientKind::Mod) {
    s += " [mod";
    for (auto m : moduli_) s += " " + std::to_string(m);
    s += "]";
  } else if (!catalog_label_.empty()) {
    s += " [" + catalog_label_ + "]";
  }
  return s;
}

int FiniteQuotient::evaluate_word(const Element& g) const {
  int acc = target_->identity();
  for (const auto& letter : source_.word(g))
    acc = target_->mul(acc, target_->power(images_[letter.generator], letter.exponent));
  return acc;
}

int FiniteQuotient::apply(const Element& g) const {
  switch (kind_) {
    case QuotientKind::Mod:
      if (source_.family() == Family::Heisenberg) {
        const auto n = moduli_[0];
        return heisenberg_mod_index(static_cast<int>(n), floor_mod(g.coords[0], n),
                                    floor_mod(g.coords[1], n), floor_mod(g.coords[2], n));
      } else {
        std::int64_t idx = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
          idx = idx * moduli_[i] + floor_mod(g.coords[i], moduli_[i]);
        return static_cast<int>(idx);
      }
    case QuotientKind::Catalog: return evaluate_word(g);
    case QuotientKind::Normal: return coset_of_[g.coords[0]];
  }
  return 0;
}

FiniteQuotient mod_quotient(const DiscreteGroup& g, std::vector<std::int64_t> moduli,
                            std::size_t order_cap) {
  FiniteQuotient q;
  q.source_ = g;
  q.kind_ = QuotientKind::Mod;
  if (g.family() == Family::ZPower) {
    if (moduli.size() != static_cast<std::size_t>(g.rank()))
      throw UsageError("mod quotient of " + g.label() + " needs " + std::to_string(g.rank()) +
                       " moduli");
    checked_order(moduli, order_cap);
    if (moduli.size() == 1) {
      q.target_ = build_finite_group(cyclic(static_cast<int>(moduli[0])), order_cap);
    } else {
      std::vector<GroupDescriptor> fs;
      for (auto m : moduli) fs.push_back(cyclic(static_cast<int>(m)));
      q.target_ = build_finite_group(direct_product(std::move(fs)), order_cap);
    }
  } else if (g.family() == Family::Heisenberg) {
    if (moduli.size() != 1) throw UsageError("Heisenberg mod quotient takes one modulus");
    checked_order({moduli[0], moduli[0], moduli[0]}, order_cap);
    q.target_ = build_finite_group(heisenberg_mod(static_cast<int>(moduli[0])), order_cap);
  } else {
    throw UsageError("mod quotients exist only for Z^d and Heisenberg");
  }
  q.moduli_ = std::move(moduli);
  q.images_ = images_of_generators(q);
  return q;
}

FiniteQuotient catalog_quotient(const DiscreteGroup& g, FiniteGroupPtr target,
                                std::vector<int> generator_images, std::string label) {
  if (static_cast<int>(generator_images.size()) != g.generator_count())
    throw UsageError("catalog quotient needs one image per generator of " + g.label());
  for (int v : generator_images)
    if (v < 0 || v >= target->order()) throw UsageError("generator image out of range");
  if (!satisfies_relations(g, *target, generator_images))
    throw UsageError("generator images do not define a homomorphism from " + g.label());
  if (!generates(*target, generator_images))
    throw UsageError("generator images do not generate " + target->label());
  FiniteQuotient q;
  q.source_ = g;
  q.target_ = std::move(target);
  q.kind_ = QuotientKind::Catalog;
  q.images_ = std::move(generator_images);
  q.catalog_label_ = std::move(label);
  return q;
}

FiniteQuotient normal_quotient(const DiscreteGroup& g, std::vector<int> kernel_generators,
                               std::size_t order_cap) {
  if (g.family() != Family::Finite) throw UsageError("normal quotients need a finite source");
  const FiniteGroup& src = *g.finite_group();
  for (int v : kernel_generators)
    if (v < 0 || v >= src.order()) throw UsageError("kernel generator out of range");
  const std::vector<int> n = src.normal_closure(kernel_generators);

  FiniteQuotient q;
  q.source_ = g;
  q.kind_ = QuotientKind::Normal;
  q.kernel_ = n;
  std::sort(kernel_generators.begin(), kernel_generators.end());
  kernel_generators.erase(std::unique(kernel_generators.begin(), kernel_generators.end()),
                          kernel_generators.end());
  q.kernel_generators_ = std::move(kernel_generators);
  q.coset_of_.assign(src.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < src.order(); ++x) {
    if (q.coset_of_[x] >= 0) continue;
    const int idx = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int k : n) q.coset_of_[src.mul(x, k)] = idx;
  }
  const int m = static_cast<int>(reps.size());
  if (static_cast<std::size_t>(m) > order_cap) throw CapExceeded("quotient order above the cap");
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[static_cast<std::size_t>(i) * m + j] = q.coset_of_[src.mul(reps[i], reps[j])];
  q.target_ = std::make_shared<const FiniteGroup>(
      m, std::move(table), src.label() + "/N" + std::to_string(n.size()));
  q.images_ = images_of_generators(q);
  return q;
}

FiniteQuotient trivial_quotient(const DiscreteGroup& g) {
  if (g.family() == Family::ZPower)
    return mod_quotient(g, std::vector<std::int64_t>(g.rank(), 1));
  if (g.family() == Family::Heisenberg) return mod_quotient(g, {1});
  if (g.family() == Family::Finite) {
    std::vector<int> all(g.finite_group()->order());
    std::iota(all.begin(), all.end(), 0);
    return normal_quotient(g, std::move(all));
  }
  return catalog_quotient(g, build_finite_group(cyclic(1)),
                          std::vector<int>(g.generator_count(), 0), "trivial");
}

bool is_surjective(const FiniteQuotient& q) {
  return generates(*q.target(), images_of_generators(q));
}

bool is_injective_on(const FiniteQuotient& q, const std::vector<Element>& s) {
  std::set<Element> distinct(s.begin(), s.end());
  std::set<int> images;
  for (const auto& x : distinct) images.insert(q.apply(x));
  return images.size() == distinct.size();
}

namespace {

Element random_element(const DiscreteGroup& g, std::mt19937_64& rng) {
  switch (g.family()) {
    case Family::ZPower: {
      std::uniform_int_distribution<std::int64_t> d(-20, 20);
      Element e = g.identity();
      for (auto& v : e.coords) v = d(rng);
      return e;
    }
    case Family::Heisenberg: {
      std::uniform_int_distribution<std::int64_t> d(-10, 10);
      return heisenberg_element(d(rng), d(rng), d(rng));
    }
    case Family::Free2: {
      std::uniform_int_distribution<int> len(0, 8), letter(0, 3);
      const std::int64_t letters[] = {1, -1, 2, -2};
      Element e = g.identity();
      const int n = len(rng);
      for (int i = 0; i < n; ++i) e = g.multiply(e, Element{{letters[letter(rng)]}});
      return e;
    }
    case Family::Finite: {
      std::uniform_int_distribution<int> d(0, g.finite_group()->order() - 1);
      return finite_element(d(rng));
    }
  }
  return {};
}

}  // namespace

bool is_homomorphism_on_samples(const FiniteQuotient& q, std::uint64_t seed, int samples) {
  const DiscreteGroup& g = q.source();
  const FiniteGroup& t = *q.target();
  if (q.apply(g.identity()) != t.identity()) return false;
  std::vector<Element> gens;
  for (int i = 0; i < g.generator_count(); ++i) {
    gens.push_back(g.generator(i));
    gens.push_back(g.inverse(g.generator(i)));
  }
  for (const auto& x : gens)
    for (const auto& y : gens)
      if (q.apply(g.multiply(x, y)) != t.mul(q.apply(x), q.apply(y))) return false;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Element x = random_element(g, rng), y = random_element(g, rng);
    if (q.apply(g.multiply(x, y)) != t.mul(q.apply(x), q.apply(y))) return false;
  }
  return true;
}

std::optional<std::vector<int>> connecting_map(const FiniteQuotient& fine,
                                               const FiniteQuotient& coarse) {
  if (!(fine.source() == coarse.source())) return std::nullopt;
  const FiniteGroup& tf = *fine.target();
  const FiniteGroup& tc = *coarse.target();
  const auto& fi = fine.generator_images();
  const auto& ci = coarse.generator_images();
  std::vector<int> conn(tf.order(), -1);
  conn[tf.identity()] = tc.identity();
  std::deque<int> queue{tf.identity()};
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < fi.size(); ++i) {
      const int t2 = tf.mul(t, fi[i]);
      const int c2 = tc.mul(conn[t], ci[i]);
      if (conn[t2] < 0) {
        conn[t2] = c2;
        queue.push_back(t2);
      } else if (conn[t2] != c2) {
        return std::nullopt;
      }
    }
  }
  if (std::any_of(conn.begin(), conn.end(), [](int v) { return v < 0; })) return std::nullopt;
  return conn;
}

bool refines(const FiniteQuotient& fine, const FiniteQuotient& coarse) {
  return connecting_map(fine, coarse).has_value();
}

FiniteQuotient refine(const FiniteQuotient& q1, const FiniteQuotient& q2, std::size_t order_cap) {
  const DiscreteGroup& g = q1.source();
  if (!(g == q2.source())) throw UsageError("refine: quotients of different groups");

  if (q1.kind() == QuotientKind::Mod && q2.kind() == QuotientKind::Mod) {
    std::vector<std::int64_t> m(q1.moduli().size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::lcm(q1.moduli()[i], q2.moduli()[i]);
    return mod_quotient(g, std::move(m), order_cap);
  }
  if (q1.kind() == QuotientKind::Normal && q2.kind() == QuotientKind::Normal) {
    std::vector<int> both;
    std::set_intersection(q1.kernel().begin(), q1.kernel().end(), q2.kernel().begin(),
                          q2.kernel().end(), std::back_inserter(both));
    return normal_quotient(g, std::move(both), order_cap);
  }

  // Image of the pair map G -> T1 x T2.
  const FiniteGroup& t1 = *q1.target();
  const FiniteGroup& t2 = *q2.target();
  const auto& a = q1.generator_images();
  const auto& b = q2.generator_images();
  const std::int64_t n2 = t2.order();
  auto key = [n2](int x, int y) { return static_cast<std::int64_t>(x) * n2 + y; };
  std::vector<std::pair<int, int>> members{{t1.identity(), t2.identity()}};
  std::map<std::int64_t, int> index{{key(t1.identity(), t2.identity()), 0}};
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) {
      const int x = t1.mul(members[i].first, a[k]);
      const int y = t2.mul(members[i].second, b[k]);
      if (index.try_emplace(key(x, y), static_cast<int>(members.size())).second) {
        members.emplace_back(x, y);
        if (members.size() > order_cap) throw CapExceeded("refined quotient order above the cap");
      }
    }
  const int m = static_cast<int>(members.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i) * m + j] =
          index.at(key(t1.mul(members[i].first, members[j].first),
                       t2.mul(members[i].second, members[j].second)));
  auto target = std::make_shared<const FiniteGroup>(
      m, std::move(table), "image(" + t1.label() + " x " + t2.label() + ")");
  std::vector<int> images;
  for (std::size_t k = 0; k < a.size(); ++k) images.push_back(index.at(key(a[k], b[k])));
  return catalog_quotient(g, std::move(target), std::move(images), "refinement");
}

FiniteQuotient canonical_quotient(const DiscreteGroup& g, std::int64_t n, std::size_t order_cap) {
  if (g.family() == Family::ZPower)
    return mod_quotient(g, std::vector<std::int64_t>(g.rank(), n), order_cap);
  if (g.family() == Family::Heisenberg) return mod_quotient(g, {n}, order_cap);
  throw UsageError("no canonical modulus chain for " + g.label());
}

std::vector<FiniteGroupPtr> free_group_catalog_targets(std::size_t max_order) {
  std::vector<GroupDescriptor> ds;
  for (int n = 1; n <= 24; ++n) ds.push_back(cyclic(n));
  ds.push_back(elementary_abelian_2(2));
  for (int n = 3; n <= 12; ++n) ds.push_back(dihedral(n));
  for (int n = 3; n <= 5; ++n) ds.push_back(symmetric(n));
  ds.push_back(heisenberg_mod(3));
  ds.push_back(heisenberg_mod(4));
  std::vector<FiniteGroupPtr> out;
  for (const auto& d : ds)
    if (family_order(d) <= max_order) out.push_back(build_finite_group(d, max_order));
  std::stable_sort(out.begin(), out.end(), [](const FiniteGroupPtr& x, const FiniteGroupPtr& y) {
    return x->order() != y->order() ? x->order() < y->order() : x->label() < y->label();
  });
  return out;
}

namespace {

// Least n >= 1 dividing none of the given positive gcds.
std::int64_t least_non_divisor(const std::set<std::int64_t>& gcds, std::int64_t limit) {
  for (std::int64_t n = 1; n <= limit; ++n)
    if (std::none_of(gcds.begin(), gcds.end(), [n](std::int64_t v) { return v % n == 0; }))
      return n;
  return -1;
}

FiniteQuotient min_injective_modular(const DiscreteGroup& g, const std::vector<Element>& s,
                                     const Caps& caps) {
  // Both mod-n maps identify x and y exactly when n divides every coordinate difference.
  std::set<std::int64_t> gcds;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      std::int64_t d = 0;
      for (std::size_t k = 0; k < s[i].coords.size(); ++k)
        d = std::gcd(d, s[i].coords[k] - s[j].coords[k]);
      if (d != 0) gcds.insert(d < 0 ? -d : d);
    }
  const int dim = g.family() == Family::Heisenberg ? 3 : g.rank();
  std::int64_t limit = 1;
  while (std::pow(static_cast<double>(limit + 1), dim) <= static_cast<double>(caps.group_order))
    ++limit;
  const std::int64_t n = least_non_divisor(gcds, limit);
  if (n < 0) throw NotFound("no canonical quotient within the order cap separates the set");
  FiniteQuotient q = canonical_quotient(g, n, caps.group_order);
  if (!is_injective_on(q, s)) throw PrecisionError("modular separation certificate failed");
  return q;
}

FiniteQuotient min_injective_free(const DiscreteGroup& g, const std::vector<Element>& s,
                                  const Caps& caps) {
  for (const auto& target : free_group_catalog_targets(caps.catalog_order)) {
    const FiniteGroup& t = *target;
    for (int x = 0; x < t.order(); ++x)
      for (int y = 0; y < t.order(); ++y) {
        const int im[2] = {x, y};
        std::set<int> seen;
        bool injective = true;
        for (const auto& w : s) {
          int acc = t.identity();
          for (std::int64_t letter : w.coords) {
            const int v = im[std::abs(letter) - 1];
            acc = t.mul(acc, letter > 0 ? v : t.inv(v));
          }
          if (!seen.insert(acc).second) {
            injective = false;
            break;
          }
        }
        if (!injective || !generates(t, {x, y})) continue;
        return catalog_quotient(g, target, {x, y},
                                t.label() + " g1->" + std::to_string(x) + " g2->" + std::to_string(y));
      }
  }
  throw NotFound("no catalog quotient of F2 separates the set");
}

FiniteQuotient min_injective_finite(const DiscreteGroup& g, const std::vector<Element>& s,
                                    const Caps& caps) {
  const FiniteGroup& src = *g.finite_group();
  std::set<std::vector<int>> lattice{{src.identity()}};
  std::vector<std::vector<int>> frontier;
  for (const auto& cls : src.conjugacy_classes()) {
    auto n = src.normal_closure(cls);
    if (lattice.insert(n).second) frontier.push_back(std::move(n));
  }
  std::vector<std::vector<int>> atoms(frontier);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& f : frontier)
      for (const auto& a : atoms) {
        std::vector<int> u;
        std::set_union(f.begin(), f.end(), a.begin(), a.end(), std::back_inserter(u));
        auto n = src.normal_closure(u);
        if (lattice.insert(n).second) {
          next.push_back(std::move(n));
          if (lattice.size() > caps.normal_lattice)
            throw CapExceeded("normal subgroup lattice exceeds the enumeration cap");
        }
      }
    frontier = std::move(next);
  }
  // Largest kernel first; ties broken lexicographically for determinism.
  std::vector<std::vector<int>> ordered(lattice.begin(), lattice.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& n : ordered) {
    std::vector<char> in(src.order(), 0);
    for (int k : n) in[k] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i)
      for (std::size_t j = i + 1; j < s.size() && ok; ++j) {
        const int a = static_cast<int>(s[i].coords[0]), b = static_cast<int>(s[j].coords[0]);
        if (a != b && in[src.mul(src.inv(a), b)]) ok = false;
      }
    if (ok) return normal_quotient(g, n, caps.group_order);
  }
  throw NotFound("no quotient separates the set");
}

}  // namespace

FiniteQuotient min_injective_quotient(const DiscreteGroup& g, const std::vector<Element>& s,
                                      const Caps& caps) {
  if (s.empty()) throw UsageError("min_injective_quotient needs a nonempty set");
  for (const auto& x : s) g.validate(x);
  const std::set<Element> uniq(s.begin(), s.end());
  const std::vector<Element> set(uniq.begin(), uniq.end());
  switch (g.family()) {
    case Family::ZPower:
    case Family::Heisenberg: return min_injective_modular(g, set, caps);
    case Family::Free2: return min_injective_free(g, set, caps);
    case Family::Finite: return min_injective_finite(g, set, caps);
  }
  throw UsageError("unsupported group");
}

}  // namespace procstar
