#include "procstar/group_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace procstar {

namespace {

std::vector<std::int64_t> reduce_letters(const std::vector<std::int64_t>& letters) {
  std::vector<std::int64_t> out;
  for (std::int64_t x : letters) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

}  // namespace

DiscreteGroup DiscreteGroup::integers(int rank) {
  if (rank < 1) throw UsageError("Z^d needs d >= 1");
  DiscreteGroup g;
  g.family_ = Family::ZPower;
  g.rank_ = rank;
  return g;
}

DiscreteGroup DiscreteGroup::heisenberg() {
  DiscreteGroup g;
  g.family_ = Family::Heisenberg;
  g.rank_ = 3;
  return g;
}

DiscreteGroup DiscreteGroup::free2() {
  DiscreteGroup g;
  g.family_ = Family::Free2;
  g.rank_ = 2;
  return g;
}

DiscreteGroup DiscreteGroup::finite(FiniteGroupPtr group) {
  if (!group) throw UsageError("null finite group");
  DiscreteGroup g;
  g.family_ = Family::Finite;
  g.rank_ = 1;
  g.finite_ = std::move(group);
  return g;
}

std::string DiscreteGroup::label() const {
  switch (family_) {
    case Family::ZPower: return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
    case Family::Heisenberg: return "Heisenberg";
    case Family::Free2: return "F2";
    case Family::Finite: return finite_->label();
  }
  return {};
}

bool DiscreteGroup::operator==(const DiscreteGroup& other) const {
  if (family_ != other.family_ || rank_ != other.rank_) return false;
  if (family_ != Family::Finite) return true;
  return finite_ == other.finite_ || finite_->same_table(*other.finite_);
}

Element DiscreteGroup::identity() const {
  switch (family_) {
    case Family::ZPower: return {std::vector<std::int64_t>(rank_, 0)};
    case Family::Heisenberg: return {{0, 0, 0}};
    case Family::Free2: return {{}};
    case Family::Finite: return {{finite_->identity()}};
  }
  return {};
}

void DiscreteGroup::validate(const Element& a) const {
  const auto& c = a.coords;
  switch (family_) {
    case Family::ZPower:
      if (c.size() != static_cast<std::size_t>(rank_))
        throw UsageError(label() + " element needs " + std::to_string(rank_) + " coordinates");
      return;
    case Family::Heisenberg:
      if (c.size() != 3) throw UsageError("Heisenberg element needs (n, m, l)");
      return;
    case Family::Free2:
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 1 && c[i] != -1 && c[i] != 2 && c[i] != -2)
          throw UsageError("F2 letters are +-1 and +-2");
        if (i > 0 && c[i] == -c[i - 1]) throw UsageError("F2 word is not reduced");
      }
      return;
    case Family::Finite:
      if (c.size() != 1 || c[0] < 0 || c[0] >= finite_->order())
        throw UsageError("finite group element index out of range");
      return;
  }
}

Element DiscreteGroup::multiply(const Element& a, const Element& b) const {
  switch (family_) {
    case Family::ZPower: {
      Element r = a;
      for (int i = 0; i < rank_; ++i) r.coords[i] += b.coords[i];
      return r;
    }
    case Family::Heisenberg: {
      const auto& x = a.coords;
      const auto& y = b.coords;
      return {{x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]}};
    }
    case Family::Free2: {
      std::vector<std::int64_t> w = a.coords;
      w.insert(w.end(), b.coords.begin(), b.coords.end());
      return {reduce_letters(w)};
    }
    case Family::Finite:
      return {{finite_->mul(static_cast<int>(a.coords[0]), static_cast<int>(b.coords[0]))}};
  }
  return {};
}

Element DiscreteGroup::inverse(const Element& a) const {
  switch (family_) {
    case Family::ZPower: {
      Element r = a;
      for (auto& v : r.coords) v = -v;
      return r;
    }
    case Family::Heisenberg: {
      const auto& x = a.coords;
      return {{-x[0], -x[1], x[0] * x[1] - x[2]}};
    }
    case Family::Free2: {
      std::vector<std::int64_t> w(a.coords.rbegin(), a.coords.rend());
      for (auto& v : w) v = -v;
      return {w};
    }
    case Family::Finite:
      return {{finite_->inv(static_cast<int>(a.coords[0]))}};
  }
  return {};
}

int DiscreteGroup::generator_count() const {
  switch (family_) {
    case Family::ZPower: return rank_;
    case Family::Heisenberg: return 3;
    case Family::Free2: return 2;
    case Family::Finite: return static_cast<int>(finite_->generators().size());
  }
  return 0;
}

Element DiscreteGroup::generator(int i) const {
  if (i < 0 || i >= generator_count()) throw UsageError("generator index out of range");
  switch (family_) {
    case Family::ZPower: {
      Element e = identity();
      e.coords[i] = 1;
      return e;
    }
    case Family::Heisenberg: {
      Element e = identity();
      e.coords[i] = 1;
      return e;
    }
    case Family::Free2: return {{i + 1}};
    case Family::Finite: return {{finite_->generators()[i]}};
  }
  return {};
}

std::vector<Letter> DiscreteGroup::word(const Element& a) const {
  std::vector<Letter> w;
  switch (family_) {
    case Family::ZPower:
      for (int i = 0; i < rank_; ++i)
        if (a.coords[i] != 0) w.push_back({i, a.coords[i]});
      break;
    case Family::Heisenberg:
      if (a.coords[2] != 0) w.push_back({2, a.coords[2]});
      if (a.coords[1] != 0) w.push_back({1, a.coords[1]});
      if (a.coords[0] != 0) w.push_back({0, a.coords[0]});
      break;
    case Family::Free2:
      for (std::int64_t x : a.coords) {
        const int gen = static_cast<int>(std::abs(x)) - 1;
        const std::int64_t e = x > 0 ? 1 : -1;
        if (!w.empty() && w.back().generator == gen)
          w.back().exponent += e;
        else
          w.push_back({gen, e});
      }
      break;
    case Family::Finite:
      for (int gen : finite_->word(static_cast<int>(a.coords[0]))) w.push_back({gen, 1});
      break;
  }
  return w;
}

Element z_element(std::vector<std::int64_t> v) { return {std::move(v)}; }

Element heisenberg_element(std::int64_t n, std::int64_t m, std::int64_t l) { return {{n, m, l}}; }

Element free_word(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<std::int64_t> letters;
  while (in >> tok) {
    if (tok == "e" || tok == "1") continue;
    bool inverse = false;
    if (tok.front() == '-') {
      inverse = true;
      tok.erase(0, 1);
    }
    if (tok.size() >= 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      inverse = !inverse;
      tok.resize(tok.size() - 3);
    }
    std::int64_t letter = 0;
    if (tok == "g1" || tok == "a" || tok == "x")
      letter = 1;
    else if (tok == "g2" || tok == "b" || tok == "y")
      letter = 2;
    else
      throw UsageError("unknown F2 letter '" + tok + "'");
    letters.push_back(inverse ? -letter : letter);
  }
  return {reduce_letters(letters)};
}

std::string free_word_string(const Element& w) {
  std::string s;
  for (std::size_t i = 0; i < w.coords.size(); ++i) {
    if (i) s += ' ';
    if (w.coords[i] < 0) s += '-';
    s += "g" + std::to_string(std::abs(w.coords[i]));
  }
  return s;
}

Element finite_element(int index) { return {{index}}; }

GroupAlgebraElement GroupAlgebraElement::delta(const DiscreteGroup& group, const Element& g,
                                               Complex c) {
  GroupAlgebraElement a(group);
  group.validate(g);
  a.add(g, c);
  return a;
}

Complex GroupAlgebraElement::coefficient(const Element& g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

std::vector<Element> GroupAlgebraElement::support() const {
  std::vector<Element> s;
  s.reserve(terms_.size());
  for (const auto& [g, c] : terms_) s.push_back(g);
  return s;
}

GroupAlgebraElement& GroupAlgebraElement::add(const Element& g, Complex c) {
  if (c == Complex(0.0)) return *this;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& other) {
  if (!(group_ == other.group_)) throw UsageError("group algebra elements over different groups");
  for (const auto& [g, c] : other.terms_) add(g, c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& other) {
  if (!(group_ == other.group_)) throw UsageError("group algebra elements over different groups");
  for (const auto& [g, c] : other.terms_) add(g, -c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second == Complex(0.0) ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a -= b; }
GroupAlgebraElement operator*(Complex s, GroupAlgebraElement a) { return a *= s; }

GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (!(a.group() == b.group())) throw UsageError("convolve: elements over different groups");
  const DiscreteGroup& g = a.group();
  std::map<Element, Complex> acc;
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) acc[g.multiply(x, y)] += cx * cy;
  GroupAlgebraElement out(g);
  for (const auto& [x, c] : acc) out.add(x, c);
  return out;
}

GroupAlgebraElement involution(const GroupAlgebraElement& a) {
  GroupAlgebraElement out(a.group());
  for (const auto& [g, c] : a.terms()) out.add(a.group().inverse(g), std::conj(c));
  return out;
}

double l1_norm(const GroupAlgebraElement& a) {
  double s = 0.0;
  for (const auto& [g, c] : a.terms()) s += std::abs(c);
  return s;
}

double l2_norm(const GroupAlgebraElement& a) {
  double s = 0.0;
  for (const auto& [g, c] : a.terms()) s += std::norm(c);
  return std::sqrt(s);
}

double max_coefficient_diff(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  double m = 0.0;
  for (const auto& [g, c] : (a - b).terms()) m = std::max(m, std::abs(c));
  return m;
}

Eigen::VectorXcd coefficient_vector(const GroupAlgebraElement& a) {
  if (a.group().family() != Family::Finite)
    throw UsageError("coefficient_vector needs an element over a finite group");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(a.group().finite_group()->order());
  for (const auto& [g, c] : a.terms()) v(g.coords[0]) += c;
  return v;
}

GroupAlgebraElement from_coefficients(const DiscreteGroup& finite_group, const Eigen::VectorXcd& c) {
  if (finite_group.family() != Family::Finite)
    throw UsageError("from_coefficients needs a finite group");
  GroupAlgebraElement a(finite_group);
  for (Eigen::Index i = 0; i < c.size(); ++i) a.add(finite_element(static_cast<int>(i)), c(i));
  return a;
}

std::vector<Element> product_set(const DiscreteGroup& g, const std::vector<Element>& s,
                                 const std::vector<Element>& t) {
  std::set<Element> out;
  for (const auto& x : s)
    for (const auto& y : t) out.insert(g.multiply(x, y));
  return {out.begin(), out.end()};
}

}  // namespace procstar
