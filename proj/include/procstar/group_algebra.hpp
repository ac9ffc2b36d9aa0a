#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "procstar/finite_group.hpp"

namespace procstar {

using Complex = std::complex<double>;

enum class Family { ZPower, Heisenberg, Free2, Finite };

/// Group element in the family's exact coordinates:
///   Z^d        integer vector of length d
///   Heisenberg (n, m, l) for the matrix [[1, n, l], [0, 1, m], [0, 0, 1]]
///   F2         reduced word of letters +-1, +-2 (g1, g2 and inverses)
///   Finite     {element index}
struct Element {
  std::vector<std::int64_t> coords;

  auto operator<=>(const Element&) const = default;
  bool operator==(const Element&) const = default;
};

/// One letter of a generator word: generator index raised to an integer power.
struct Letter {
  int generator;
  std::int64_t exponent;
};

/// A supported discrete group with exact element arithmetic.
class DiscreteGroup {
 public:
  static DiscreteGroup integers(int rank = 1);
  static DiscreteGroup heisenberg();
  static DiscreteGroup free2();
  static DiscreteGroup finite(FiniteGroupPtr group);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  const FiniteGroupPtr& finite_group() const { return finite_; }
  std::string label() const;

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// Throws UsageError when the coordinates are not a valid element of this group.
  void validate(const Element& a) const;

  /// Heisenberg: g = (1,0,0), h = (0,1,0), z = (0,0,1), so that gh = zhg and z is central.
  int generator_count() const;
  Element generator(int i) const;
  /// Letters whose ordered product is a. Heisenberg (n,m,l) = z^l h^m g^n.
  std::vector<Letter> word(const Element& a) const;

  bool operator==(const DiscreteGroup& other) const;

 private:
  Family family_ = Family::ZPower;
  int rank_ = 1;
  FiniteGroupPtr finite_;
};

Element z_element(std::vector<std::int64_t> v);
Element heisenberg_element(std::int64_t n, std::int64_t m, std::int64_t l);
/// Parses "g1 g2 -g1" style words (also "g1^-1", "e"); result is reduced.
Element free_word(const std::string& text);
std::string free_word_string(const Element& w);
Element finite_element(int index);

/// Finitely supported complex function on a discrete group; no zero coefficients stored.
class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(DiscreteGroup group) : group_(std::move(group)) {}

  static GroupAlgebraElement delta(const DiscreteGroup& group, const Element& g, Complex c = 1.0);

  const DiscreteGroup& group() const { return group_; }
  const std::map<Element, Complex>& terms() const { return terms_; }
  Complex coefficient(const Element& g) const;
  bool is_zero() const { return terms_.empty(); }
  std::vector<Element> support() const;

  /// Adds c to the coefficient of g, dropping the term if it cancels exactly.
  GroupAlgebraElement& add(const Element& g, Complex c);

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& other);
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& other);
  GroupAlgebraElement& operator*=(Complex s);

  bool operator==(const GroupAlgebraElement& other) const {
    return group_ == other.group_ && terms_ == other.terms_;
  }

 private:
  DiscreteGroup group_;
  std::map<Element, Complex> terms_;
};

/// (a * b)(x) = sum_g a(g) b(g^-1 x).
GroupAlgebraElement convolve(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
/// a*(g) = conj(a(g^-1)).
GroupAlgebraElement involution(const GroupAlgebraElement& a);
double l1_norm(const GroupAlgebraElement& a);
double l2_norm(const GroupAlgebraElement& a);
/// Max coefficient distance between two elements of the same group.
double max_coefficient_diff(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b);
GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b);
GroupAlgebraElement operator*(Complex s, GroupAlgebraElement a);
inline GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return convolve(a, b);
}

/// Dense coefficient vector of an element over a finite group.
Eigen::VectorXcd coefficient_vector(const GroupAlgebraElement& a);
GroupAlgebraElement from_coefficients(const DiscreteGroup& finite_group, const Eigen::VectorXcd& c);

/// All products s*t with s in S, t in T (sorted, deduplicated).
std::vector<Element> product_set(const DiscreteGroup& g, const std::vector<Element>& s,
                                 const std::vector<Element>& t);

}  // namespace procstar
