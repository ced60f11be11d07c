#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "eds/atom.hpp"

namespace eds {

// Power product of atoms, factors sorted by atom order, exponents positive.
class Monomial {
 public:
  using Factor = std::pair<Atom, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(Atom a, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree_in(Atom a) const;
  std::uint32_t total_degree() const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  // Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial without(Atom a) const;
  Monomial gcd(const Monomial& other) const;

  // Lexicographic order on exponent vectors with atoms ordered by atom_less
  // (the smaller key is the more significant variable).
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

  std::string str() const;
  std::size_t hash() const;

 private:
  std::vector<Factor> factors_;
};

struct Term {
  Monomial monomial;
  mpq_class coefficient;
};

// Sparse multivariate polynomial over Q, terms sorted in decreasing lex order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const mpq_class& c);
  explicit Polynomial(Atom a);
  Polynomial(Monomial m, const mpq_class& c);

  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  mpq_class constant_value() const;  // requires is_constant()
  std::size_t size() const { return terms_.size(); }

  const Term& leading_term() const { return terms_.front(); }
  const mpq_class& leading_coefficient() const { return terms_.front().coefficient; }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const mpq_class& c) const;
  Polynomial operator*(const Monomial& m) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned e) const;

  // Atoms occurring, sorted by atom order.
  std::vector<Atom> atoms() const;
  bool contains(Atom a) const;
  std::uint32_t degree_in(Atom a) const;
  // coefficients()[k] is the coefficient of a^k.
  std::vector<Polynomial> coefficients_in(Atom a) const;
  static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, Atom a);
  Polynomial partial(Atom a) const;

  // Makes the leading coefficient 1.
  Polynomial monic() const;
  // Scales to coprime integer coefficients with positive leading coefficient.
  Polynomial primitive() const;

  std::string str() const;
  std::size_t hash() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

// Exact quotient; throws std::logic_error when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);
// Returns the quotient when b divides a.
bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient);
// Monic greatest common divisor (0 only when both arguments vanish).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// Reduction modulo a polynomial through its leading term; the normal form
// is unique when the divisors form a Groebner basis.
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& divisors);

}  // namespace eds
