#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "eds/atom.hpp"
#include "eds/polynomial.hpp"

namespace eds {

// Exact scalar function: a reduced quotient of polynomials in atoms with a
// monic denominator. Construction canonicalizes, so structural equality is
// equality of rational functions.
class Scalar {
 public:
  Scalar();
  Scalar(int c);  // NOLINT(google-explicit-constructor)
  Scalar(long c);  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  explicit Scalar(Atom a);

  static Scalar coordinate(std::string_view name);
  static Scalar function(std::string_view name, std::vector<Scalar> args);
  static Scalar builtin(std::string_view name, const Scalar& arg);
  // Throws DegenerateExpression when den is the zero polynomial.
  static Scalar fraction(const Polynomial& num, const Polynomial& den);

  const Polynomial& numerator() const { return rep_->num; }
  const Polynomial& denominator() const { return rep_->den; }

  bool is_zero() const { return rep_->num.is_zero(); }
  bool is_constant() const { return rep_->den.is_one() && rep_->num.is_constant(); }
  bool is_polynomial() const { return rep_->den.is_one(); }
  mpq_class constant_value() const { return rep_->num.constant_value(); }
  // Number of terms in numerator plus denominator; a size heuristic.
  std::size_t complexity() const { return rep_->num.size() + rep_->den.size(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  // Throws DegenerateExpression on division by zero.
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar pow(int e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Partial derivative along a coordinate.
  Scalar diff(std::string_view coordinate) const;
  // Simultaneous substitution of coordinates.
  Scalar substitute(const std::map<std::string, Scalar, std::less<>>& bindings) const;

  std::vector<Atom> atoms() const;
  // Names of all coordinates the scalar depends on, sorted.
  std::vector<std::string> coordinates() const;

  std::string str() const;
  std::size_t hash() const { return rep_->hash; }

 private:
  struct Rep {
    Polynomial num;
    Polynomial den;
    std::size_t hash;
  };
  explicit Scalar(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static Scalar make(Polynomial num, Polynomial den);

  std::shared_ptr<const Rep> rep_;
};

// Identity of canon(); kept as a named operation for callers and tests.
inline Scalar canon(const Scalar& e) { return e; }

// d(atom)/d(coordinate) as a Scalar.
Scalar atom_derivative(Atom a, std::string_view coordinate);

// Substitutes scalars for atoms in a polynomial.
Scalar evaluate(const Polynomial& p, const std::map<Atom, Scalar>& values);

}  // namespace eds
