#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eds/chart.hpp"
#include "eds/scalar.hpp"

namespace eds {

using Index = std::vector<std::uint16_t>;  // strictly increasing coordinate indices

// Differential p-form on a chart, stored fully expanded in the coordinate
// basis with no zero coefficients.
class Form {
 public:
  Form() = default;
  Form(ChartPtr chart, int degree);

  static Form function(ChartPtr chart, const Scalar& f);
  // d(x^i)
  static Form basis(ChartPtr chart, std::size_t i);
  static Form d(ChartPtr chart, std::string_view coordinate);
  // One-form from its coefficient vector.
  static Form from_components(ChartPtr chart, const std::vector<Scalar>& c);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<Index, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Index& i) const;
  // Coefficient vector of a one-form (or the value of a 0-form in slot 0).
  std::vector<Scalar> components() const;
  Scalar as_scalar() const;  // degree 0 only

  Form operator-() const;
  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form& operator+=(const Form& o) { return *this = *this + o; }
  friend Form operator*(const Scalar& s, const Form& f);
  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  // Applies f to every coefficient, dropping zeros.
  template <class F>
  Form map_coefficients(F f) const {
    Form out(chart_, degree_);
    for (const auto& [i, c] : terms_) out.add_term(i, f(c));
    return out;
  }

  std::string str() const;

  // Adds c * d(x^i1)^...^d(x^ip); i need not be sorted.
  void add_term(const Index& i, const Scalar& c);

 private:
  ChartPtr chart_;
  int degree_ = 0;
  std::map<Index, Scalar> terms_;
};

// Throws ChartMismatch unless both charts carry the same coordinates.
void require_same_chart(const ChartPtr& a, const ChartPtr& b);

// Re-expresses a form on another chart carrying (at least) its coordinates.
Form transport(const Form& a, const ChartPtr& to);

Form wedge(const Form& a, const Form& b);
Form ext_d(const Form& a);

struct VectorField {
  ChartPtr chart;
  std::vector<Scalar> components;

  static VectorField coordinate(ChartPtr chart, std::size_t i);
};

// Interior product; throws DegreeError on 0-forms.
Form contract(const VectorField& x, const Form& a);

enum class MapKind { Unchecked, Submersion, Diffeomorphism };

// Smooth map given by one scalar over the source coordinates per target coordinate.
struct SmoothMap {
  std::string name;
  ChartPtr source;
  ChartPtr target;
  std::vector<Scalar> images;
  MapKind kind = MapKind::Unchecked;

  static SmoothMap identity(ChartPtr chart);
  // Forgets source coordinates not present in the target.
  static SmoothMap projection(ChartPtr source, ChartPtr target);
  std::map<std::string, Scalar, std::less<>> bindings() const;
};

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);
Form pullback(const SmoothMap& phi, const Form& a);
Scalar pullback(const SmoothMap& phi, const Scalar& s);

}  // namespace eds
