#include "eds/form.hpp"

#include <algorithm>

#include "eds/error.hpp"

namespace eds {

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw Error(ErrorCode::ChartMismatch, "forms live on different charts");
}

Form::Form(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {}

Form Form::function(ChartPtr chart, const Scalar& f) {
  Form out(std::move(chart), 0);
  out.add_term({}, f);
  return out;
}

Form Form::basis(ChartPtr chart, std::size_t i) {
  Form out(std::move(chart), 1);
  out.add_term({static_cast<std::uint16_t>(i)}, Scalar(1));
  return out;
}

Form Form::d(ChartPtr chart, std::string_view coordinate) {
  std::size_t i = chart->index(coordinate);
  return basis(std::move(chart), i);
}

Form Form::from_components(ChartPtr chart, const std::vector<Scalar>& c) {
  Form out(std::move(chart), 1);
  for (std::size_t i = 0; i < c.size(); ++i) out.add_term({static_cast<std::uint16_t>(i)}, c[i]);
  return out;
}

Scalar Form::coefficient(const Index& i) const {
  auto it = terms_.find(i);
  return it == terms_.end() ? Scalar() : it->second;
}

std::vector<Scalar> Form::components() const {
  if (degree_ == 0) return {as_scalar()};
  if (degree_ != 1) throw Error(ErrorCode::DegreeError, "components() needs a 1-form");
  std::vector<Scalar> out(chart_->dim());
  for (const auto& [i, c] : terms_) out[i[0]] = c;
  return out;
}

Scalar Form::as_scalar() const {
  if (degree_ != 0) throw Error(ErrorCode::DegreeError, "expected a 0-form");
  return coefficient({});
}

void Form::add_term(const Index& index, const Scalar& c) {
  if (c.is_zero()) return;
  Index i = index;
  int sign = 1;
  // insertion sort counting transpositions
  for (std::size_t a = 1; a < i.size(); ++a)
    for (std::size_t b = a; b > 0 && i[b - 1] >= i[b]; --b) {
      if (i[b - 1] == i[b]) return;
      std::swap(i[b - 1], i[b]);
      sign = -sign;
    }
  auto it = terms_.find(i);
  Scalar v = sign > 0 ? c : -c;
  if (it == terms_.end()) {
    terms_.emplace(std::move(i), v);
  } else {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [i, c] : out.terms_) c = -c;
  return out;
}

Form Form::operator+(const Form& o) const {
  if (!chart_) return o;
  if (!o.chart_) return *this;
  require_same_chart(chart_, o.chart_);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  if (degree_ != o.degree_) throw Error(ErrorCode::DegreeError, "adding forms of different degree");
  Form out = *this;
  for (const auto& [i, c] : o.terms_) out.add_term(i, c);
  return out;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form operator*(const Scalar& s, const Form& f) {
  Form out(f.chart_, f.degree_);
  if (s.is_zero()) return out;
  for (const auto& [i, c] : f.terms_) {
    Scalar v = s * c;
    if (!v.is_zero()) out.terms_.emplace(i, v);
  }
  return out;
}

bool operator==(const Form& a, const Form& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  if (a.chart_ && b.chart_ && !(*a.chart_ == *b.chart_)) return false;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

namespace {

std::string basis_text(const Chart& chart, const Index& i) {
  std::string s;
  for (std::size_t k = 0; k < i.size(); ++k) {
    if (k) s += '^';
    s += "d(" + chart.name(i[k]) + ")";
  }
  return s;
}

}  // namespace

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    bool negative = c.numerator().size() == 1 && c.numerator().leading_coefficient() < 0;
    Scalar a = negative ? -c : c;
    std::string coef;
    if (i.empty()) {
      coef = a.str();
      if (a.is_polynomial() && a.numerator().size() > 1 && !first) coef = "(" + coef + ")";
    } else if (!(a.is_constant() && a.constant_value() == 1)) {
      bool wrap = a.is_polynomial() && a.numerator().size() > 1;
      coef = (wrap ? "(" + a.str() + ")" : a.str()) + "*";
    }
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    s += coef + (i.empty() ? "" : basis_text(*chart_, i));
  }
  return s;
}

Form transport(const Form& a, const ChartPtr& to) {
  if (!a.chart() || a.chart() == to || *a.chart() == *to) {
    Form out(to, a.degree());
    for (const auto& [i, c] : a.terms()) out.add_term(i, c);
    return out;
  }
  std::vector<std::uint16_t> map(a.chart()->dim());
  for (std::size_t i = 0; i < map.size(); ++i) {
    auto j = to->find(a.chart()->name(i));
    if (!j) throw Error(ErrorCode::ChartMismatch, "coordinate " + a.chart()->name(i) + " missing in target chart");
    map[i] = static_cast<std::uint16_t>(*j);
  }
  Form out(to, a.degree());
  for (const auto& [i, c] : a.terms()) {
    Index k;
    for (auto x : i) k.push_back(map[x]);
    out.add_term(k, c);
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_same_chart(a.chart(), b.chart());
  Form out(a.chart(), a.degree() + b.degree());
  for (const auto& [i, c] : a.terms())
    for (const auto& [j, e] : b.terms()) {
      Index k = i;
      k.insert(k.end(), j.begin(), j.end());
      out.add_term(k, c * e);
    }
  return out;
}

Form ext_d(const Form& a) {
  Form out(a.chart(), a.degree() + 1);
  const Chart& chart = *a.chart();
  for (const auto& [i, c] : a.terms()) {
    for (const auto& name : c.coordinates()) {
      auto k = chart.find(name);
      if (!k) continue;
      Scalar dc = c.diff(name);
      Index j;
      j.reserve(i.size() + 1);
      j.push_back(static_cast<std::uint16_t>(*k));
      j.insert(j.end(), i.begin(), i.end());
      out.add_term(j, dc);
    }
  }
  return out;
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t i) {
  VectorField x{chart, std::vector<Scalar>(chart->dim())};
  x.components[i] = Scalar(1);
  return x;
}

Form contract(const VectorField& x, const Form& a) {
  if (a.degree() == 0) throw Error(ErrorCode::DegreeError, "cannot contract a 0-form");
  require_same_chart(x.chart, a.chart());
  Form out(a.chart(), a.degree() - 1);
  for (const auto& [i, c] : a.terms()) {
    for (std::size_t k = 0; k < i.size(); ++k) {
      const Scalar& xk = x.components[i[k]];
      if (xk.is_zero()) continue;
      Index rest = i;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      out.add_term(rest, (k % 2 == 0 ? xk : -xk) * c);
    }
  }
  return out;
}

SmoothMap SmoothMap::identity(ChartPtr chart) {
  SmoothMap m{"id", chart, chart, {}, MapKind::Diffeomorphism};
  for (const auto& n : chart->names()) m.images.push_back(Scalar::coordinate(n));
  return m;
}

SmoothMap SmoothMap::projection(ChartPtr source, ChartPtr target) {
  SmoothMap m{"pi", source, target, {}, MapKind::Submersion};
  for (const auto& n : target->names()) {
    if (!source->contains(n))
      throw Error(ErrorCode::ChartMismatch, "projection target coordinate " + n + " not in source");
    m.images.push_back(Scalar::coordinate(n));
  }
  return m;
}

std::map<std::string, Scalar, std::less<>> SmoothMap::bindings() const {
  std::map<std::string, Scalar, std::less<>> b;
  for (std::size_t j = 0; j < images.size(); ++j) b.emplace(target->name(j), images[j]);
  return b;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  require_same_chart(outer.source, inner.target);
  SmoothMap m{outer.name + "." + inner.name, inner.source, outer.target, {}, MapKind::Unchecked};
  auto b = inner.bindings();
  for (const auto& s : outer.images) m.images.push_back(s.substitute(b));
  return m;
}

Scalar pullback(const SmoothMap& phi, const Scalar& s) { return s.substitute(phi.bindings()); }

Form pullback(const SmoothMap& phi, const Form& a) {
  if (a.chart()) require_same_chart(phi.target, a.chart());
  auto b = phi.bindings();
  std::map<std::uint16_t, Form> dphi;
  auto differential = [&](std::uint16_t j) -> const Form& {
    auto it = dphi.find(j);
    if (it != dphi.end()) return it->second;
    return dphi.emplace(j, ext_d(Form::function(phi.source, phi.images[j]))).first->second;
  };
  Form out(phi.source, a.degree());
  for (const auto& [i, c] : a.terms()) {
    Form term = Form::function(phi.source, c.substitute(b));
    for (auto j : i) term = wedge(term, differential(j));
    out += term;
  }
  return out;
}

}  // namespace eds
