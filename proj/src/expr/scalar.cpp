#include "eds/scalar.hpp"

#include <algorithm>

#include "eds/error.hpp"

namespace eds {

namespace {

std::size_t combine(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

Polynomial one() { return Polynomial(mpq_class(1)); }

}  // namespace

Scalar Scalar::make(Polynomial num, Polynomial den) {
  auto rep = std::make_shared<Rep>();
  rep->hash = combine(num.hash(), den.hash());
  rep->num = std::move(num);
  rep->den = std::move(den);
  return Scalar(std::shared_ptr<const Rep>(std::move(rep)));
}

Scalar::Scalar() : Scalar(mpq_class(0)) {}

Scalar::Scalar(int c) : Scalar(mpq_class(c)) {}

Scalar::Scalar(long c) : Scalar(mpq_class(c)) {}

Scalar::Scalar(const mpq_class& c) : rep_(make(Polynomial(c), one()).rep_) {}

Scalar::Scalar(Atom a) : rep_(make(Polynomial(a), one()).rep_) {}

Scalar Scalar::coordinate(std::string_view name) { return Scalar(coordinate_atom(name)); }

Scalar Scalar::function(std::string_view name, std::vector<Scalar> args) {
  return Scalar(function_atom(name, std::move(args)));
}

Scalar Scalar::builtin(std::string_view name, const Scalar& arg) {
  if (!is_builtin_function(name))
    throw Error(ErrorCode::InvalidArgument, "unknown builtin " + std::string(name));
  if (arg.is_zero()) {
    if (name == "sin") return Scalar(0);
    if (name == "cos" || name == "exp") return Scalar(1);
  }
  if (name == "ln") {
    if (arg.is_zero()) throw Error(ErrorCode::DegenerateExpression, "ln(0)");
    if (arg.is_constant() && arg.constant_value() == 1) return Scalar(0);
  }
  return Scalar(builtin_atom(name, arg));
}

Scalar Scalar::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::DegenerateExpression, "division by zero");
  if (num.is_zero()) return Scalar();
  if (den.is_constant()) return make(num * mpq_class(1 / den.constant_value()), one());
  Polynomial g = gcd(num, den);
  Polynomial n = num, d = den;
  if (!g.is_one()) {
    n = exact_divide(num, g);
    d = exact_divide(den, g);
  }
  mpq_class lc = d.leading_coefficient();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    n = n * inv;
    d = d * inv;
  }
  if (d.is_one()) return make(std::move(n), one());
  return make(std::move(n), std::move(d));
}

Scalar Scalar::operator-() const { return make(-rep_->num, rep_->den); }

Scalar Scalar::operator+(const Scalar& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  const Polynomial& b = rep_->den;
  const Polynomial& d = o.rep_->den;
  if (b.is_one() && d.is_one()) return make(rep_->num + o.rep_->num, one());
  if (b == d) return fraction(rep_->num + o.rep_->num, b);
  Polynomial g = gcd(b, d);
  Polynomial bg = exact_divide(b, g);
  Polynomial dg = exact_divide(d, g);
  return fraction(rep_->num * dg + o.rep_->num * bg, b * dg);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (o.is_constant()) {
    if (o.constant_value() == 1) return *this;
    return make(rep_->num * o.constant_value(), rep_->den);
  }
  if (is_constant()) return o * *this;
  if (rep_->den.is_one() && o.rep_->den.is_one())
    return make(rep_->num * o.rep_->num, one());
  // Cross-cancel; both operands are already reduced.
  Polynomial g1 = gcd(rep_->num, o.rep_->den);
  Polynomial g2 = gcd(o.rep_->num, rep_->den);
  Polynomial n = exact_divide(rep_->num, g1) * exact_divide(o.rep_->num, g2);
  Polynomial d = exact_divide(rep_->den, g2) * exact_divide(o.rep_->den, g1);
  mpq_class lc = d.leading_coefficient();
  if (lc != 1) {
    n = n * mpq_class(1 / lc);
    d = d * mpq_class(1 / lc);
  }
  return make(std::move(n), std::move(d));
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw Error(ErrorCode::DegenerateExpression, "division by zero: " + str() + " / 0");
  Scalar inv = fraction(o.rep_->den, o.rep_->num);
  return *this * inv;
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  return make(rep_->num.pow(static_cast<unsigned>(e)), rep_->den.pow(static_cast<unsigned>(e)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.rep_ == b.rep_) return true;
  return a.rep_->hash == b.rep_->hash && a.rep_->num == b.rep_->num && a.rep_->den == b.rep_->den;
}

Scalar atom_derivative(Atom a, std::string_view coordinate) {
  if (!depends_on(a, coordinate)) return Scalar();
  switch (a->kind) {
    case AtomKind::Coordinate:
      return Scalar(1);
    case AtomKind::Function: {
      Scalar out;
      for (std::uint32_t i = 0; i < a->args.size(); ++i) {
        Scalar inner = a->args[i].diff(coordinate);
        if (inner.is_zero()) continue;
        std::vector<std::uint32_t> slots = a->slots;
        slots.push_back(i);
        out += Scalar(function_atom(a->name, a->args, std::move(slots))) * inner;
      }
      return out;
    }
    case AtomKind::Builtin: {
      const Scalar& g = a->args[0];
      Scalar inner = g.diff(coordinate);
      if (a->name == "sin") return Scalar::builtin("cos", g) * inner;
      if (a->name == "cos") return -(Scalar::builtin("sin", g) * inner);
      if (a->name == "exp") return Scalar(a) * inner;
      return inner / g;  // ln
    }
  }
  return Scalar();
}

namespace {

Scalar poly_diff(const Polynomial& p, std::string_view coordinate) {
  Scalar out;
  for (Atom a : p.atoms()) {
    if (!depends_on(a, coordinate)) continue;
    out += Scalar::fraction(p.partial(a), one()) * atom_derivative(a, coordinate);
  }
  return out;
}

}  // namespace

Scalar Scalar::diff(std::string_view coordinate) const {
  Scalar dn = poly_diff(rep_->num, coordinate);
  if (rep_->den.is_one()) return dn;
  Scalar dd = poly_diff(rep_->den, coordinate);
  Scalar n = fraction(rep_->num, one());
  Scalar d = fraction(rep_->den, one());
  return (dn * d - n * dd) / (d * d);
}

Scalar evaluate(const Polynomial& p, const std::map<Atom, Scalar>& values) {
  bool polynomial = std::all_of(values.begin(), values.end(),
                                [](const auto& kv) { return kv.second.is_polynomial(); });
  auto image = [&](Atom a) -> Scalar {
    auto it = values.find(a);
    return it == values.end() ? Scalar(a) : it->second;
  };
  if (polynomial) {
    std::vector<Term> terms;
    Polynomial out;
    for (const auto& t : p.terms()) {
      Polynomial prod(t.coefficient);
      for (const auto& [atom, e] : t.monomial.factors())
        prod = prod * image(atom).numerator().pow(e);
      out = out + prod;
    }
    return Scalar::fraction(out, one());
  }
  Scalar out;
  for (const auto& t : p.terms()) {
    Scalar prod(t.coefficient);
    for (const auto& [atom, e] : t.monomial.factors()) prod *= image(atom).pow(static_cast<int>(e));
    out += prod;
  }
  return out;
}

Scalar Scalar::substitute(const std::map<std::string, Scalar, std::less<>>& bindings) const {
  if (bindings.empty()) return *this;
  std::map<Atom, Scalar> images;
  bool changed = false;
  for (Atom a : atoms()) {
    bool touches = std::any_of(a->coordinates.begin(), a->coordinates.end(),
                               [&](const std::string& c) { return bindings.count(c) > 0; });
    if (!touches) continue;
    changed = true;
    switch (a->kind) {
      case AtomKind::Coordinate:
        images.emplace(a, bindings.find(a->name)->second);
        break;
      case AtomKind::Function: {
        std::vector<Scalar> args;
        for (const auto& arg : a->args) args.push_back(arg.substitute(bindings));
        images.emplace(a, Scalar(function_atom(a->name, std::move(args), a->slots)));
        break;
      }
      case AtomKind::Builtin:
        images.emplace(a, builtin(a->name, a->args[0].substitute(bindings)));
        break;
    }
  }
  if (!changed) return *this;
  Scalar n = evaluate(rep_->num, images);
  if (rep_->den.is_one()) return n;
  return n / evaluate(rep_->den, images);
}

std::vector<Atom> Scalar::atoms() const {
  std::vector<Atom> out = rep_->num.atoms();
  if (!rep_->den.is_one()) {
    auto d = rep_->den.atoms();
    out.insert(out.end(), d.begin(), d.end());
    std::sort(out.begin(), out.end(), atom_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::vector<std::string> Scalar::coordinates() const {
  std::vector<std::string> out;
  for (Atom a : atoms()) out.insert(out.end(), a->coordinates.begin(), a->coordinates.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Scalar::str() const {
  const Polynomial& n = rep_->num;
  const Polynomial& d = rep_->den;
  if (d.is_one()) return n.str();
  std::string ns = n.size() > 1 ? "(" + n.str() + ")" : n.str();
  bool bare = d.size() == 1 && d.leading_term().monomial.factors().size() == 1 &&
              d.leading_term().monomial.factors()[0].second == 1;
  return ns + "/" + (bare ? d.str() : "(" + d.str() + ")");
}

}  // namespace eds
