#include "eds/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace eds {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Atom a, std::uint32_t exponent) {
  if (exponent > 0) factors_.emplace_back(a, exponent);
}

std::uint32_t Monomial::degree_in(Atom a) const {
  for (const auto& [atom, e] : factors_)
    if (atom == a) return e;
  return 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() && j != other.factors_.end()) {
    int c = atom_compare(i->first, j->first);
    if (c == 0) {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    } else if (c < 0) {
      out.factors_.push_back(*i++);
    } else {
      out.factors_.push_back(*j++);
    }
  }
  out.factors_.insert(out.factors_.end(), i, factors_.end());
  out.factors_.insert(out.factors_.end(), j, other.factors_.end());
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  auto j = other.factors_.begin();
  for (const auto& [atom, e] : factors_) {
    while (j != other.factors_.end() && atom_less(j->first, atom)) ++j;
    if (j == other.factors_.end() || j->first != atom || j->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out;
  auto i = factors_.begin();
  for (const auto& [atom, e] : other.factors_) {
    if (i != factors_.end() && i->first == atom) {
      if (e > i->second) out.factors_.emplace_back(atom, e - i->second);
      ++i;
    } else {
      out.factors_.emplace_back(atom, e);
    }
  }
  return out;
}

Monomial Monomial::without(Atom a) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first != a) out.factors_.push_back(f);
  return out;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial out;
  auto j = other.factors_.begin();
  for (const auto& [atom, e] : factors_) {
    while (j != other.factors_.end() && atom_less(j->first, atom)) ++j;
    if (j != other.factors_.end() && j->first == atom)
      out.factors_.emplace_back(atom, std::min(e, j->second));
  }
  return out;
}

int compare(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fa = a.factors_[k];
    const auto& fb = b.factors_[k];
    if (fa.first != fb.first) return atom_less(fa.first, fb.first) ? 1 : -1;
    if (fa.second != fb.second) return fa.second > fb.second ? 1 : -1;
  }
  if (a.factors_.size() == b.factors_.size()) return 0;
  return a.factors_.size() > b.factors_.size() ? 1 : -1;
}

std::string Monomial::str() const {
  std::string s;
  for (const auto& [atom, e] : factors_) {
    if (!s.empty()) s += '*';
    s += atom->text;
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [atom, e] : factors_) {
    h ^= atom->hash + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= e + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const mpq_class& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial::Polynomial(Atom a) { terms_.push_back({Monomial{a}, mpq_class(1)}); }

Polynomial::Polynomial(Monomial m, const mpq_class& c) {
  if (c != 0) terms_.push_back({std::move(m), c});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return compare(a.monomial, b.monomial) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coefficient += t.coefficient;
    } else {
      if (!out.empty() && out.back().coefficient == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coefficient == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coefficient == 1;
}

mpq_class Polynomial::constant_value() const {
  return terms_.empty() ? mpq_class(0) : terms_[0].coefficient;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

namespace {

Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  while (i != a.terms().end() && j != b.terms().end()) {
    int c = compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back({j->monomial, subtract ? mpq_class(-j->coefficient) : j->coefficient});
      ++j;
    } else {
      mpq_class s = subtract ? mpq_class(i->coefficient - j->coefficient)
                             : mpq_class(i->coefficient + j->coefficient);
      if (s != 0) out.push_back({i->monomial, s});
      ++i;
      ++j;
    }
  }
  for (; i != a.terms().end(); ++i) out.push_back(*i);
  for (; j != b.terms().end(); ++j)
    out.push_back({j->monomial, subtract ? mpq_class(-j->coefficient) : j->coefficient});
  // Already sorted and combined.
  return Polynomial::from_terms(std::move(out));
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return merge(*this, o, false);
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (o.is_zero()) return *this;
  return merge(*this, o, true);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_constant()) return *this * o.constant_value();
  if (is_constant()) return o * constant_value();
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      out.push_back({a.monomial * b.monomial, a.coefficient * b.coefficient});
  return from_terms(std::move(out));
}

Polynomial Polynomial::operator*(const mpq_class& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient *= c;
  return p;
}

Polynomial Polynomial::operator*(const Monomial& m) const {
  Polynomial p = *this;
  // Multiplication by a monomial preserves the term order.
  for (auto& t : p.terms_) t.monomial = t.monomial * m;
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].coefficient != b.terms_[k].coefficient) return false;
    if (!(a.terms_[k].monomial == b.terms_[k].monomial)) return false;
  }
  return true;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(mpq_class(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::vector<Atom> Polynomial::atoms() const {
  std::vector<Atom> out;
  for (const auto& t : terms_)
    for (const auto& f : t.monomial.factors()) out.push_back(f.first);
  std::sort(out.begin(), out.end(), atom_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Polynomial::contains(Atom a) const {
  for (const auto& t : terms_)
    if (t.monomial.degree_in(a) > 0) return true;
  return false;
}

std::uint32_t Polynomial::degree_in(Atom a) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree_in(a));
  return d;
}

std::vector<Polynomial> Polynomial::coefficients_in(Atom a) const {
  std::vector<std::vector<Term>> buckets(degree_in(a) + 1);
  for (const auto& t : terms_)
    buckets[t.monomial.degree_in(a)].push_back({t.monomial.without(a), t.coefficient});
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Polynomial Polynomial::from_coefficients(const std::vector<Polynomial>& coeffs, Atom a) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial xk(a, static_cast<std::uint32_t>(k));
    for (const auto& t : coeffs[k].terms_) out.push_back({t.monomial * xk, t.coefficient});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::partial(Atom a) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::uint32_t e = t.monomial.degree_in(a);
    if (e == 0) continue;
    Monomial m = t.monomial.without(a) * Monomial(a, e - 1);
    out.push_back({std::move(m), t.coefficient * e});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return *this * mpq_class(1 / leading_coefficient());
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return {};
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
  }
  mpq_class scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (leading_coefficient() < 0) scale = -scale;
  return *this * scale;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coefficient;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += t.monomial.str();
    }
  }
  return s;
}

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  std::hash<std::string> hs;
  for (const auto& t : terms_) {
    h ^= t.monomial.hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= hs(t.coefficient.get_str()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

// ----------------------------------------------------------- division, gcd

bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient) {
  if (b.is_zero()) throw std::logic_error("polynomial division by zero");
  if (a.is_zero()) {
    quotient = Polynomial();
    return true;
  }
  if (b.is_constant()) {
    quotient = a * mpq_class(1 / b.constant_value());
    return true;
  }
  for (Atom x : b.atoms())
    if (b.degree_in(x) > a.degree_in(x)) return false;
  std::vector<Term> q;
  Polynomial r = a;
  const Term& lb = b.leading_term();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!lb.monomial.divides(lr.monomial)) return false;
    Term t{lb.monomial.quotient_of(lr.monomial), lr.coefficient / lb.coefficient};
    r = r - (b * t.monomial) * t.coefficient;
    q.push_back(std::move(t));
  }
  quotient = Polynomial::from_terms(std::move(q));
  return true;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!try_divide(a, b, q)) throw std::logic_error("inexact polynomial division");
  return q;
}

namespace {

Monomial monomial_content(const Polynomial& p) {
  Monomial m = p.terms().front().monomial;
  for (const auto& t : p.terms()) {
    if (m.is_one()) break;
    m = m.gcd(t.monomial);
  }
  return m;
}

Polynomial divide_monomial(const Polynomial& p, const Monomial& m) {
  if (m.is_one()) return p;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({m.quotient_of(t.monomial), t.coefficient});
  return Polynomial::from_terms(std::move(out));
}

Polynomial content_in(const Polynomial& p, Atom x);

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b);

Polynomial primitive_in(const Polynomial& p, Atom x) {
  return exact_divide(p, content_in(p, x)).primitive();
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Atom x) {
  const std::uint32_t db = b.degree_in(x);
  const Polynomial lcb = b.coefficients_in(x)[db];
  Polynomial r = a;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_in(x);
    if (dr < db) break;
    Polynomial lcr = r.coefficients_in(x)[dr];
    r = (r * lcb - (b * lcr) * Monomial(x, dr - db)).primitive();
  }
  return r;
}

Polynomial prs_gcd(Polynomial a, Polynomial b, Atom x) {
  if (a.degree_in(x) < b.degree_in(x)) std::swap(a, b);
  for (;;) {
    Polynomial r = pseudo_remainder(a, b, x);
    if (r.is_zero()) return primitive_in(b, x).monic();
    if (r.degree_in(x) == 0) return Polynomial(mpq_class(1));
    a = std::move(b);
    b = primitive_in(r, x);
  }
}

Polynomial content_in(const Polynomial& p, Atom x) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(x)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_nonzero(g, c);
    if (g.is_constant()) return Polynomial(mpq_class(1));
  }
  return g;
}

Atom leading_atom(const Polynomial& p) {
  return p.leading_term().monomial.factors().front().first;
}

Polynomial gcd_nonzero(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(mpq_class(1));
  if (a == b) return a.monic();
  const Monomial ma = monomial_content(a);
  const Monomial mb = monomial_content(b);
  const Monomial mg = ma.gcd(mb);
  if (a.size() == 1 || b.size() == 1) return Polynomial(mg, 1);
  Polynomial ra = divide_monomial(a, ma);
  Polynomial rb = divide_monomial(b, mb);
  Polynomial g;
  if (ra.is_constant() || rb.is_constant()) {
    g = Polynomial(mpq_class(1));
  } else {
    Atom xa = leading_atom(ra);
    Atom xb = leading_atom(rb);
    Atom x = atom_less(xb, xa) ? xb : xa;
    if (!ra.contains(x)) {
      g = gcd_nonzero(ra, content_in(rb, x));
    } else if (!rb.contains(x)) {
      g = gcd_nonzero(content_in(ra, x), rb);
    } else {
      Polynomial ca = content_in(ra, x);
      Polynomial cb = content_in(rb, x);
      Polynomial c = gcd_nonzero(ca, cb);
      g = c * prs_gcd(exact_divide(ra, ca), exact_divide(rb, cb), x);
    }
  }
  return (g * mg).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  return gcd_nonzero(a, b);
}

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& divisors) {
  std::vector<Term> remainder;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    bool reduced = false;
    for (const auto& g : divisors) {
      if (g.is_zero()) continue;
      const Term& lg = g.leading_term();
      if (lg.monomial.divides(lt.monomial)) {
        rest = rest - (g * lg.monomial.quotient_of(lt.monomial)) *
                          mpq_class(lt.coefficient / lg.coefficient);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      remainder.push_back(lt);
      rest = rest - Polynomial(lt.monomial, lt.coefficient);
    }
  }
  return Polynomial::from_terms(std::move(remainder));
}

}  // namespace eds
