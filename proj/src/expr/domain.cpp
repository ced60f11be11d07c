#include "eds/domain.hpp"

#include <algorithm>
#include <random>

#include "eds/error.hpp"

namespace eds {

const char* to_string(Truth t) {
  switch (t) {
    case Truth::Yes: return "yes";
    case Truth::No: return "no";
    case Truth::Unknown: return "unknown";
  }
  return "unknown";
}

void AssumptionSet::add_nonzero(const Scalar& e, std::string label) {
  if (is_zero(e) == Truth::Yes)
    throw Error(ErrorCode::ContradictoryAssumption,
                "assumption " + e.str() + " != 0 contradicts the assumption set");
  items_.push_back({e, true, std::move(label)});
  rebuild_relations();
}

void AssumptionSet::add_zero(const Scalar& e, std::string label) {
  if (e.is_constant() && !e.is_zero())
    throw Error(ErrorCode::ContradictoryAssumption, "assumption " + e.str() + " = 0 is false");
  AssumptionSet trial = *this;
  trial.items_.push_back({e, false, label});
  trial.rebuild_relations();
  for (const auto& a : items_)
    if (a.nonzero && trial.is_zero(a.expr) == Truth::Yes)
      throw Error(ErrorCode::ContradictoryAssumption,
                  "assumption " + e.str() + " = 0 forces " + a.expr.str() + " = 0");
  *this = std::move(trial);
}

AssumptionSet AssumptionSet::merged(const AssumptionSet& other) const {
  AssumptionSet out = *this;
  for (const auto& a : other.items_) {
    bool dup = std::any_of(out.items_.begin(), out.items_.end(), [&](const Assumption& b) {
      return b.nonzero == a.nonzero && b.expr == a.expr;
    });
    if (dup) continue;
    if (a.nonzero)
      out.add_nonzero(a.expr, a.label);
    else
      out.add_zero(a.expr, a.label);
  }
  return out;
}

void AssumptionSet::rebuild_relations() {
  relations_.clear();
  nonzero_.clear();
  for (const auto& a : items_) {
    Polynomial p = a.expr.numerator().primitive().monic();
    if (a.nonzero) {
      if (!p.is_constant()) nonzero_.push_back(p);
    } else if (!p.is_zero()) {
      relations_.push_back(p);
    }
  }
  // Interreduce until no relation's terms are reducible by another's leading term.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      std::vector<Polynomial> others;
      for (std::size_t j = 0; j < relations_.size(); ++j)
        if (j != i) others.push_back(relations_[j]);
      Polynomial r = reduce(relations_[i], others);
      if (r != relations_[i]) {
        changed = true;
        if (r.is_zero()) {
          relations_.erase(relations_.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          if (r.is_constant())
            throw Error(ErrorCode::ContradictoryAssumption, "equational assumptions are inconsistent");
          relations_[i] = r.monic();
        }
        break;
      }
    }
  }
}

Polynomial AssumptionSet::normal_form(const Polynomial& p) const {
  if (relations_.empty()) return p;
  return reduce(p, relations_);
}

bool AssumptionSet::known_nonzero(const Polynomial& p) const {
  if (p.is_zero()) return false;
  Polynomial q = p;
  bool progress = true;
  while (progress && !q.is_constant()) {
    progress = false;
    for (const auto& f : nonzero_) {
      Polynomial quo;
      if (try_divide(q, f, quo)) {
        q = quo;
        progress = true;
      }
    }
  }
  return q.is_constant();
}

Truth AssumptionSet::is_zero(const Scalar& e, std::uint64_t seed, int trials) const {
  if (e.is_zero()) return Truth::Yes;
  const Polynomial& p = e.numerator();
  if (p.is_constant()) return Truth::No;
  Polynomial r = normal_form(p);
  if (r.is_zero()) return Truth::Yes;
  if (r.is_constant()) return Truth::No;

  std::vector<Atom> atoms = r.atoms();
  std::vector<Atom> uncovered;
  for (Atom a : atoms) {
    if (a->kind != AtomKind::Builtin) continue;
    bool covered = std::any_of(relations_.begin(), relations_.end(),
                               [&](const Polynomial& rel) { return rel.contains(a); });
    if (!covered) uncovered.push_back(a);
  }
  bool nested = false;
  for (Atom a : uncovered)
    for (const auto& arg : a->args)
      for (Atom b : arg.atoms())
        if (b->kind == AtomKind::Builtin) nested = true;

  // With at most one transcendental atom over an otherwise free polynomial
  // ring (or all of them tied down by relations) a nonzero normal form is a
  // nonzero function.
  if (uncovered.size() <= 1 && !nested) {
    if (trials > 0) {
      std::mt19937_64 rng(e.hash() ^ (seed * 0x9e3779b97f4a7c15ull));
      std::uniform_int_distribution<long> num(-97, 97);
      std::uniform_int_distribution<long> den(1, 13);
      for (int k = 0; k < trials; ++k) {
        std::map<Atom, mpq_class> point;
        for (Atom a : atoms) point[a] = mpq_class(num(rng), den(rng));
        mpq_class v = 0;
        for (const auto& t : r.terms()) {
          mpq_class m = t.coefficient;
          for (const auto& [a, x] : t.monomial.factors()) {
            mpq_class pw = 1;
            for (std::uint32_t i = 0; i < x; ++i) pw *= point[a];
            m *= pw;
          }
          v += m;
        }
        if (v != 0) return Truth::No;
      }
    }
    return Truth::No;
  }
  if (known_nonzero(r)) return Truth::No;
  return Truth::Unknown;
}

Truth is_zero(const Scalar& e, const AssumptionSet& a) { return a.is_zero(e); }

Domain::Domain(AssumptionSet assumptions, PivotPolicy policy, std::uint64_t seed, int trials)
    : assumptions_(std::move(assumptions)),
      policy_(policy),
      seed_(seed),
      trials_(trials),
      shared_(std::make_shared<Shared>()) {}

Truth Domain::is_zero(const Scalar& e) const {
  if (e.is_zero()) return Truth::Yes;
  if (e.is_constant()) return Truth::No;
  {
    std::lock_guard<std::mutex> lock(shared_->mutex);
    auto it = shared_->memo.find(e.hash());
    if (it != shared_->memo.end())
      for (const auto& [s, t] : it->second)
        if (s == e) return t;
  }
  Truth t = assumptions_.is_zero(e, seed_, trials_);
  std::lock_guard<std::mutex> lock(shared_->mutex);
  shared_->memo[e.hash()].emplace_back(e, t);
  if (t == Truth::Unknown) {
    std::string text = e.str();
    if (shared_->seen.emplace("?" + text, true).second) shared_->undecided.push_back(text);
  }
  return t;
}

void Domain::use_pivot(const Scalar& s, Truth verdict) const {
  if (s.is_constant()) return;
  if (verdict == Truth::Unknown && policy_ == PivotPolicy::Abort) throw IndeterminateRank(s.str());
  Polynomial n = s.numerator().primitive();
  if (assumptions_.known_nonzero(n)) return;
  std::string text = n.str() + " != 0";
  std::lock_guard<std::mutex> lock(shared_->mutex);
  if (shared_->seen.emplace(text, true).second) shared_->ledger.push_back(text);
}

std::vector<std::string> Domain::ledger() const {
  std::lock_guard<std::mutex> lock(shared_->mutex);
  return shared_->ledger;
}

std::vector<std::string> Domain::undecided() const {
  std::lock_guard<std::mutex> lock(shared_->mutex);
  return shared_->undecided;
}

}  // namespace eds
