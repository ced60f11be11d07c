#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "eds/scalar.hpp"

namespace eds {

enum class Truth { Yes, No, Unknown };

const char* to_string(Truth t);

struct Assumption {
  Scalar expr;
  bool nonzero;  // expr != 0 when true, expr == 0 otherwise
  std::string label;
};

// Non-vanishing and equational assumptions. Equations act as rewrite rules
// through their lex leading terms; they are interreduced on insertion.
class AssumptionSet {
 public:
  // Throw ContradictoryAssumption when the new fact clashes with the set.
  void add_nonzero(const Scalar& e, std::string label = "user");
  void add_zero(const Scalar& e, std::string label = "user");

  const std::vector<Assumption>& items() const { return items_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  bool empty() const { return items_.empty(); }

  AssumptionSet merged(const AssumptionSet& other) const;

  // Normal form of a polynomial modulo the relations.
  Polynomial normal_form(const Polynomial& p) const;
  // True when p is a product of assumed-nonzero factors times a constant.
  bool known_nonzero(const Polynomial& p) const;

  // See Domain::is_zero; trials is the number of random evaluations.
  Truth is_zero(const Scalar& e, std::uint64_t seed = 0, int trials = 8) const;

 private:
  void rebuild_relations();
  std::vector<Assumption> items_;
  std::vector<Polynomial> relations_;
  std::vector<Polynomial> nonzero_;
};

Truth is_zero(const Scalar& e, const AssumptionSet& a);

enum class PivotPolicy {
  Assume,  // undecidable pivots become recorded assumptions
  Abort,   // undecidable pivots raise IndeterminateRank
};

// Evaluation context for symbolic linear algebra: assumptions, pivot policy
// and the ledger of genericity assumptions made along the way. The ledger is
// append-only and synchronized; everything else is immutable.
class Domain {
 public:
  explicit Domain(AssumptionSet assumptions = {}, PivotPolicy policy = PivotPolicy::Assume,
                  std::uint64_t seed = 0, int trials = 8);

  const AssumptionSet& assumptions() const { return assumptions_; }
  PivotPolicy policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }

  Truth is_zero(const Scalar& e) const;

  // Called when a non-constant scalar is used as a pivot.
  // Throws IndeterminateRank under the Abort policy if its vanishing is undecided.
  void use_pivot(const Scalar& s, Truth verdict) const;

  // Printed genericity assumptions made so far, in order of first use.
  std::vector<std::string> ledger() const;
  // Scalars whose vanishing could not be decided, in order of first test.
  std::vector<std::string> undecided() const;

 private:
  AssumptionSet assumptions_;
  PivotPolicy policy_;
  std::uint64_t seed_;
  int trials_;
  struct Shared {
    std::mutex mutex;
    std::vector<std::string> ledger;
    std::vector<std::string> undecided;
    std::unordered_map<std::string, bool> seen;
    std::unordered_map<std::size_t, std::vector<std::pair<Scalar, Truth>>> memo;
  };
  std::shared_ptr<Shared> shared_;
};

}  // namespace eds
