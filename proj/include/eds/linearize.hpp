#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eds/pfaffian.hpp"
#include "eds/prolong.hpp"

namespace eds {

// [[I, tau]] Frobenius.
Truth is_cts(const PfaffianSystem& s, const Domain& dom);

// I^(inf) = 0 and every [[I^(k), tau]] Frobenius.
Truth is_strongly_linear(const PfaffianSystem& s, const Domain& dom);

// Chain lengths r_i of a strongly linear system, descending; sum(r_i + 1) = rank I.
// Throws NotStronglyLinear.
std::vector<std::size_t> brunovsky_indices(const PfaffianSystem& s, const Domain& dom);

// Conditions i-iii for a candidate prolongation I in W, with the J -> J^(1)
// reduction applied while the first relative extension is a rank-2 step.
struct WitnessCheck {
  PfaffianSystem system;          // the witness actually validated (after reductions)
  RelativeExtensionChain chain;
  std::size_t reductions = 0;     // number of J -> J^(1) steps
  Truth strongly_linear = Truth::Unknown;
  Truth c_regular = Truth::Unknown;
  std::vector<Truth> cts;         // per relative extension I_k
  Truth rank_one = Truth::Unknown;
  Truth verdict = Truth::Unknown;
  std::vector<std::string> reasons;
  std::size_t extension_length() const { return chain.length; }
};

WitnessCheck validate_witness(const SmoothMap& pi, const PfaffianSystem& witness,
                              const PfaffianSystem& base, const Domain& dom);

enum class LinVerdict { AlreadyStronglyLinear, LinearizableWithChain, UnknownUpToDepth, NotCTS };
const char* to_string(LinVerdict v);

struct SearchNode {
  PfaffianSystem system;
  SmoothMap pi;                     // node chart -> base chart
  std::vector<std::string> moves;   // differentiated coordinates / hints, in order
};

struct LinearizationReport {
  LinVerdict verdict = LinVerdict::UnknownUpToDepth;
  std::size_t depth = 0;             // depth bound, or depth of the witness
  std::optional<SearchNode> node;    // prolongation that produced the witness
  std::optional<WitnessCheck> witness;
  std::optional<std::size_t> class_upper_bound;
  std::vector<std::size_t> brunovsky;  // of the witness top system
  std::size_t nodes_visited = 0;
  std::vector<std::string> ledger;
};

// Breadth-first search over prolongations by differentiation of single
// control coordinates (and hint functions), up to max_depth differentiations.
LinearizationReport dynlin_search(const PfaffianSystem& s, std::size_t max_depth, const Domain& dom,
                                  const std::vector<Scalar>& hints = {});

// Upper bound on the class; empty when the search is inconclusive.
std::optional<std::size_t> class_upper_bound(const PfaffianSystem& s, std::size_t max_depth,
                                             const Domain& dom);

struct AdaptedCoframing {
  ChartPtr chart;
  std::vector<Form> theta;  // theta^1 .. theta^n
  std::vector<Form> eta;    // eta^1 .. eta^K
  Form omega1, omega2, sigma;
};

struct StructureResidual {
  std::string equation;
  Form residual;  // zero when the congruence holds
};

struct CoframingReport {
  std::size_t coframe_rank = 0;
  Truth spans_system = Truth::Unknown;  // J = [[theta, eta]]
  std::vector<StructureResidual> residuals;
  Truth structure = Truth::Unknown;
  Truth strongly_linear = Truth::Unknown;
  std::optional<std::size_t> class_upper_bound;  // K, when everything holds
  Truth verdict = Truth::Unknown;
};

// Throws RankDeficient when the forms are not a coframe and
// StructureEquationFailure (naming the first failing equation) otherwise;
// report_only returns the full report instead of throwing on residuals.
CoframingReport verify_coframing(const AdaptedCoframing& c, const PfaffianSystem& j, const Domain& dom,
                                 bool report_only = false);

}  // namespace eds
