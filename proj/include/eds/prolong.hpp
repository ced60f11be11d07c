#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eds/pfaffian.hpp"

namespace eds {

// Supplies names for new fiber coordinates: explicit names first (in order),
// then automatic ones derived from a base name.
class FiberNames {
 public:
  FiberNames() = default;
  explicit FiberNames(std::vector<std::string> explicit_names) : names_(std::move(explicit_names)) {}
  std::string next(const Chart& chart, const std::string& base);

 private:
  std::vector<std::string> names_;
  std::size_t used_ = 0;
};

enum class StepKind { Total, Partial, ByDifferentiation, CartanClaimed };
const char* to_string(StepKind k);

struct ProlongationStep {
  StepKind kind = StepKind::Total;
  PfaffianSystem source;
  PfaffianSystem result;
  std::vector<std::string> fibers;
  std::vector<Form> adjoined;  // on the result chart
  SmoothMap projection;        // result chart -> source chart
};

// Adjoins d(f) - lambda * tau for each function f of the source chart. New
// coordinates go right after f when f is a coordinate, else at the end.
ProlongationStep adjoin_derivatives(const PfaffianSystem& s, const std::vector<Scalar>& fns,
                                    StepKind kind, const Domain& dom, FiberNames* names = nullptr);

ProlongationStep total_prolongation(const PfaffianSystem& s, const Domain& dom,
                                    FiberNames* names = nullptr);

struct PartialProlongation {
  ProlongationStep step;
  SystemReport system;  // systemhood of the result
};
// Adjoins mu - lambda * tau; throws NotIndependent.
PartialProlongation partial_prolongation(const PfaffianSystem& s, const std::vector<Form>& mu,
                                         const Domain& dom, FiberNames* names = nullptr);

// Differentiates the named control coordinates. With require_cts a
// non-control-type input raises NotCTS.
ProlongationStep prolong_by_diff(const PfaffianSystem& s, const std::vector<std::string>& controls,
                                 const Domain& dom, FiberNames* names = nullptr,
                                 bool require_cts = true);

// Pulls a system back along a map (generators and tau).
PfaffianSystem pullback_system(const SmoothMap& pi, const PfaffianSystem& s, const Domain& dom);

// ---- Cartan prolongation checks

struct HatJ {
  std::size_t q = 0;
  std::vector<Form> basis;  // representatives reduced modulo the pulled-back base
};
HatJ hatJ_rank(const SmoothMap& pi, const PfaffianSystem& top, const PfaffianSystem& base,
               const Domain& dom);

struct ProlongationCheck {
  Truth contains_base = Truth::Unknown;  // pi* I in J
  Truth tau_matches = Truth::Unknown;    // pi* tau = sigma
  Truth rank_identity = Truth::Unknown;
  Truth hat_rank_ok = Truth::Unknown;    // rank(hat J) not in {0, m+1}
  std::size_t rank_top = 0, rank_base = 0;
  std::size_t cartan_rank_top = 0, cartan_rank_base = 0;  // effective dimensions
  std::size_t controls = 0;                               // m of the base
  HatJ hat;
  std::vector<std::string> reasons;
  Truth verdict = Truth::Unknown;  // Yes = passes necessary checks
};

ProlongationCheck check_cartan_prolongation(const SmoothMap& pi, const PfaffianSystem& top,
                                            const PfaffianSystem& base, const Domain& dom);

// ---- relative extensions

struct ExtensionStep {
  PfaffianSystem system;
  std::size_t rank = 0;
  std::size_t cartan_rank = 0;
  std::size_t jump = 0;          // rank I_k - rank I_{k-1}
  std::size_t cartan_jump = 0;   // rank C(I_k) - rank C(I_{k-1})
  bool rank_condition = true;    // jump == cartan_jump
  bool total_shaped = false;     // jump equals the control count of I_{k-1}
  Truth cts = Truth::Unknown;    // [[I_k, sigma]] Frobenius
  std::vector<std::string> description;  // base name plus named generators of J, when expressible
};

struct RelativeExtensionChain {
  PfaffianSystem base;  // on its own chart
  PfaffianSystem top;
  SmoothMap pi;
  std::vector<ExtensionStep> steps;  // steps[0] = I_0 = pi* I, ..., steps[K] = I_K
  std::size_t length = 0;            // K
  bool reaches_top = false;          // I_K = J
};

RelativeExtensionChain relative_extensions(const SmoothMap& pi, const PfaffianSystem& top,
                                           const PfaffianSystem& base, const Domain& dom);

bool is_simple(const RelativeExtensionChain& chain);

struct CRegularReport {
  Truth verdict = Truth::Unknown;
  Truth reaches_top = Truth::Unknown;
  std::vector<Truth> sigma_in_cartan;          // per k
  std::vector<Check> systems;                  // per k, effective systemhood
  std::vector<ProlongationCheck> inclusions;   // I_{k-1} in I_k
  std::vector<std::string> reasons;
};

CRegularReport is_c_regular(const RelativeExtensionChain& chain, const Domain& dom);

// Stepwise checks of a user filtration I = F_0 in F_1 in ... in F_L = J,
// each step as a simple Cartan prolongation.
struct FiltrationReport {
  Truth verdict = Truth::Unknown;
  std::vector<ProlongationCheck> steps;
  std::vector<Truth> simple;
  std::vector<std::string> reasons;
};
FiltrationReport check_filtration(const std::vector<PfaffianSystem>& filtration, const Domain& dom);

enum class StepShape { TotalShaped, RankOne, Violation };
const char* to_string(StepShape s);

struct Corank3Report {
  std::size_t corank = 0;  // rank C(I) - rank I of the base
  std::vector<StepShape> shapes;
  Truth verdict = Truth::Unknown;
  std::vector<std::string> reasons;
};
Corank3Report verify_corank3_shape(const RelativeExtensionChain& chain, const Domain& dom);

// ---- Sluis extension

struct SluisState {
  PfaffianSystem top;   // (N_k, J_k)
  PfaffianSystem base;  // (pr^k M, pr^k I)
  SmoothMap pi;         // N_k -> pr^k M
};

struct SluisStage {
  HatJ hat;
  bool case_two = false;
  std::vector<Scalar> differentiated;  // functions whose derivatives were adjoined
  std::vector<Form> adjoined;
  std::vector<std::string> fibers;
  std::vector<Scalar> f;               // Case I functions f^alpha
  SluisState next;
  bool isomorphism = false;
  std::vector<std::string> labels;     // rename hints matching differentiated functions
};

struct RenameHint {
  std::string name;
  Scalar expr;
};

// One Case II (when needed) plus Case I stage. Throws NeedsAssumption when the
// f^alpha cannot be shown functionally independent.
SluisStage sluis_extend_step(const SluisState& state, const Domain& dom, FiberNames* names = nullptr,
                             FiberNames* base_names = nullptr,
                             const std::vector<RenameHint>& hints = {});

// Iterates until the map onto pr^k M is an isomorphism or max_stages is reached.
std::vector<SluisStage> sluis_extend(const SmoothMap& pi, const PfaffianSystem& top,
                                     const PfaffianSystem& base, const Domain& dom,
                                     std::size_t max_stages, FiberNames* names = nullptr,
                                     FiberNames* base_names = nullptr,
                                     const std::vector<RenameHint>& hints = {});

// Describes a system inside top as "base + named generators of top".
std::vector<std::string> describe(const PfaffianSystem& s, const PfaffianSystem& base_pulled,
                                  const std::string& base_name, const PfaffianSystem& top,
                                  const Domain& dom);

}  // namespace eds
