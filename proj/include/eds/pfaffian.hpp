#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eds/domain.hpp"
#include "eds/form.hpp"
#include "eds/linalg.hpp"

namespace eds {

struct PfaffianSystem {
  std::string name;
  ChartPtr chart;
  std::vector<Form> generators;
  std::vector<std::string> labels;  // optional generator names, parallel to generators
  std::optional<Form> tau;

  std::size_t dim() const { return chart->dim(); }
  std::vector<Form> with_tau() const;
  // Label of generator i, or its printed form.
  std::string label(std::size_t i) const;
};

PfaffianSystem make_system(std::string name, ChartPtr chart, std::vector<Form> generators,
                           std::optional<Form> tau = std::nullopt);
// Same chart and tau, new generators.
PfaffianSystem with_generators(const PfaffianSystem& s, std::vector<Form> generators,
                               std::string name = {});
// Independent generators: the original ones when independent, otherwise a reduced basis.
std::vector<Form> independent_generators(const PfaffianSystem& s, const Domain& dom);

std::size_t rank(const PfaffianSystem& s, const Domain& dom);

PfaffianSystem derived(const PfaffianSystem& s, const Domain& dom);

struct DerivedFlag {
  std::vector<PfaffianSystem> systems;  // I^(0), I^(1), ..., up to and including the fixpoint
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> drops;       // r_k = rank I^(k) - rank I^(k+1)
  std::size_t stabilization = 0;        // first k with I^(k+1) = I^(k)
  const PfaffianSystem& infinite() const { return systems.back(); }
};

DerivedFlag derived_flag(const PfaffianSystem& s, const Domain& dom);
PfaffianSystem infinite_derived(const PfaffianSystem& s, const Domain& dom);

PfaffianSystem cartan_system(const PfaffianSystem& s, const Domain& dom);
std::size_t cartan_rank(const PfaffianSystem& s, const Domain& dom);

Truth is_frobenius(const PfaffianSystem& s, const Domain& dom);
// [[I, tau]] Frobenius; throws MissingIndependence.
Truth is_frobenius_with_tau(const PfaffianSystem& s, const Domain& dom);

enum class Check { Yes, No, Unknown, Unchecked };
const char* to_string(Check c);
Check to_check(Truth t);

struct SystemReport {
  Check no_cauchy_characteristics = Check::Unchecked;  // condition i
  Check tau_exact = Check::Unchecked;                  // condition ii
  Check integral_curves = Check::Unchecked;            // condition iii
  std::size_t cartan_rank = 0;
  std::size_t dim = 0;
  Truth cts = Truth::Unknown;
  std::size_t control_rank = 0;
  std::size_t controls = 0;
  bool accepted() const {
    return no_cauchy_characteristics == Check::Yes && tau_exact == Check::Yes &&
           integral_curves != Check::No;
  }
};

// Rank of the residues d(theta) = beta ^ tau (mod I) of a control-type
// system, counted modulo [[I, tau]]; equals rank(df/du) in coordinates.
std::size_t control_rank(const PfaffianSystem& s, const Domain& dom);

// Throws MissingIndependence when tau is absent.
SystemReport is_system(const PfaffianSystem& s, const Domain& dom);

// Coordinates complementing [[I, tau]] (the controls of a control-type system)
// and the coordinate used for tau. Throws ComplementNotFound.
struct Complement {
  std::vector<std::size_t> controls;
  std::size_t tau_column = 0;
};
Complement complement(const PfaffianSystem& s, const Domain& dom);

struct CartanClassReport {
  bool positive = false;
  std::size_t value = 0;  // class, or rank I^(inf) when class 0
  std::size_t ell = 0;
  std::optional<PfaffianSystem> normal_system;
  DerivedFlag flag;
  std::size_t corank = 0;         // dim M - rank I
  std::size_t cartan_corank = 0;  // rank C(I) - rank I
};

// Throws WrongCorank unless dim M - rank I = 2.
CartanClassReport cartan_class(const PfaffianSystem& s, const Domain& dom);

struct EquivalenceReport {
  Truth systems = Truth::Unknown;          // span(phi* gens) = span(gens)
  Truth tau = Truth::Unknown;              // phi* tau_bar = tau
  Truth derived = Truth::Unknown;          // first derived systems correspond
  Truth diffeomorphism = Truth::Unknown;   // Jacobian has full rank
  bool tau_checked = true;
  Truth verdict = Truth::Unknown;
  std::vector<std::string> notes;
};

// phi maps the chart of s to the chart of target.
EquivalenceReport verify_tau_equivalence(const SmoothMap& phi, const PfaffianSystem& s,
                                         const PfaffianSystem& target, const Domain& dom,
                                         bool check_tau = true);

Truth all_of(std::initializer_list<Truth> ts);

}  // namespace eds
