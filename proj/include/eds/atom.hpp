#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eds {

class Scalar;

enum class AtomKind : std::uint8_t {
  Coordinate,
  Function,  // formal function symbol applied to arguments, possibly differentiated
  Builtin,   // sin, cos, exp, ln
};

// Interned indeterminate of the coefficient ring. Atoms are never destroyed and
// identical atoms share one node, so pointer equality is atom equality.
struct AtomNode {
  AtomKind kind;
  std::string name;
  std::vector<Scalar> args;
  // Formal partial derivative slots (argument positions), sorted ascending.
  std::vector<std::uint32_t> slots;
  // Total-order key; coordinates sort before function applications.
  std::string key;
  // Printed form, parseable by the DSL.
  std::string text;
  // Coordinates this atom depends on, sorted.
  std::vector<std::string> coordinates;
  std::size_t hash;
};

using Atom = const AtomNode*;

Atom coordinate_atom(std::string_view name);
Atom function_atom(std::string_view name, std::vector<Scalar> args,
                   std::vector<std::uint32_t> slots = {});
Atom builtin_atom(std::string_view name, const Scalar& arg);

bool is_builtin_function(std::string_view name);

inline bool atom_less(Atom a, Atom b) { return a != b && a->key < b->key; }

inline int atom_compare(Atom a, Atom b) {
  if (a == b) return 0;
  return a->key < b->key ? -1 : 1;
}

bool depends_on(Atom a, std::string_view coordinate);

}  // namespace eds
