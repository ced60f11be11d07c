#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "eds/dsl.hpp"

#ifndef EDS_SYSTEMS_DIR
#define EDS_SYSTEMS_DIR "systems"
#endif

namespace eds::testing {

inline std::string slurp(const std::string& file) {
  std::ifstream in(std::string(EDS_SYSTEMS_DIR) + "/" + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document load(const std::string& file) { return parse(slurp(file)); }

inline ChartPtr chart(std::vector<std::string> names) {
  return std::make_shared<const Chart>(std::move(names));
}

inline Scalar var(const char* n) { return Scalar::coordinate(n); }

// Builds a one-form from (coefficient, coordinate) pairs via add_term, so
// tests do not depend on the arithmetic operators under test.
inline Form one_form(const ChartPtr& c, std::initializer_list<std::pair<Scalar, const char*>> terms) {
  Form f(c, 1);
  for (const auto& [s, n] : terms) f.add_term({static_cast<std::uint16_t>(c->index(n))}, s);
  return f;
}

inline Form two_form(const ChartPtr& c,
                     std::initializer_list<std::tuple<Scalar, const char*, const char*>> terms) {
  Form f(c, 2);
  for (const auto& [s, a, b] : terms)
    f.add_term({static_cast<std::uint16_t>(c->index(a)), static_cast<std::uint16_t>(c->index(b))}, s);
  return f;
}

}  // namespace eds::testing
