#include "eds/chart.hpp"

#include <algorithm>

#include "eds/error.hpp"

namespace eds {

const char* to_string(Role r) {
  switch (r) {
    case Role::Unspecified: return "unspecified";
    case Role::State: return "state";
    case Role::Control: return "control";
    case Role::Time: return "time";
    case Role::Fiber: return "fiber";
  }
  return "unspecified";
}

Chart::Chart(std::vector<std::string> names, std::string label)
    : label_(std::move(label)), names_(std::move(names)), roles_(names_.size(), Role::Unspecified) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j])
        throw Error(ErrorCode::DuplicateName, "duplicate coordinate " + names_[i]);
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Chart::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::UnknownCoordinate, "unknown coordinate " + std::string(name));
  return *i;
}

std::optional<std::size_t> Chart::time() const {
  for (std::size_t i = 0; i < roles_.size(); ++i)
    if (roles_[i] == Role::Time) return i;
  return std::nullopt;
}

Chart Chart::with_inserted(const std::vector<std::pair<std::size_t, std::string>>& additions,
                           std::string label) const {
  // Stable: additions at the same position keep their given order.
  std::vector<std::pair<std::size_t, std::string>> add = additions;
  std::stable_sort(add.begin(), add.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> names;
  std::vector<Role> roles;
  std::size_t k = 0;
  for (std::size_t i = 0; i <= names_.size(); ++i) {
    while (k < add.size() && add[k].first == i) {
      names.push_back(add[k].second);
      roles.push_back(Role::Fiber);
      ++k;
    }
    if (i < names_.size()) {
      names.push_back(names_[i]);
      roles.push_back(roles_[i]);
    }
  }
  Chart out(std::move(names), std::move(label));
  out.roles_ = std::move(roles);
  return out;
}

std::string fiber_name(const Chart& chart, std::string_view base) {
  std::string b(base);
  std::string candidate;
  auto us = b.rfind('_');
  bool numbered = us != std::string::npos && us + 1 < b.size() &&
                  std::all_of(b.begin() + static_cast<std::ptrdiff_t>(us) + 1, b.end(),
                              [](char c) { return c >= '0' && c <= '9'; });
  std::string stem = numbered ? b.substr(0, us) : b;
  long k = numbered ? std::stol(b.substr(us + 1)) + 1 : 1;
  for (;; ++k) {
    candidate = stem + "_" + std::to_string(k);
    if (!chart.contains(candidate)) return candidate;
  }
}

}  // namespace eds
