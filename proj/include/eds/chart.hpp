#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eds {

enum class Role { Unspecified, State, Control, Time, Fiber };

const char* to_string(Role r);

// Ordered coordinate names of a local chart.
class Chart {
 public:
  Chart() = default;
  // Throws DuplicateName on repeated names.
  explicit Chart(std::vector<std::string> names, std::string label = {});

  const std::string& label() const { return label_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  // Throws UnknownCoordinate.
  std::size_t index(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  Role role(std::size_t i) const { return roles_[i]; }
  void set_role(std::size_t i, Role r) { roles_[i] = r; }
  std::optional<std::size_t> time() const;

  // A chart with coordinates inserted; each entry is (position, name).
  Chart with_inserted(const std::vector<std::pair<std::size_t, std::string>>& additions,
                      std::string label = {}) const;

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::vector<Role> roles_;
};

using ChartPtr = std::shared_ptr<const Chart>;

// Next fiber coordinate name: a trailing _k is incremented, otherwise _1 is
// appended; falls back to further suffixes until unused in the chart.
std::string fiber_name(const Chart& chart, std::string_view base);

}  // namespace eds
