#include "eds/atom.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "eds/scalar.hpp"

namespace eds {

namespace {

struct Table {
  std::mutex mutex;
  std::unordered_map<std::string, std::unique_ptr<AtomNode>> nodes;
};

Table& table() {
  // Intentionally leaked: atoms outlive every Scalar, including statics.
  static Table* t = new Table;
  return *t;
}

Atom intern(AtomNode node) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mutex);
  auto it = t.nodes.find(node.key);
  if (it != t.nodes.end()) return it->second.get();
  node.hash = std::hash<std::string>{}(node.key);
  auto owned = std::make_unique<AtomNode>(std::move(node));
  Atom a = owned.get();
  t.nodes.emplace(a->key, std::move(owned));
  return a;
}

std::string join_args(const std::vector<Scalar>& args) {
  std::string s;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) s += ", ";
    s += args[k].str();
  }
  return s;
}

std::vector<std::string> coordinates_of(const std::vector<Scalar>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    auto c = a.coordinates();
    out.insert(out.end(), c.begin(), c.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Atom coordinate_atom(std::string_view name) {
  AtomNode n{};
  n.kind = AtomKind::Coordinate;
  n.name = std::string(name);
  n.key = "0:" + n.name;
  n.text = n.name;
  n.coordinates = {n.name};
  return intern(std::move(n));
}

Atom function_atom(std::string_view name, std::vector<Scalar> args,
                   std::vector<std::uint32_t> slots) {
  std::sort(slots.begin(), slots.end());
  AtomNode n{};
  n.kind = AtomKind::Function;
  n.name = std::string(name);
  n.text = n.name;
  if (!slots.empty()) {
    std::string s = "D[";
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(slots[k]);
    }
    n.text = s + "](" + n.name + ")";
  }
  n.text += "(" + join_args(args) + ")";
  n.key = "1:" + n.text;
  n.coordinates = coordinates_of(args);
  n.args = std::move(args);
  n.slots = std::move(slots);
  return intern(std::move(n));
}

bool is_builtin_function(std::string_view name) {
  return name == "sin" || name == "cos" || name == "exp" || name == "ln";
}

Atom builtin_atom(std::string_view name, const Scalar& arg) {
  AtomNode n{};
  n.kind = AtomKind::Builtin;
  n.name = std::string(name);
  n.text = n.name + "(" + arg.str() + ")";
  n.key = "2:" + n.text;
  n.coordinates = arg.coordinates();
  n.args = {arg};
  return intern(std::move(n));
}

bool depends_on(Atom a, std::string_view coordinate) {
  return std::binary_search(a->coordinates.begin(), a->coordinates.end(), coordinate);
}

}  // namespace eds
