#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "eds/error.hpp"
#include "eds/pfaffian.hpp"
#include "eds/prolong.hpp"

namespace eds {

// Diagnostic with a 1-based source position and the tokens that would have
// been accepted there (empty for semantic errors).
class ParseFailure : public Error {
 public:
  ParseFailure(ErrorCode code, std::size_t line, std::size_t column, std::size_t length,
               const std::string& message, std::vector<std::string> expected = {});
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t length() const { return length_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_, column_, length_;
  std::string message_;
  std::vector<std::string> expected_;
};

struct AssumeStatement {
  Scalar lhs, rhs;
  bool nonzero = true;
};

struct CoframeDecl {
  std::string name;
  std::string system;
  std::vector<std::string> labels;
  std::vector<Form> forms;
};

struct FiltrationDecl {
  std::string name;
  std::vector<std::string> systems;
};

struct Document {
  std::vector<std::pair<std::string, ChartPtr>> charts;
  std::vector<AssumeStatement> assumes;
  AssumptionSet assumptions;
  std::vector<PfaffianSystem> systems;
  std::vector<std::string> system_charts;  // chart name per system
  std::vector<SmoothMap> maps;
  std::vector<std::pair<std::string, std::string>> map_ends;  // declared source and target names
  std::vector<RenameHint> renames;
  std::vector<CoframeDecl> coframes;
  std::vector<FiltrationDecl> filtrations;

  // All lookups throw UnknownName.
  ChartPtr chart(std::string_view name) const;
  const PfaffianSystem& system(std::string_view name) const;
  const SmoothMap& map(std::string_view name) const;
  const CoframeDecl& coframe(std::string_view name) const;
  const FiltrationDecl& filtration(std::string_view name) const;
  // Chart named directly, or the chart of the named system.
  ChartPtr chart_or_system(std::string_view name) const;
};

Document parse(std::string_view text);
// Canonical source text; parse(print(parse(t))) reproduces parse(t).
std::string print(const Document& doc);

// Single expressions against a chart (used for command-line arguments).
Scalar parse_scalar(std::string_view text, const ChartPtr& chart);
Form parse_form(std::string_view text, const ChartPtr& chart);

}  // namespace eds
