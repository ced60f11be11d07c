#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "eds/domain.hpp"
#include "eds/form.hpp"
#include "eds/scalar.hpp"

namespace eds {

using Row = std::vector<Scalar>;
using Matrix = std::vector<Row>;

struct Echelon {
  Matrix rows;                      // reduced rows, sorted by pivot column
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t cols = 0;
  bool uncertain = false;           // an undecided pivot was assumed nonzero

  std::size_t rank() const { return rows.size(); }
  bool is_pivot(std::size_t c) const;
  std::vector<std::size_t> free_columns() const;
};

// Reduced row echelon form. Pivots: the first column (in column order)
// holding a nonzero rational constant; failing that, the first column with a
// possibly nonzero entry, preferring entries known to be nonzero and then the
// smallest one. Non-constant pivots are reported to the domain. Only the
// first pivot_cols columns are eligible as pivots.
Echelon rref(const Matrix& m, std::size_t cols, const Domain& dom, std::size_t pivot_cols = SIZE_MAX);
std::size_t rank(const Matrix& m, std::size_t cols, const Domain& dom);
// Basis of {v : m v = 0}, one vector per free column.
Matrix nullspace(const Matrix& m, std::size_t cols, const Domain& dom);
Matrix transpose(const Matrix& m, std::size_t cols);
// Some solution x of a x = b, if any (free variables set to 0).
std::optional<Row> solve(const Matrix& a, const Row& b, std::size_t cols, const Domain& dom);

// ---- spans of one-forms

Matrix component_matrix(const std::vector<Form>& forms, std::size_t dim);
std::vector<Form> forms_from_rows(const ChartPtr& chart, const Matrix& rows);

// Reduced basis of the span.
std::vector<Form> span_basis(const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom);
std::size_t span_rank(const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom);
bool in_span(const Form& f, const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom);
bool span_contains(const std::vector<Form>& big, const std::vector<Form>& small,
                   const ChartPtr& chart, const Domain& dom);
bool span_equal(const std::vector<Form>& a, const std::vector<Form>& b, const ChartPtr& chart,
                const Domain& dom);
// Basis of span(a) ∩ span(b).
std::vector<Form> span_intersection(const std::vector<Form>& a, const std::vector<Form>& b,
                                    const ChartPtr& chart, const Domain& dom);

// Coefficients c with f = sum c_i basis_i, when f lies in the span of the
// (independent) basis.
std::optional<Row> coordinates_in(const std::vector<Form>& basis, const Form& f,
                                  const ChartPtr& chart, const Domain& dom);

// Drops coefficients that vanish modulo the equational assumptions.
Form simplify(const Form& f, const Domain& dom);
// Aggregated zero test of every coefficient.
Truth form_is_zero(const Form& f, const Domain& dom);

// Reduction modulo the algebraic ideal generated by independent one-forms:
// each pivot direction of the generators' echelon form is eliminated in
// favour of the remaining coordinate differentials. Throws RankDeficient.
class Reducer {
 public:
  Reducer(const std::vector<Form>& gens, const ChartPtr& chart, const Domain& dom);

  Form reduce(const Form& a) const;
  const Echelon& echelon() const { return echelon_; }
  // Coordinate indices not eliminated, in chart order.
  const std::vector<std::size_t>& free_columns() const { return free_; }

 private:
  ChartPtr chart_;
  const Domain* dom_;
  Echelon echelon_;
  std::vector<std::size_t> free_;
  std::vector<Form> images_;  // image of each d(x^i)
};

Form mod_reduce(const Form& a, const std::vector<Form>& gens, const Domain& dom);

}  // namespace eds
