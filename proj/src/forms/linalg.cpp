#include "eds/linalg.hpp"

#include <algorithm>

#include "eds/error.hpp"

namespace eds {

bool Echelon::is_pivot(std::size_t c) const {
  return std::find(pivots.begin(), pivots.end(), c) != pivots.end();
}

std::vector<std::size_t> Echelon::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

Echelon rref(const Matrix& m, std::size_t cols, const Domain& dom, std::size_t pivot_cols) {
  pivot_cols = std::min(pivot_cols, cols);
  Matrix a = m;
  for (auto& r : a) r.resize(cols);
  const bool relations = !dom.assumptions().relations().empty();
  if (relations)
    for (auto& r : a)
      for (auto& e : r)
        if (!e.is_zero() && !e.is_constant() && dom.is_zero(e) == Truth::Yes) e = Scalar();

  std::vector<bool> row_used(a.size(), false);
  std::vector<bool> col_used(cols, false);
  std::vector<std::pair<std::size_t, std::size_t>> chosen;  // (row, col)
  Echelon out;
  out.cols = cols;

  for (;;) {
    std::size_t prow = a.size(), pcol = cols;
    // constant pivot, first column in order
    for (std::size_t c = 0; c < pivot_cols && pcol == cols; ++c) {
      if (col_used[c]) continue;
      for (std::size_t r = 0; r < a.size(); ++r)
        if (!row_used[r] && a[r][c].is_constant() && !a[r][c].is_zero()) {
          prow = r;
          pcol = c;
          break;
        }
    }
    Truth verdict = Truth::No;
    if (pcol == cols) {
      for (std::size_t c = 0; c < pivot_cols && pcol == cols; ++c) {
        if (col_used[c]) continue;
        std::size_t best = a.size();
        Truth best_t = Truth::Unknown;
        for (std::size_t r = 0; r < a.size(); ++r) {
          if (row_used[r] || a[r][c].is_zero()) continue;
          Truth t = dom.is_zero(a[r][c]);
          if (t == Truth::Yes) continue;
          bool better = best == a.size() || (t == Truth::No && best_t == Truth::Unknown) ||
                        (t == best_t && a[r][c].complexity() < a[best][c].complexity());
          if (better) {
            best = r;
            best_t = t;
          }
        }
        if (best != a.size()) {
          prow = best;
          pcol = c;
          verdict = best_t;
        }
      }
    }
    if (pcol == cols) break;

    Scalar pivot = a[prow][pcol];
    dom.use_pivot(pivot, verdict);
    if (verdict == Truth::Unknown) out.uncertain = true;
    row_used[prow] = true;
    col_used[pcol] = true;
    chosen.emplace_back(prow, pcol);

    if (!(pivot.is_constant() && pivot.constant_value() == 1)) {
      Scalar inv = Scalar(1) / pivot;
      for (std::size_t c = 0; c < cols; ++c)
        if (!a[prow][c].is_zero()) a[prow][c] = c == pcol ? Scalar(1) : a[prow][c] * inv;
    }
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == prow || a[r][pcol].is_zero()) continue;
      Scalar f = a[r][pcol];
      for (std::size_t c = 0; c < cols; ++c) {
        if (a[prow][c].is_zero()) continue;
        a[r][c] = c == pcol ? Scalar() : a[r][c] - f * a[prow][c];
        if (relations && !a[r][c].is_zero() && !a[r][c].is_constant() &&
            dom.is_zero(a[r][c]) == Truth::Yes)
          a[r][c] = Scalar();
      }
    }
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const auto& x, const auto& y) { return x.second < y.second; });
  for (const auto& [r, c] : chosen) {
    out.rows.push_back(a[r]);
    out.pivots.push_back(c);
  }
  return out;
}

std::size_t rank(const Matrix& m, std::size_t cols, const Domain& dom) {
  return rref(m, cols, dom).rank();
}

Matrix nullspace(const Matrix& m, std::size_t cols, const Domain& dom) {
  Echelon e = rref(m, cols, dom);
  Matrix out;
  for (std::size_t f : e.free_columns()) {
    Row v(cols);
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

Matrix transpose(const Matrix& m, std::size_t cols) {
  Matrix t(cols, Row(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols && c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

std::optional<Row> solve(const Matrix& a, const Row& b, std::size_t cols, const Domain& dom) {
  Matrix m = a;
  for (std::size_t r = 0; r < m.size(); ++r) {
    m[r].resize(cols + 1);
    m[r][cols] = -b[r];
  }
  Echelon e = rref(m, cols + 1, dom, cols);
  if (rank(m, cols + 1, dom) != e.rank()) return std::nullopt;
  Row out(cols);
  for (std::size_t r = 0; r < e.rank(); ++r) out[e.pivots[r]] = -e.rows[r][cols];
  return out;
}

Matrix component_matrix(const std::vector<Form>& forms, std::size_t dim) {
  Matrix m;
  m.reserve(forms.size());
  for (const auto& f : forms) {
    if (f.degree() != 1 && !f.is_zero()) throw Error(ErrorCode::DegreeError, "expected one-forms");
    Row r(dim);
    for (const auto& [i, c] : f.terms()) r[i[0]] = c;
    m.push_back(std::move(r));
  }
  return m;
}

std::vector<Form> forms_from_rows(const ChartPtr& chart, const Matrix& rows) {
  std::vector<Form> out;
  for (const auto& r : rows) out.push_back(Form::from_components(chart, r));
  return out;
}

namespace {

void check_charts(const std::vector<Form>& forms, const ChartPtr& chart) {
  for (const auto& f : forms)
    if (f.chart()) require_same_chart(f.chart(), chart);
}

}  // namespace

std::vector<Form> span_basis(const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom) {
  check_charts(forms, chart);
  return forms_from_rows(chart, rref(component_matrix(forms, chart->dim()), chart->dim(), dom).rows);
}

std::size_t span_rank(const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom) {
  check_charts(forms, chart);
  return rank(component_matrix(forms, chart->dim()), chart->dim(), dom);
}

bool in_span(const Form& f, const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom) {
  return span_contains(forms, {f}, chart, dom);
}

bool span_contains(const std::vector<Form>& big, const std::vector<Form>& small,
                   const ChartPtr& chart, const Domain& dom) {
  std::size_t r = span_rank(big, chart, dom);
  std::vector<Form> all = big;
  all.insert(all.end(), small.begin(), small.end());
  return span_rank(all, chart, dom) == r;
}

bool span_equal(const std::vector<Form>& a, const std::vector<Form>& b, const ChartPtr& chart,
                const Domain& dom) {
  std::size_t ra = span_rank(a, chart, dom);
  if (ra != span_rank(b, chart, dom)) return false;
  std::vector<Form> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return span_rank(all, chart, dom) == ra;
}

std::vector<Form> span_intersection(const std::vector<Form>& a, const std::vector<Form>& b,
                                    const ChartPtr& chart, const Domain& dom) {
  std::vector<Form> ba = span_basis(a, chart, dom);
  std::vector<Form> bb = span_basis(b, chart, dom);
  if (ba.empty() || bb.empty()) return {};
  const std::size_t n = chart->dim();
  // Columns: coefficients of ba then of bb; rows: coordinates.
  Matrix m(n, Row(ba.size() + bb.size()));
  for (std::size_t j = 0; j < ba.size(); ++j) {
    auto c = ba[j].components();
    for (std::size_t i = 0; i < n; ++i) m[i][j] = c[i];
  }
  for (std::size_t j = 0; j < bb.size(); ++j) {
    auto c = bb[j].components();
    for (std::size_t i = 0; i < n; ++i) m[i][ba.size() + j] = -c[i];
  }
  Matrix ker = nullspace(m, ba.size() + bb.size(), dom);
  std::vector<Form> common;
  for (const auto& v : ker) {
    Form f(chart, 1);
    for (std::size_t j = 0; j < ba.size(); ++j)
      if (!v[j].is_zero()) f += v[j] * ba[j];
    common.push_back(f);
  }
  return span_basis(common, chart, dom);
}

std::optional<Row> coordinates_in(const std::vector<Form>& basis, const Form& f,
                                  const ChartPtr& chart, const Domain& dom) {
  const std::size_t n = chart->dim();
  Matrix m(n, Row(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto c = transport(basis[j], chart).components();
    for (std::size_t i = 0; i < n; ++i) m[i][j] = c[i];
  }
  return solve(m, transport(f, chart).components(), basis.size(), dom);
}

Form simplify(const Form& f, const Domain& dom) {
  if (dom.assumptions().relations().empty()) return f;
  return f.map_coefficients([&](const Scalar& c) {
    return (!c.is_constant() && dom.is_zero(c) == Truth::Yes) ? Scalar() : c;
  });
}

Truth form_is_zero(const Form& f, const Domain& dom) {
  Truth out = Truth::Yes;
  for (const auto& [i, c] : f.terms()) {
    Truth t = dom.is_zero(c);
    if (t == Truth::No) return Truth::No;
    if (t == Truth::Unknown) out = Truth::Unknown;
  }
  return out;
}

Reducer::Reducer(const std::vector<Form>& gens, const ChartPtr& chart, const Domain& dom)
    : chart_(chart), dom_(&dom) {
  check_charts(gens, chart);
  echelon_ = rref(component_matrix(gens, chart->dim()), chart->dim(), dom);
  if (echelon_.rank() != gens.size())
    throw Error(ErrorCode::RankDeficient, "generators are linearly dependent (rank " +
                                              std::to_string(echelon_.rank()) + " < " +
                                              std::to_string(gens.size()) + ")");
  free_ = echelon_.free_columns();
  images_.resize(chart->dim());
  for (std::size_t i = 0; i < chart->dim(); ++i) images_[i] = Form::basis(chart, i);
  for (std::size_t r = 0; r < echelon_.rank(); ++r) {
    Form img(chart, 1);
    for (std::size_t j : free_) {
      const Scalar& c = echelon_.rows[r][j];
      if (!c.is_zero()) img += (-c) * Form::basis(chart, j);
    }
    images_[echelon_.pivots[r]] = img;
  }
}

Form Reducer::reduce(const Form& a) const {
  require_same_chart(a.chart(), chart_);
  Form out(chart_, a.degree());
  for (const auto& [i, c] : a.terms()) {
    bool plain = std::all_of(i.begin(), i.end(), [&](std::uint16_t k) { return !echelon_.is_pivot(k); });
    if (plain) {
      Form t(chart_, a.degree());
      t.add_term(i, c);
      out += t;
      continue;
    }
    Form term = Form::function(chart_, c);
    for (auto k : i) {
      term = wedge(term, images_[k]);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return simplify(out, *dom_);
}

Form mod_reduce(const Form& a, const std::vector<Form>& gens, const Domain& dom) {
  return Reducer(gens, a.chart(), dom).reduce(a);
}

}  // namespace eds
