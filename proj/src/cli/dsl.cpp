#include "eds/dsl.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace eds {

ParseFailure::ParseFailure(ErrorCode code, std::size_t line, std::size_t column, std::size_t length,
                           const std::string& message, std::vector<std::string> expected)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      length_(length),
      message_(message),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Punct, {}, line, col};
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
    } else if ((c == '-' && i + 1 < src.size() && src[i + 1] == '>') ||
               (c == '!' && i + 1 < src.size() && src[i + 1] == '=')) {
      j = i + 2;
    } else if (std::string_view("{}()[];,=+-*/^:").find(c) != std::string_view::npos) {
      j = i + 1;
    } else {
      throw ParseFailure(ErrorCode::ParseError, line, col, 1,
                         std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// Parsed value: a function, or a form when `form` is set.
struct Value {
  Scalar s;
  std::optional<Form> form;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Document document() {
    while (peek().kind != Tok::End) statement();
    return std::move(doc_);
  }

  // Expression entry points for single-expression parsing.
  Value lone(const ChartPtr& chart) {
    scope_ = chart.get();
    form_chart_ = chart;
    Value v = sum();
    if (peek().kind != Tok::End) fail_expected({"end of input", "+", "-", "*", "/", "^"});
    return v;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document doc_;
  std::vector<std::shared_ptr<Chart>> mutable_charts_;
  std::size_t anonymous_ = 0;
  const Chart* scope_ = nullptr;  // coordinates allowed in expressions; null = any declared
  ChartPtr form_chart_;           // chart for d(...), null when forms are not allowed
  bool free_idents_ = false;      // rename hints may name coordinates introduced later

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(std::string_view p) const { return peek().kind != Tok::End && peek().kind != Tok::Number && peek().text == p; }
  bool accept(std::string_view p) {
    if (peek().kind == Tok::Punct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    std::string msg = "unexpected " + got + ", expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) msg += (k ? " | " : "") + expected[k];
    throw ParseFailure(ErrorCode::ParseError, t.line, t.col, std::max<std::size_t>(1, t.text.size()), msg,
                       std::move(expected));
  }
  [[noreturn]] static void fail_at(const Token& t, ErrorCode code, const std::string& msg) {
    throw ParseFailure(code, t.line, t.col, std::max<std::size_t>(1, t.text.size()), msg);
  }

  void expect(std::string_view p) {
    if (!accept(p)) fail_expected({"'" + std::string(p) + "'"});
  }
  const Token& ident() {
    if (peek().kind != Tok::Ident) fail_expected({"identifier"});
    return take();
  }

  void statement() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "chart") return chart_stmt();
      if (t.text == "assume") return assume_stmt();
      if (t.text == "system") return system_stmt();
      if (t.text == "map") return map_stmt();
      if (t.text == "rename") return rename_stmt();
      if (t.text == "coframe") return coframe_stmt();
      if (t.text == "filtration") return filtration_stmt();
    }
    fail_expected({"chart", "assume", "system", "map", "rename", "coframe", "filtration"});
  }

  bool name_taken(const std::string& n) const {
    for (const auto& c : doc_.charts)
      if (c.first == n) return true;
    for (const auto& s : doc_.systems)
      if (s.name == n) return true;
    for (const auto& m : doc_.maps)
      if (m.name == n) return true;
    for (const auto& c : doc_.coframes)
      if (c.name == n) return true;
    for (const auto& f : doc_.filtrations)
      if (f.name == n) return true;
    return false;
  }
  void claim(const Token& t) {
    if (name_taken(t.text)) fail_at(t, ErrorCode::DuplicateName, "name '" + t.text + "' already declared");
  }

  void chart_stmt() {
    take();
    std::string name;
    std::vector<std::string> coords;
    const Token* first = &ident();
    if (accept(":")) {
      claim(*first);
      name = first->text;
    } else {
      coords.push_back(first->text);
    }
    std::set<std::string> seen(coords.begin(), coords.end());
    while (peek().kind == Tok::Ident) {
      const Token& c = take();
      if (!seen.insert(c.text).second) fail_at(c, ErrorCode::DuplicateName, "coordinate '" + c.text + "' repeated");
      coords.push_back(c.text);
    }
    if (coords.empty()) fail_expected({"identifier"});
    expect(";");
    if (name.empty()) {
      do name = "C" + std::to_string(++anonymous_);
      while (name_taken(name));
    }
    auto chart = std::make_shared<Chart>(coords, name);
    mutable_charts_.push_back(chart);
    doc_.charts.emplace_back(name, chart);
  }

  std::size_t chart_slot(const Token& t) const {
    for (std::size_t k = 0; k < doc_.charts.size(); ++k)
      if (doc_.charts[k].first == t.text) return k;
    for (std::size_t k = 0; k < doc_.systems.size(); ++k)
      if (doc_.systems[k].name == t.text) return chart_slot_by_name(doc_.system_charts[k]);
    fail_at(t, ErrorCode::UnknownName, "unknown chart or system '" + t.text + "'");
  }
  std::size_t chart_slot_by_name(const std::string& n) const {
    for (std::size_t k = 0; k < doc_.charts.size(); ++k)
      if (doc_.charts[k].first == n) return k;
    return 0;
  }

  void assume_stmt() {
    take();
    scope_ = nullptr;
    form_chart_ = nullptr;
    const Token& at_tok = peek();
    Scalar lhs = scalar_expr();
    bool nonzero;
    if (accept("!="))
      nonzero = true;
    else if (accept("="))
      nonzero = false;
    else
      fail_expected({"'='", "'!='", "operator"});
    Scalar rhs = scalar_expr();
    expect(";");
    try {
      if (nonzero)
        doc_.assumptions.add_nonzero(lhs - rhs, "user");
      else
        doc_.assumptions.add_zero(lhs - rhs, "user");
    } catch (const Error& e) {
      fail_at(at_tok, e.code(), e.what());
    }
    doc_.assumes.push_back({lhs, rhs, nonzero});
  }

  void system_stmt() {
    take();
    const Token& n = ident();
    claim(n);
    std::size_t slot;
    if (peek().kind == Tok::Ident && peek().text == "on") {
      take();
      slot = chart_slot(ident());
    } else {
      if (doc_.charts.empty()) fail_at(n, ErrorCode::UnknownName, "no chart declared before system '" + n.text + "'");
      slot = doc_.charts.size() - 1;
    }
    ChartPtr chart = doc_.charts[slot].second;
    scope_ = chart.get();
    form_chart_ = chart;
    expect("{");
    std::vector<Form> gens;
    std::vector<std::string> labels;
    do {
      const Token& l = ident();
      for (const auto& x : labels)
        if (x == l.text) fail_at(l, ErrorCode::DuplicateName, "generator label '" + l.text + "' repeated");
      labels.push_back(l.text);
      expect("=");
      gens.push_back(one_form());
      expect(";");
    } while (peek().kind == Tok::Ident);
    expect("}");
    std::optional<Form> tau;
    if (peek().kind == Tok::Ident && peek().text == "indep") {
      take();
      tau = one_form();
      auto comps = tau->components();
      std::size_t nz = 0, last = 0;
      for (std::size_t k = 0; k < comps.size(); ++k)
        if (!comps[k].is_zero()) ++nz, last = k;
      if (nz == 1 && comps[last] == Scalar(1)) mutable_charts_[slot]->set_role(last, Role::Time);
    }
    expect(";");
    PfaffianSystem s = make_system(n.text, chart, gens, tau);
    s.labels = labels;
    doc_.systems.push_back(std::move(s));
    doc_.system_charts.push_back(doc_.charts[slot].first);
  }

  void map_stmt() {
    take();
    const Token& n = ident();
    claim(n);
    expect(":");
    const Token& src = ident();
    std::size_t s = chart_slot(src);
    expect("->");
    const Token& dst = ident();
    std::size_t t = chart_slot(dst);
    ChartPtr source = doc_.charts[s].second, target = doc_.charts[t].second;
    scope_ = source.get();
    form_chart_ = nullptr;
    expect("{");
    std::vector<std::optional<Scalar>> images(target->dim());
    while (peek().kind == Tok::Ident) {
      const Token& c = take();
      auto k = target->find(c.text);
      if (!k) fail_at(c, ErrorCode::UnknownCoordinate, "'" + c.text + "' is not a coordinate of " + dst.text);
      if (images[*k]) fail_at(c, ErrorCode::DuplicateName, "image of '" + c.text + "' given twice");
      expect("=");
      images[*k] = scalar_expr();
      expect(";");
    }
    expect("}");
    accept(";");
    SmoothMap m;
    m.name = n.text;
    m.source = source;
    m.target = target;
    for (std::size_t k = 0; k < images.size(); ++k) {
      if (images[k]) {
        m.images.push_back(*images[k]);
      } else if (source->contains(target->name(k))) {
        m.images.push_back(Scalar::coordinate(target->name(k)));
      } else {
        fail_at(n, ErrorCode::UnknownCoordinate, "map '" + n.text + "' gives no image for '" + target->name(k) + "'");
      }
    }
    doc_.maps.push_back(std::move(m));
    doc_.map_ends.emplace_back(src.text, dst.text);
  }

  void rename_stmt() {
    take();
    const Token& n = ident();
    expect("=");
    scope_ = nullptr;
    form_chart_ = nullptr;
    free_idents_ = true;
    Scalar e = scalar_expr();
    free_idents_ = false;
    expect(";");
    doc_.renames.push_back({n.text, e});
  }

  void coframe_stmt() {
    take();
    const Token& n = ident();
    claim(n);
    expect(":");
    const Token& sys = ident();
    const PfaffianSystem* s = nullptr;
    for (const auto& x : doc_.systems)
      if (x.name == sys.text) s = &x;
    if (!s) fail_at(sys, ErrorCode::UnknownName, "unknown system '" + sys.text + "'");
    scope_ = s->chart.get();
    form_chart_ = s->chart;
    CoframeDecl c{n.text, sys.text, {}, {}};
    expect("{");
    while (peek().kind == Tok::Ident) {
      c.labels.push_back(take().text);
      expect("=");
      c.forms.push_back(one_form());
      expect(";");
    }
    expect("}");
    accept(";");
    doc_.coframes.push_back(std::move(c));
  }

  void filtration_stmt() {
    take();
    const Token& n = ident();
    claim(n);
    expect("=");
    FiltrationDecl f{n.text, {}};
    do {
      const Token& s = ident();
      bool found = false;
      for (const auto& x : doc_.systems) found = found || x.name == s.text;
      if (!found) fail_at(s, ErrorCode::UnknownName, "unknown system '" + s.text + "'");
      f.systems.push_back(s.text);
    } while (accept(","));
    expect(";");
    doc_.filtrations.push_back(std::move(f));
  }

  // ---- expressions

  Scalar scalar_expr() {
    const Token& t = peek();
    Value v = sum();
    if (v.form) fail_at(t, ErrorCode::DegreeError, "expected a function, found a form");
    return v.s;
  }
  Form one_form() {
    const Token& t = peek();
    Value v = sum();
    if (!v.form) {
      if (!v.s.is_zero()) fail_at(t, ErrorCode::DegreeError, "expected a 1-form, found a function");
      return Form(form_chart_, 1);
    }
    if (v.form->degree() != 1 && !v.form->is_zero())
      fail_at(t, ErrorCode::DegreeError, "expected a 1-form, found a " + std::to_string(v.form->degree()) + "-form");
    if (v.form->is_zero()) return Form(form_chart_, 1);
    return *v.form;
  }

  Value combine_add(const Token& t, Value a, Value b, bool minus) {
    if (minus) b = negate(b);
    if (a.form && b.form) {
      if (a.form->degree() != b.form->degree() && !a.form->is_zero() && !b.form->is_zero())
        fail_at(t, ErrorCode::DegreeError, "cannot add forms of different degree");
      if (a.form->is_zero()) return b;
      if (b.form->is_zero()) return a;
      return {Scalar(), *a.form + *b.form};
    }
    if (a.form || b.form) {
      const Value& f = a.form ? a : b;
      const Value& s = a.form ? b : a;
      if (s.s.is_zero()) return f;
      fail_at(t, ErrorCode::DegreeError, "cannot add a function and a form");
    }
    return {a.s + b.s, std::nullopt};
  }
  static Value negate(const Value& v) {
    if (v.form) return {Scalar(), -*v.form};
    return {-v.s, std::nullopt};
  }

  Value sum() {
    Value v = product();
    while (at("+") || at("-")) {
      const Token& op = take();
      Value r = product();
      v = combine_add(op, v, r, op.text == "-");
    }
    return v;
  }

  Value product() {
    Value v = unary();
    while (at("*") || at("/")) {
      const Token& op = take();
      Value r = unary();
      if (op.text == "*") {
        if (v.form && r.form) fail_at(op, ErrorCode::DegreeError, "use '^' for the wedge product");
        if (v.form)
          v = {Scalar(), r.s * *v.form};
        else if (r.form)
          v = {Scalar(), v.s * *r.form};
        else
          v.s = v.s * r.s;
      } else {
        if (r.form) fail_at(op, ErrorCode::DegreeError, "cannot divide by a form");
        try {
          if (v.form)
            v = {Scalar(), (Scalar(1) / r.s) * *v.form};
          else
            v.s = v.s / r.s;
        } catch (const Error& e) {
          fail_at(op, e.code(), e.what());
        }
      }
    }
    return v;
  }

  Value unary() {
    if (accept("-")) return negate(unary());
    if (accept("+")) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (at("^")) {
      const Token& op = take();
      Value e = unary();
      if (base.form || e.form) {
        if (!base.form || !e.form) fail_at(op, ErrorCode::DegreeError, "'^' between a function and a form");
        return {Scalar(), wedge(*base.form, *e.form)};
      }
      if (!e.s.is_constant() || e.s.constant_value().get_den() != 1)
        fail_at(op, ErrorCode::ParseError, "exponent must be an integer");
      mpz_class k = e.s.constant_value().get_num();
      if (!k.fits_sint_p() || abs(k) > 1000) fail_at(op, ErrorCode::ParseError, "exponent out of range");
      try {
        return {base.s.pow(static_cast<int>(k.get_si())), std::nullopt};
      } catch (const Error& er) {
        fail_at(op, er.code(), er.what());
      }
    }
    return base;
  }

  std::vector<Scalar> arguments() {
    std::vector<Scalar> args;
    expect("(");
    if (!at(")")) {
      do args.push_back(scalar_expr());
      while (accept(","));
    }
    expect(")");
    return args;
  }

  bool coordinate_known(const std::string& n) const {
    if (free_idents_) return true;
    if (scope_) return scope_->contains(n);
    for (const auto& c : doc_.charts)
      if (c.second->contains(n)) return true;
    return false;
  }

  Value atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      take();
      return {Scalar(mpq_class(mpz_class(t.text))), std::nullopt};
    }
    if (accept("(")) {
      Value v = sum();
      expect(")");
      return v;
    }
    if (t.kind == Tok::Ident) {
      take();
      if (t.text == "d" && at("(")) {
        if (!form_chart_) fail_at(t, ErrorCode::DegreeError, "forms are not allowed here");
        expect("(");
        const Token& inner = peek();
        Value v = sum();
        expect(")");
        if (v.form) fail_at(inner, ErrorCode::DegreeError, "d(...) takes a function");
        return {Scalar(), ext_d(Form::function(form_chart_, v.s))};
      }
      if (t.text == "D" && at("[")) {
        take();
        std::vector<std::uint32_t> slots;
        do {
          if (peek().kind != Tok::Number) fail_expected({"argument index"});
          slots.push_back(static_cast<std::uint32_t>(std::stoul(take().text)));
        } while (accept(","));
        expect("]");
        expect("(");
        const Token& fn = ident();
        expect(")");
        std::vector<Scalar> args = arguments();
        for (auto sl : slots)
          if (sl >= args.size()) fail_at(fn, ErrorCode::ParseError, "derivative slot out of range");
        return {Scalar(function_atom(fn.text, std::move(args), std::move(slots))), std::nullopt};
      }
      if (at("(")) {
        std::vector<Scalar> args = arguments();
        if (is_builtin_function(t.text)) {
          if (args.size() != 1) fail_at(t, ErrorCode::ParseError, t.text + " takes one argument");
          try {
            return {Scalar::builtin(t.text, args[0]), std::nullopt};
          } catch (const Error& e) {
            fail_at(t, e.code(), e.what());
          }
        }
        return {Scalar::function(t.text, std::move(args)), std::nullopt};
      }
      if (!coordinate_known(t.text))
        fail_at(t, ErrorCode::UnknownCoordinate, "unknown coordinate '" + t.text + "'");
      return {Scalar::coordinate(t.text), std::nullopt};
    }
    fail_expected({"number", "identifier", "'('", "'d('", "'-'"});
  }
};

template <class T, class F>
const T& find_named(const std::vector<T>& v, std::string_view name, F key, const char* what) {
  for (const auto& x : v)
    if (key(x) == name) return x;
  throw Error(ErrorCode::UnknownName, std::string("unknown ") + what + " '" + std::string(name) + "'");
}

}  // namespace

ChartPtr Document::chart(std::string_view name) const {
  return find_named(charts, name, [](const auto& c) -> const std::string& { return c.first; }, "chart").second;
}
const PfaffianSystem& Document::system(std::string_view name) const {
  return find_named(systems, name, [](const auto& s) -> const std::string& { return s.name; }, "system");
}
const SmoothMap& Document::map(std::string_view name) const {
  return find_named(maps, name, [](const auto& m) -> const std::string& { return m.name; }, "map");
}
const CoframeDecl& Document::coframe(std::string_view name) const {
  return find_named(coframes, name, [](const auto& c) -> const std::string& { return c.name; }, "coframe");
}
const FiltrationDecl& Document::filtration(std::string_view name) const {
  return find_named(filtrations, name, [](const auto& f) -> const std::string& { return f.name; }, "filtration");
}
ChartPtr Document::chart_or_system(std::string_view name) const {
  for (const auto& c : charts)
    if (c.first == name) return c.second;
  return system(name).chart;
}

Document parse(std::string_view text) { return Parser(text).document(); }

Scalar parse_scalar(std::string_view text, const ChartPtr& chart) {
  Parser p(text);
  Value v = p.lone(chart);
  if (v.form) throw Error(ErrorCode::DegreeError, "expected a function: " + std::string(text));
  return v.s;
}

Form parse_form(std::string_view text, const ChartPtr& chart) {
  Parser p(text);
  Value v = p.lone(chart);
  if (!v.form) {
    if (v.s.is_zero()) return Form(chart, 1);
    throw Error(ErrorCode::DegreeError, "expected a form: " + std::string(text));
  }
  return *v.form;
}

std::string print(const Document& doc) {
  std::string out;
  for (const auto& [name, chart] : doc.charts) {
    out += "chart " + name + " :";
    for (const auto& n : chart->names()) out += " " + n;
    out += ";\n";
  }
  for (const auto& a : doc.assumes)
    out += "assume " + a.lhs.str() + (a.nonzero ? " != " : " = ") + a.rhs.str() + ";\n";
  for (std::size_t k = 0; k < doc.systems.size(); ++k) {
    const auto& s = doc.systems[k];
    out += "system " + s.name + " on " + doc.system_charts[k] + " {\n";
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
      std::string g = s.generators[i].is_zero() ? "0" : s.generators[i].str();
      out += "  " + s.labels[i] + " = " + g + ";\n";
    }
    out += "}";
    if (s.tau) out += " indep " + s.tau->str();
    out += ";\n";
  }
  for (std::size_t k = 0; k < doc.maps.size(); ++k) {
    const auto& m = doc.maps[k];
    out += "map " + m.name + " : " + doc.map_ends[k].first + " -> " + doc.map_ends[k].second + " {\n";
    for (std::size_t i = 0; i < m.images.size(); ++i)
      out += "  " + m.target->name(i) + " = " + m.images[i].str() + ";\n";
    out += "}\n";
  }
  for (const auto& r : doc.renames) out += "rename " + r.name + " = " + r.expr.str() + ";\n";
  for (const auto& c : doc.coframes) {
    out += "coframe " + c.name + " : " + c.system + " {\n";
    for (std::size_t i = 0; i < c.forms.size(); ++i)
      out += "  " + c.labels[i] + " = " + (c.forms[i].is_zero() ? "0" : c.forms[i].str()) + ";\n";
    out += "}\n";
  }
  for (const auto& f : doc.filtrations) {
    out += "filtration " + f.name + " =";
    for (std::size_t i = 0; i < f.systems.size(); ++i) out += (i ? ", " : " ") + f.systems[i];
    out += ";\n";
  }
  return out;
}

}  // namespace eds
