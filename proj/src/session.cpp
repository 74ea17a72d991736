#include "plskel/session.hpp"

#include <chrono>
#include <climits>
#include <sstream>

namespace plskel {

namespace {

[[noreturn]] void syntax(const Sexpr& e, const std::string& what) { throw SyntaxError(e.line, e.col, what); }

const Sexpr& expect_list(const Sexpr& e, const std::string& head, std::size_t min_items = 1) {
  if (!e.is_list || e.head() != head) syntax(e, "expected (" + head + " ...)");
  if (e.items.size() < min_items) syntax(e, "(" + head + " ...) is missing arguments");
  return e;
}

Rational rat(const Sexpr& e) {
  Rational q;
  if (!e.is_atom() || !parse_rational(e.atom, q)) syntax(e, "expected a rational, got '" + e.atom + "'");
  return q;
}

long integer(const Sexpr& e) {
  Rational q = rat(e);
  if (!is_integer(q) || !q.get_num().fits_slong_p()) syntax(e, "expected an integer, got '" + e.atom + "'");
  return q.get_num().get_si();
}

struct Parser {
  RegistryPtr registry;
  std::size_t dim = 0;
  bool have_dim = false;
  Limits limits;
  std::vector<Definition>* defs = nullptr;

  const Registry& reg(const Sexpr& at) const {
    if (!registry) syntax(at, "registry must be declared first");
    return *registry;
  }
  std::size_t ambient(const Sexpr& at) const {
    if (!have_dim) syntax(at, "dim must be declared first");
    return dim;
  }
  Context ctx() const { return Context{registry, limits}; }

  ParamExp param(const Sexpr& e) const {
    const Registry& r = reg(e);
    if (e.is_atom()) {
      Rational q = rat(e);
      if (sgn(q) <= 0) throw Error(ErrorCode::NotInGroup, "constant " + e.atom + " is not positive");
      return r.param_of(q);
    }
    expect_list(e, "pow");
    if (e.items.size() != r.rank() + 1) syntax(e, "(pow ...) needs one exponent per generator");
    ParamExp p = ParamExp::one(r.rank());
    for (std::size_t j = 0; j < r.rank(); ++j) p.exps[j] = rat(e.items[j + 1]);
    return p;
  }

  AffineForm term(const Sexpr& e, std::size_t n) const {
    expect_list(e, "mono", 3);
    if (e.items.size() != 3) syntax(e, "(mono CONST (EXPONENTS))");
    const Sexpr& exps = e.items[2];
    if (!exps.is_list) syntax(exps, "expected an exponent list");
    if (exps.items.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "term at " + std::to_string(exps.line) + ":" +
                                                    std::to_string(exps.col) + " needs " + std::to_string(n) +
                                                    " exponents");
    AffineForm f{param(e.items[1]), RationalVector(n)};
    for (std::size_t i = 0; i < n; ++i) f.exps[i] = rat(exps.items[i]);
    return f;
  }

  std::size_t variable(const Sexpr& e, std::size_t n) const {
    if (!e.is_atom()) syntax(e, "expected a variable");
    std::string digits = e.atom;
    if (!digits.empty() && digits.front() == 'x') digits.erase(0, 1);
    Rational q;
    if (digits.empty() || !parse_rational(digits, q) || !is_integer(q)) syntax(e, "bad variable '" + e.atom + "'");
    if (q < 1 || q > static_cast<long>(n))
      throw Error(ErrorCode::DimensionMismatch, "variable " + e.atom + " outside the context");
    return q.get_num().get_ui() - 1;
  }

  Formula formula(const Sexpr& e, std::size_t n) const {
    if (e.is_atom()) {
      if (e.atom == "true") return Formula::truth(n);
      if (e.atom == "false") return Formula::falsity(n);
      syntax(e, "expected a formula, got '" + e.atom + "'");
    }
    const std::string& h = e.head();
    static const std::pair<const char*, Rel> rels[] = {
        {"<", Rel::Lt}, {"<=", Rel::Le}, {"=", Rel::Eq}, {">=", Rel::Ge}, {">", Rel::Gt}};
    for (const auto& [name, rel] : rels)
      if (h == name) {
        if (e.items.size() != 2) syntax(e, "atom takes one term");
        return Formula::of(Atom{term(e.items[1], n), rel});
      }
    if ((h == "true" || h == "false") && e.items.size() == 1)
      return h == "true" ? Formula::truth(n) : Formula::falsity(n);
    if (h == "and" || h == "or") {
      if (e.items.size() < 2) syntax(e, "(" + h + " ...) needs at least one operand");
      std::vector<Formula> args;
      for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(formula(e.items[i], n));
      Formula f{h == "and" ? Formula::Kind::And : Formula::Kind::Or, n, {}, std::move(args), 0};
      return f;
    }
    if (h == "not") {
      if (e.items.size() != 2) syntax(e, "(not F)");
      return Formula::negation(formula(e.items[1], n));
    }
    if (h == "exists" || h == "forall") {
      if (e.items.size() != 3) syntax(e, "(" + h + " VAR F)");
      std::size_t v = variable(e.items[1], n);
      Formula body = formula(e.items[2], n);
      return h == "exists" ? Formula::exists(v, std::move(body)) : Formula::forall(v, std::move(body));
    }
    syntax(e, "unknown formula head '" + h + "'");
  }

  Cell cell(const Sexpr& e, std::size_t n) const {
    Formula f = formula(e, n);
    Cell c = Cell::ambient(n);
    auto add = [&](const Formula& g) {
      if (g.kind == Formula::Kind::Atom) {
        c.atoms.push_back(g.atom);
      } else if (g.kind != Formula::Kind::True) {
        throw Error(ErrorCode::ValidationError, "piece domain must be a conjunction of atoms");
      }
    };
    if (f.kind == Formula::Kind::And) {
      for (const auto& g : f.args) add(g);
    } else {
      add(f);
    }
    return c;
  }

  Definable definable(const Formula& f) const { return to_definable(ctx(), qe(ctx(), f)); }

  GenScalar scalar(const Sexpr& e) const {
    const Registry& r = reg(e);
    if (e.is_atom() || e.head() == "pow") return standard_scalar(r, param(e));
    expect_list(e, "gs", 2);
    const Sexpr& s = expect_list(e.items[1], "std", 2);
    LogConst std_part;
    if (s.items.size() == 2) {
      std_part = LogConst(param(s.items[1]));
    } else if (s.items.size() == r.rank() + 2) {
      std_part = LogConst::zero(r.rank());
      std_part.c0 = rat(s.items[1]);
      for (std::size_t j = 0; j < r.rank(); ++j) std_part.coeffs[j] = rat(s.items[j + 2]);
    } else {
      syntax(s, "(std VALUE) or (std c0 q1 .. qk)");
    }
    RationalVector inf(r.inf_rank());
    if (e.items.size() >= 3) {
      const Sexpr& i = expect_list(e.items[2], "inf");
      if (i.items.size() - 1 > r.inf_rank())
        throw Error(ErrorCode::InsufficientInfRank, "point uses more infinitesimal axes than the registry");
      for (std::size_t k = 1; k < i.items.size(); ++k) inf[k - 1] = rat(i.items[k]);
    }
    if (e.items.size() > 3) syntax(e, "(gs (std ...) (inf ...))");
    return GenScalar(std::move(std_part), std::move(inf));
  }

  GenPoint gpoint(const Sexpr& e) const {
    expect_list(e, "gpoint");
    GenPoint p;
    for (std::size_t i = 1; i < e.items.size(); ++i) p.coords.push_back(scalar(e.items[i]));
    return p;
  }

  LaurentPoly poly(const Sexpr& e) const {
    expect_list(e, "poly");
    if (e.items.size() == 1) return LaurentPoly::zero(ambient(e));
    std::optional<LaurentPoly> p;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const Sexpr& t = expect_list(e.items[i], "term", 3);
      if (t.items.size() != 3 || !t.items[2].is_list) syntax(t, "(term COEF (EXPONENTS))");
      Exponent exps;
      for (const auto& x : t.items[2].items) exps.push_back(integer(x));
      if (!p) p = LaurentPoly::zero(exps.size());
      if (exps.size() != p->nvars) throw Error(ErrorCode::DimensionMismatch, "terms with different variable counts");
      p->add_term(exps, rat(t.items[1]));
    }
    return *p;
  }

  IntMatrix matrix(const Sexpr& e) const {
    expect_list(e, "matrix");
    IntMatrix m;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const Sexpr& row = expect_list(e.items[i], "row");
      std::vector<long> r;
      for (std::size_t j = 1; j < row.items.size(); ++j) r.push_back(integer(row.items[j]));
      if (!m.rows.empty() && r.size() != m.rows.front().size())
        throw Error(ErrorCode::DimensionMismatch, "matrix rows of different lengths");
      m.rows.push_back(std::move(r));
    }
    return m;
  }

  ParamList params(const Sexpr& e) const {
    expect_list(e, "params");
    ParamList p;
    for (std::size_t i = 1; i < e.items.size(); ++i) p.values.push_back(param(e.items[i]));
    return p;
  }

  PLMap plmap(const Sexpr& e) const {
    expect_list(e, "plmap");
    const std::size_t n = ambient(e);
    PLMap f;
    f.source = Definable::empty(n);
    std::optional<Definable> source;
    std::optional<std::size_t> target;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const Sexpr& item = e.items[i];
      if (item.head() == "source") {
        if (item.items.size() != 2) syntax(item, "(source F)");
        source = definable(formula(item.items[1], n));
        continue;
      }
      expect_list(item, "piece", 3);
      if (item.items.size() != 3) syntax(item, "(piece F (map TERM ...))");
      const Sexpr& m = expect_list(item.items[2], "map");
      AffineMap map;
      for (std::size_t k = 1; k < m.items.size(); ++k) map.push_back(term(m.items[k], n));
      if (target && *target != map.size()) throw Error(ErrorCode::DimensionMismatch, "pieces with different arity");
      target = map.size();
      f.pieces.push_back({cell(item.items[1], n), std::move(map)});
    }
    if (f.pieces.empty()) syntax(e, "plmap needs at least one piece");
    f.target_dim = *target;
    if (source) {
      f.source = *source;
    } else {
      for (const auto& p : f.pieces) f.source.cells.push_back(p.domain);
      f.source = prune(ctx(), f.source);
    }
    validate(ctx(), f);
    return f;
  }

  const Object& named(const Sexpr& e) const {
    for (const auto& d : *defs)
      if (d.name == e.atom) return d.value;
    throw Error(ErrorCode::UnknownName, "'" + e.atom + "' at " + std::to_string(e.line) + ":" + std::to_string(e.col));
  }

  ActionObject action(const Sexpr& e) const {
    expect_list(e, "action", 2);
    const std::size_t n = ambient(e);
    ActionObject a;
    const Sexpr& space = e.items[1];
    if (space.is_atom()) {
      const auto* f = std::get_if<Formula>(&named(space));
      if (!f) throw Error(ErrorCode::ValidationError, "'" + space.atom + "' is not a formula");
      a.space = *f;
    } else {
      a.space = formula(space, n);
    }
    Definable x = definable(a.space);
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      const Sexpr& g = e.items[i];
      PLMap map;
      if (g.is_atom()) {
        const auto* m = std::get_if<PLMap>(&named(g));
        if (!m) throw Error(ErrorCode::ValidationError, "'" + g.atom + "' is not a plmap");
        map = *m;
      } else {
        map = plmap(g);
      }
      map.source = x;
      a.generators.push_back(std::move(map));
    }
    a.action = make_action(ctx(), x, a.generators);
    return a;
  }

  Object object(const Sexpr& e) const {
    const std::string& h = e.is_atom() ? e.atom : e.head();
    if (h == "plmap") return plmap(e);
    if (h == "action") return action(e);
    if (h == "poly") return poly(e);
    if (h == "gpoint") return gpoint(e);
    if (h == "matrix") return matrix(e);
    if (h == "params") return params(e);
    Formula f = formula(e, ambient(e));
    return f;
  }

  void item(const Sexpr& e) {
    const std::string& h = e.head();
    if (h == "registry") {
      if (registry) syntax(e, "registry declared twice");
      RationalVector gens;
      std::size_t inf_rank = 0;
      CoeffValuation val;
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        const Sexpr& part = e.items[i];
        if (part.head() == "gens") {
          for (std::size_t j = 1; j < part.items.size(); ++j) gens.push_back(rat(part.items[j]));
        } else if (part.head() == "inf-rank") {
          if (part.items.size() != 2) syntax(part, "(inf-rank INT)");
          long m = integer(part.items[1]);
          if (m < 0) syntax(part.items[1], "inf-rank must be nonnegative");
          inf_rank = static_cast<std::size_t>(m);
        } else if (part.head() == "val") {
          if (part.items.size() == 2 && part.items[1].is_atom() && part.items[1].atom == "trivial") {
            val = {};
          } else if (part.items.size() == 3 && part.items[1].is_atom() && part.items[1].atom == "p-adic") {
            val = {CoeffMode::PAdic, integer(part.items[2])};
          } else {
            syntax(part, "(val trivial) or (val p-adic P)");
          }
        } else {
          syntax(part, "unknown registry field");
        }
      }
      registry = Registry::create(std::move(gens), inf_rank, val);
    } else if (h == "dim") {
      if (e.items.size() != 2) syntax(e, "(dim N)");
      long n = integer(e.items[1]);
      if (n < 0) syntax(e.items[1], "dimension must be nonnegative");
      if (have_dim) syntax(e, "dim declared twice");
      dim = static_cast<std::size_t>(n);
      have_dim = true;
    } else if (h == "def") {
      if (e.items.size() != 3 || !e.items[1].is_atom()) syntax(e, "(def NAME OBJECT)");
      const std::string& name = e.items[1].atom;
      for (const auto& d : *defs)
        if (d.name == name) throw Error(ErrorCode::ValidationError, "name '" + name + "' defined twice");
      reg(e);
      defs->push_back({name, object(e.items[2])});
    } else {
      syntax(e, "expected (registry ...), (dim ...) or (def ...)");
    }
  }
};

// ---------------------------------------------------------------------------
// Rendering

std::string render_param(const Registry& reg, const ParamExp& p) {
  if (auto v = reg.value_of(p)) return to_string(*v);
  std::string out = "(pow";
  for (const auto& q : p.exps) out += " " + to_string(q);
  return out + ")";
}

std::string render_form(const Registry& reg, const AffineForm& f) {
  std::string out = "(mono " + render_param(reg, f.constant) + " (";
  for (std::size_t i = 0; i < f.exps.size(); ++i) out += (i ? " " : "") + to_string(f.exps[i]);
  return out + "))";
}

std::string render_rel(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

std::string render_map(const Registry& reg, const AffineMap& m) {
  std::string out = "(map";
  for (const auto& f : m) out += " " + render_form(reg, f);
  return out + ")";
}

std::string render_cell(const Registry& reg, const Cell& c) { return render(reg, Definable::of(c)); }

std::string render_plmap(const Registry& reg, const PLMap& f) {
  std::string out = "(plmap (source " + render(reg, f.source) + ")";
  for (const auto& p : f.pieces) out += " (piece " + render_cell(reg, p.domain) + " " + render_map(reg, p.map) + ")";
  return out + ")";
}

std::string render_poly(const LaurentPoly& p) {
  std::string out = "(poly";
  for (const auto& [e, c] : p.terms) {
    out += " (term " + to_string(c) + " (";
    for (std::size_t i = 0; i < e.size(); ++i) out += (i ? " " : "") + std::to_string(e[i]);
    out += "))";
  }
  return out + ")";
}

std::string render_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

const Object& Session::lookup(const std::string& name) const {
  for (const auto& d : definitions)
    if (d.name == name) return d.value;
  throw Error(ErrorCode::UnknownName, "'" + name + "' is not defined");
}

Session parse_session(std::string_view text, const Limits& limits) {
  auto exprs = parse_sexprs(text);
  Session s;
  s.limits = limits;
  Parser p;
  p.limits = limits;
  p.defs = &s.definitions;
  for (const auto& e : exprs) {
    try {
      p.item(e);
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& err) {
      if (err.is_resource_cap() || err.code() == ErrorCode::UnknownName) throw;
      throw Error(ErrorCode::ValidationError,
                  std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + err.what());
    }
  }
  if (!p.registry) throw Error(ErrorCode::ValidationError, "session declares no registry");
  if (!p.have_dim) throw Error(ErrorCode::ValidationError, "session declares no dim");
  s.registry = p.registry;
  s.dim = p.dim;
  return s;
}

std::string render(const Registry& reg, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return "(" + render_rel(f.atom.rel) + " " + render_form(reg, f.atom.form) + ")";
    case K::And:
    case K::Or: {
      std::string out = f.kind == K::And ? "(and" : "(or";
      for (const auto& a : f.args) out += " " + render(reg, a);
      return out + ")";
    }
    case K::Not: return "(not " + render(reg, f.args.front()) + ")";
    case K::Exists:
    case K::Forall:
      return std::string(f.kind == K::Exists ? "(exists x" : "(forall x") + std::to_string(f.var + 1) + " " +
             render(reg, f.args.front()) + ")";
  }
  return "";
}

std::string render(const Registry& reg, const Definable& d) { return render(reg, Formula::of(d)); }

std::string render(const Registry&, const GenScalar& x) {
  std::string out = "(gs (std " + to_string(x.std.c0);
  for (const auto& q : x.std.coeffs) out += " " + to_string(q);
  out += ") (inf";
  for (const auto& q : x.inf) out += " " + to_string(q);
  return out + "))";
}

std::string render(const Registry& reg, const GenPoint& p) {
  std::string out = "(gpoint";
  for (const auto& c : p.coords) out += " " + render(reg, c);
  return out + ")";
}

std::string render(const Registry& reg, const Object& o) {
  struct Visitor {
    const Registry& reg;
    std::string operator()(const Formula& f) const { return render(reg, f); }
    std::string operator()(const PLMap& f) const { return render_plmap(reg, f); }
    std::string operator()(const ActionObject& a) const {
      std::string out = "(action " + render(reg, a.space);
      for (const auto& g : a.generators) out += " " + render_plmap(reg, g);
      return out + ")";
    }
    std::string operator()(const LaurentPoly& p) const { return render_poly(p); }
    std::string operator()(const GenPoint& p) const { return render(reg, p); }
    std::string operator()(const IntMatrix& m) const {
      std::string out = "(matrix";
      for (const auto& r : m.rows) {
        out += " (row";
        for (long v : r) out += " " + std::to_string(v);
        out += ")";
      }
      return out + ")";
    }
    std::string operator()(const ParamList& p) const {
      std::string out = "(params";
      for (const auto& v : p.values) out += " " + render_param(reg, v);
      return out + ")";
    }
  };
  return std::visit(Visitor{reg}, o);
}

std::string render(const Session& s) {
  const Registry& reg = *s.registry;
  std::ostringstream out;
  out << "(registry (gens";
  for (const auto& g : reg.generators()) out << ' ' << to_string(g);
  out << ") (inf-rank " << reg.inf_rank() << ") (val ";
  if (reg.coeff_valuation().mode == CoeffMode::PAdic) {
    out << "p-adic " << reg.coeff_valuation().prime;
  } else {
    out << "trivial";
  }
  out << "))\n(dim " << s.dim << ")\n";
  for (const auto& d : s.definitions) out << "(def " << d.name << ' ' << render(reg, d.value) << ")\n";
  return out.str();
}

bool same_session(const Session& a, const Session& b) {
  if (a.registry->generators() != b.registry->generators() || a.registry->inf_rank() != b.registry->inf_rank() ||
      !(a.registry->coeff_valuation() == b.registry->coeff_valuation()) || a.dim != b.dim ||
      a.definitions.size() != b.definitions.size())
    return false;
  Context ctx = a.context();
  auto same_set = [&](const Formula& x, const Formula& y) {
    return equivalent(ctx, to_definable(ctx, qe(ctx, x)), to_definable(ctx, qe(ctx, y)));
  };
  for (std::size_t i = 0; i < a.definitions.size(); ++i) {
    const auto& x = a.definitions[i];
    const auto& y = b.definitions[i];
    if (x.name != y.name || x.value.index() != y.value.index()) return false;
    bool ok = std::visit(
        [&](const auto& u) -> bool {
          using T = std::decay_t<decltype(u)>;
          const T& v = std::get<T>(y.value);
          if constexpr (std::is_same_v<T, Formula>) {
            return same_set(u, v);
          } else if constexpr (std::is_same_v<T, PLMap>) {
            return equivalent(ctx, u.source, v.source) && agree(ctx, u, v);
          } else if constexpr (std::is_same_v<T, ActionObject>) {
            if (!same_set(u.space, v.space) || u.action.order() != v.action.order()) return false;
            for (std::size_t k = 0; k < u.action.order(); ++k)
              if (!agree(ctx, u.action.elements[k], v.action.elements[k])) return false;
            return true;
          } else {
            return u == v;
          }
        },
        x.value);
    if (!ok) return false;
  }
  return true;
}

std::string Report::render() const {
  std::ostringstream out;
  out << "(report\n (command " << command << ")\n (result " << result << ")\n (wall-time-us " << wall_time_us
      << ")\n (counters (eliminations " << counters.eliminations << ") (feasibility-checks "
      << counters.feasibility_checks << ") (rows-generated " << counters.rows_generated << ")))\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands

namespace {

template <class T>
const T& as(const Session& s, const std::string& name, const char* kind) {
  const auto* v = std::get_if<T>(&s.lookup(name));
  if (!v) throw Error(ErrorCode::ValidationError, "'" + name + "' is not a " + kind);
  return *v;
}

Definable definable(const Session& s, const std::string& name) {
  Context ctx = s.context();
  return to_definable(ctx, qe(ctx, as<Formula>(s, name, "formula")));
}

Cell single_cell(const Session& s, const std::string& name) {
  const Formula& f = as<Formula>(s, name, "formula");
  Cell c = Cell::ambient(f.dim);
  auto add = [&](const Formula& g) {
    if (g.kind == Formula::Kind::Atom) {
      c.atoms.push_back(g.atom);
    } else if (g.kind != Formula::Kind::True) {
      throw Error(ErrorCode::ValidationError, "'" + name + "' is not a conjunction of atoms");
    }
  };
  if (f.kind == Formula::Kind::And) {
    for (const auto& g : f.args) add(g);
  } else {
    add(f);
  }
  return c;
}

GaussPoint gauss_point(const Session& s, const std::string& name) {
  return GaussPoint{as<GenPoint>(s, name, "gpoint")};
}

void need_args(const std::vector<std::string>& args, std::size_t lo, std::size_t hi, const std::string& op) {
  if (args.size() < lo || args.size() > hi)
    throw Error(ErrorCode::ValidationError, op + " takes " + std::to_string(lo) +
                                                (hi == lo ? "" : (hi == SIZE_MAX ? " or more" : " to " + std::to_string(hi))) +
                                                " argument(s)");
}

std::string run_command(const Session& s, const std::string& op, const std::string& name,
                        const std::vector<std::string>& args, const RunOptions& options) {
  const Context ctx = s.context();
  const Registry& reg = *s.registry;

  if (op == "empty?") {
    need_args(args, 0, 0, op);
    return render_bool(is_empty(ctx, definable(s, name)));
  }
  if (op == "dim") {
    need_args(args, 0, 0, op);
    auto d = dimension(ctx, definable(s, name));
    return d ? std::to_string(*d) : "-inf";
  }
  if (op == "boundary") {
    need_args(args, 0, 0, op);
    return render(reg, boundary(ctx, single_cell(s, name)));
  }
  if (op == "decompose") {
    std::vector<AffineForm> family;
    for (const auto& a : args)
      for (const auto& c : definable(s, a).cells)
        for (const auto& atom : c.atoms) family.push_back(atom.form);
    auto dec = decompose(ctx, family, definable(s, name));
    std::string out = "(decomposition";
    for (std::size_t i = 0; i < dec.cells.size(); ++i) {
      out += " (cell (index " + std::to_string(i) + ") (closed " + render_cell(reg, dec.cells[i]) + ") (open " +
             render_cell(reg, dec.open_cells[i]) + ") (incidence";
      for (auto j : dec.incidence[i]) out += " " + std::to_string(j);
      out += "))";
    }
    return out + ")";
  }
  if (op == "image") {
    need_args(args, 0, 0, op);
    return render(reg, image_pl(ctx, as<PLMap>(s, name, "plmap")));
  }
  if (op == "qe") {
    need_args(args, 0, 0, op);
    return render(reg, qe(ctx, as<Formula>(s, name, "formula")));
  }
  if (op == "eval") {
    need_args(args, 1, 1, op);
    return render_bool(eval(ctx, as<Formula>(s, name, "formula"), as<GenPoint>(s, args[0], "gpoint")));
  }
  if (op == "sample") {
    need_args(args, 0, 0, op);
    return render(reg, sample_type(ctx, definable(s, name)));
  }
  if (op == "member") {
    need_args(args, 1, 1, op);
    return render_bool(member(ctx, definable(s, name), as<GenPoint>(s, args[0], "gpoint").coords));
  }
  if (op == "quotient") {
    need_args(args, 0, 0, op);
    const auto& a = as<ActionObject>(s, name, "action");
    auto q = quotient(ctx, a.action);
    std::string out = "(quotient (order " + std::to_string(a.action.order()) + ") (parts";
    for (std::size_t i = 0; i < q.parts.size(); ++i) {
      const auto& p = q.parts[i];
      out += " (part (index " + std::to_string(i) + ") (base " + std::to_string(p.base) + ") (element " +
             std::to_string(p.element) + ") (orbit-size " + std::to_string(p.pattern.size) + ") (phi";
      for (auto v : p.pattern.phi) out += " " + std::to_string(v);
      out += ") (cell " + render_cell(reg, p.cell) + ") (projection " + render_map(reg, p.projection) + "))";
    }
    out += ") (charts";
    for (const auto& c : q.charts)
      out += " (chart (base " + std::to_string(c.base) + ") (element " + std::to_string(c.element) + ") (set " +
             render(reg, c.set) + "))";
    return out + "))";
  }
  if (op == "orbit") {
    need_args(args, 1, 1, op);
    const auto& a = as<ActionObject>(s, name, "action");
    std::string out = "(orbit";
    for (const auto& p : orbit(ctx, a.action, as<GenPoint>(s, args[0], "gpoint"))) out += " " + render(reg, p);
    return out + ")";
  }
  if (op == "gauss") {
    need_args(args, 1, 1, op);
    auto v = gauss_eval(reg, as<LaurentPoly>(s, name, "poly"), gauss_point(s, args[0]));
    return v ? render(reg, *v) : "zero";
  }
  if (op == "sharp") {
    need_args(args, 0, 0, op);
    return render(reg, gauss_sharp(gauss_point(s, name)).r);
  }
  if (op == "abhyankar") {
    need_args(args, 1, SIZE_MAX, op);
    GaussPoint x = gauss_point(s, name);
    std::vector<LaurentPoly> fs;
    for (const auto& a : args) fs.push_back(as<LaurentPoly>(s, a, "poly"));
    auto probes = default_probes(fs.size(), options.probe_degree);
    bool holds = abhyankar_check(reg, fs, x, probes);
    std::vector<GenScalar> values;
    std::string vals;
    for (const auto& f : fs) {
      values.push_back(*gauss_eval(reg, f, x));
      vals += " " + render(reg, values.back());
    }
    return "(abhyankar (holds " + render_bool(holds) + ") (probes " + std::to_string(probes.size()) +
           ") (values" + vals + ") (rank " + std::to_string(value_rank(reg, values)) + "))";
  }
  if (op == "push") {
    need_args(args, 1, 2, op);
    GaussPoint x = gauss_point(s, name);
    const auto& m = as<IntMatrix>(s, args[0], "matrix");
    std::vector<ParamExp> consts(m.rows.size(), ParamExp::one(reg.rank()));
    if (args.size() == 2) consts = as<ParamList>(s, args[1], "params").values;
    return render(reg, pushforward_monomial(reg, m.rows, consts, x).r);
  }
  throw Error(ErrorCode::UnknownCommand, "'" + op + "'");
}

}  // namespace

Report run(const Session& s, const std::string& command, const RunOptions& options) {
  std::istringstream in(command);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  if (words.empty()) throw Error(ErrorCode::UnknownCommand, "empty command");
  static const char* known[] = {"empty?", "dim",    "boundary", "decompose", "image", "qe",   "eval",     "sample",
                                "member", "quotient", "orbit",  "gauss",     "sharp", "abhyankar", "push"};
  if (std::find(std::begin(known), std::end(known), words[0]) == std::end(known))
    throw Error(ErrorCode::UnknownCommand, "'" + words[0] + "'");
  if (words.size() < 2) throw Error(ErrorCode::ValidationError, words[0] + " needs a --name");

  Report r;
  r.command = command;
  counters() = Counters{};
  auto start = std::chrono::steady_clock::now();
  r.result = run_command(s, words[0], words[1], {words.begin() + 2, words.end()}, options);
  r.wall_time_us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  r.counters = counters();
  return r;
}

}  // namespace plskel
