#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/factorized.hpp"
#include "affcover/graph.hpp"
#include "affcover/scalar.hpp"

namespace affcover {

// Polynomial expression over the existential variables. Constants are 0, 1, -1.
struct TermNode;
using TermP = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Var, Const, Add, Sub, Mul, Neg };
  Kind kind;
  int var = -1;
  int value = 0;
  TermP a, b;
};

class Poly {
 public:
  Poly() : t_(make(TermNode::Kind::Const, -1, 0)) {}
  explicit Poly(TermP t) : t_(std::move(t)) {}

  static Poly var(int i) { return Poly(make(TermNode::Kind::Var, i, 0)); }
  static Poly constant(int c) {
    if (c < -1 || c > 1) throw Error(ErrorCode::InvalidArgument, "constants are limited to -1, 0, 1");
    return Poly(make(TermNode::Kind::Const, -1, c));
  }

  const TermP& node() const { return t_; }

  friend Poly operator+(const Poly& x, const Poly& y) { return bin(TermNode::Kind::Add, x, y); }
  friend Poly operator-(const Poly& x, const Poly& y) { return bin(TermNode::Kind::Sub, x, y); }
  friend Poly operator*(const Poly& x, const Poly& y) { return bin(TermNode::Kind::Mul, x, y); }
  friend Poly operator-(const Poly& x) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::Neg;
    n->a = x.t_;
    return Poly(n);
  }

 private:
  static TermP make(TermNode::Kind k, int var, int value) {
    auto n = std::make_shared<TermNode>();
    n->kind = k;
    n->var = var;
    n->value = value;
    return n;
  }
  static Poly bin(TermNode::Kind k, const Poly& x, const Poly& y) {
    auto n = std::make_shared<TermNode>();
    n->kind = k;
    n->a = x.t_;
    n->b = y.t_;
    return Poly(n);
  }
  TermP t_;
};

struct FormulaNode;
using FormulaP = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { True, False, Lt, Le, Eq, And, Or, Not };
  Kind kind;
  Poly lhs, rhs;
  std::vector<FormulaP> args;
};

namespace fm {

inline FormulaP atom(FormulaNode::Kind k, const Poly& a, const Poly& b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->lhs = a;
  n->rhs = b;
  return n;
}
inline FormulaP lt(const Poly& a, const Poly& b) { return atom(FormulaNode::Kind::Lt, a, b); }
inline FormulaP le(const Poly& a, const Poly& b) { return atom(FormulaNode::Kind::Le, a, b); }
inline FormulaP eq(const Poly& a, const Poly& b) { return atom(FormulaNode::Kind::Eq, a, b); }
inline FormulaP gt(const Poly& a, const Poly& b) { return lt(b, a); }
inline FormulaP ne(const Poly& a, const Poly& b);

inline FormulaP truth(bool v) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = v ? FormulaNode::Kind::True : FormulaNode::Kind::False;
  return n;
}

inline FormulaP junction(FormulaNode::Kind k, std::vector<FormulaP> xs) {
  if (xs.size() == 1) return xs[0];
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->args = std::move(xs);
  return n;
}
inline FormulaP all(std::vector<FormulaP> xs) { return junction(FormulaNode::Kind::And, std::move(xs)); }
inline FormulaP any(std::vector<FormulaP> xs) { return junction(FormulaNode::Kind::Or, std::move(xs)); }
inline FormulaP no(FormulaP x) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaNode::Kind::Not;
  n->args = {std::move(x)};
  return n;
}
inline FormulaP ne(const Poly& a, const Poly& b) { return any({lt(a, b), lt(b, a)}); }

}  // namespace fm

struct RealFormula {
  std::vector<std::string> variables;
  FormulaP matrix;
};

inline int degree(const TermP& t) {
  switch (t->kind) {
    case TermNode::Kind::Var: return 1;
    case TermNode::Kind::Const: return 0;
    case TermNode::Kind::Neg: return degree(t->a);
    case TermNode::Kind::Add:
    case TermNode::Kind::Sub: return std::max(degree(t->a), degree(t->b));
    case TermNode::Kind::Mul: return degree(t->a) + degree(t->b);
  }
  return 0;
}

inline bool constants_ok(const TermP& t) {
  if (t->kind == TermNode::Kind::Const) return t->value >= -1 && t->value <= 1;
  if (t->kind == TermNode::Kind::Var) return true;
  return constants_ok(t->a) && (!t->b || constants_ok(t->b));
}

// Walks every atom of the matrix.
template <class Fn>
void for_each_atom(const FormulaP& f, Fn&& fn) {
  switch (f->kind) {
    case FormulaNode::Kind::Lt:
    case FormulaNode::Kind::Le:
    case FormulaNode::Kind::Eq: fn(*f); break;
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or:
    case FormulaNode::Kind::Not:
      for (const auto& a : f->args) for_each_atom(a, fn);
      break;
    default: break;
  }
}

inline int max_atom_degree(const RealFormula& f) {
  int d = 0;
  for_each_atom(f.matrix, [&](const FormulaNode& a) {
    d = std::max({d, degree(a.lhs.node()), degree(a.rhs.node())});
  });
  return d;
}

inline bool coefficients_ok(const RealFormula& f) {
  bool ok = true;
  for_each_atom(f.matrix, [&](const FormulaNode& a) { ok = ok && constants_ok(a.lhs.node()) && constants_ok(a.rhs.node()); });
  return ok;
}

inline Rational evaluate(const TermP& t, const std::vector<Rational>& x) {
  switch (t->kind) {
    case TermNode::Kind::Var: return x.at(t->var);
    case TermNode::Kind::Const: return Rational(t->value);
    case TermNode::Kind::Neg: return -evaluate(t->a, x);
    case TermNode::Kind::Add: return evaluate(t->a, x) + evaluate(t->b, x);
    case TermNode::Kind::Sub: return evaluate(t->a, x) - evaluate(t->b, x);
    case TermNode::Kind::Mul: return evaluate(t->a, x) * evaluate(t->b, x);
  }
  return Rational(0);
}

inline bool evaluate(const FormulaP& f, const std::vector<Rational>& x) {
  switch (f->kind) {
    case FormulaNode::Kind::True: return true;
    case FormulaNode::Kind::False: return false;
    case FormulaNode::Kind::Lt: return evaluate(f->lhs.node(), x) < evaluate(f->rhs.node(), x);
    case FormulaNode::Kind::Le: return evaluate(f->lhs.node(), x) <= evaluate(f->rhs.node(), x);
    case FormulaNode::Kind::Eq: return evaluate(f->lhs.node(), x) == evaluate(f->rhs.node(), x);
    case FormulaNode::Kind::And:
      for (const auto& a : f->args)
        if (!evaluate(a, x)) return false;
      return true;
    case FormulaNode::Kind::Or:
      for (const auto& a : f->args)
        if (evaluate(a, x)) return true;
      return false;
    case FormulaNode::Kind::Not: return !evaluate(f->args[0], x);
  }
  return false;
}

inline bool evaluate(const RealFormula& f, const std::vector<Rational>& x) {
  if (x.size() != f.variables.size()) throw Error(ErrorCode::InvalidArgument, "assignment size differs from variable count");
  return evaluate(f.matrix, x);
}

namespace detail {

// Point-level geometric predicates as formulas over symbolic coordinates.
using SymPoint = std::vector<Poly>;

inline Poly sq(const Poly& x) { return x * x; }

inline SymPoint sub(const SymPoint& a, const SymPoint& b) {
  SymPoint r;
  for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}

inline Poly sdot(const SymPoint& a, const SymPoint& b) {
  Poly s = a[0] * b[0];
  for (size_t i = 1; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

inline SymPoint scross(const SymPoint& a, const SymPoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Poly schi(const SymPoint& a, const SymPoint& b, const SymPoint& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline const Poly& zero() {
  static const Poly z = Poly::constant(0);
  return z;
}

inline FormulaP vec_zero(const SymPoint& v) {
  std::vector<FormulaP> xs;
  for (const auto& c : v) xs.push_back(fm::eq(c, zero()));
  return fm::all(std::move(xs));
}

inline FormulaP vec_nonzero(const SymPoint& v) {
  std::vector<FormulaP> xs;
  for (const auto& c : v) xs.push_back(fm::ne(c, zero()));
  return fm::any(std::move(xs));
}

inline FormulaP points_differ(const SymPoint& a, const SymPoint& b) {
  std::vector<FormulaP> xs;
  for (size_t i = 0; i < a.size(); ++i) xs.push_back(fm::ne(a[i], b[i]));
  return fm::any(std::move(xs));
}

inline FormulaP collinear(const SymPoint& a, const SymPoint& b, const SymPoint& c) {
  if (a.size() == 2) return fm::eq(schi(a, b, c), zero());
  return vec_zero(scross(sub(b, a), sub(c, a)));
}

// B(a,b,c): a on the closed segment bc.
inline FormulaP between(const SymPoint& a, const SymPoint& b, const SymPoint& c) {
  auto ba = sub(b, a), ca = sub(c, a), cb = sub(c, b);
  return fm::all({collinear(a, b, c), fm::le(sdot(ba, ba), sdot(cb, cb)), fm::le(sdot(ca, ca), sdot(cb, cb))});
}

// D(a,b,c,d): closed segments ab and cd are disjoint.
inline FormulaP disjoint(const SymPoint& a, const SymPoint& b, const SymPoint& c, const SymPoint& d) {
  auto collinear_clause = [&] {
    return std::vector<FormulaP>{fm::no(between(a, c, d)), fm::no(between(b, c, d)), fm::no(between(c, a, b)),
                                 fm::no(between(d, a, b))};
  };
  if (a.size() == 2) {
    auto c1 = schi(a, b, c), c2 = schi(a, b, d);
    auto tail = collinear_clause();
    tail.insert(tail.begin(), {fm::eq(c1, zero()), fm::eq(c2, zero())});
    return fm::any({fm::gt(c1 * c2, zero()), fm::gt(schi(c, d, a) * schi(c, d, b), zero()), fm::all(tail)});
  }
  auto u = sub(b, a);
  auto n1 = scross(u, sub(c, a)), n2 = scross(u, sub(d, a));
  auto w = sub(d, c);
  auto tail = collinear_clause();
  tail.insert(tail.begin(), {vec_zero(n1), vec_zero(n2)});
  return fm::any({fm::ne(sdot(n1, sub(d, a)), zero()), fm::gt(sdot(n1, n2), zero()),
                  fm::gt(sdot(scross(w, sub(a, c)), scross(w, sub(b, c))), zero()), fm::all(tail)});
}

inline SymPoint declare_point(RealFormula& f, const std::string& name, int d) {
  static const char* axis[] = {"x", "y", "z"};
  SymPoint p;
  for (int i = 0; i < d; ++i) {
    p.push_back(Poly::var(static_cast<int>(f.variables.size())));
    f.variables.push_back(name + "_" + axis[i]);
  }
  return p;
}

// Vertices pairwise distinct, and the non-crossing clauses for every edge pair.
inline void drawing_clauses(const Graph& g, const std::vector<SymPoint>& v, std::vector<FormulaP>& out) {
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j) out.push_back(points_differ(v[i], v[j]));
  const auto& es = g.edges();
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      const Edge &e = es[i], &f = es[j];
      int shared = e.touches(f.u) ? f.u : e.touches(f.v) ? f.v : -1;
      if (shared < 0) {
        out.push_back(disjoint(v[e.u], v[e.v], v[f.u], v[f.v]));
      } else {
        int a = e.other(shared), m = f.other(shared);
        out.push_back(fm::no(between(v[m], v[a], v[shared])));
        out.push_back(fm::no(between(v[a], v[shared], v[m])));
      }
    }
}

}  // namespace detail

// rho^l_d(G) <= k as an existential formula. Lines are point pairs (p_l, q_l);
// planes are point triples (a_l, b_l, c_l). With `anchor`, the first flat is
// pinned to the unit frame at the origin; every instance is affinely
// equivalent to one of that shape, and solvers converge far faster.
inline RealFormula emit_rho_formula(const Graph& g, int k, int d, int l, bool anchor = true) {
  if (!((d == 2 && l == 1) || (d == 3 && (l == 1 || l == 2))))
    throw Error(ErrorCode::UnsupportedCombination,
                "supported (d,l) pairs are (2,1), (3,1), (3,2); got (" + std::to_string(d) + "," + std::to_string(l) + ")");
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  using namespace detail;
  RealFormula f;
  std::vector<SymPoint> v;
  for (int i = 0; i < g.order(); ++i) v.push_back(declare_point(f, "v" + std::to_string(i + 1), d));
  std::vector<FormulaP> conj;
  std::vector<FormulaP> well;
  std::vector<std::vector<SymPoint>> flats;
  for (int t = 1; t <= k; ++t) {
    std::string s = std::to_string(t);
    if (l == 1) {
      auto p = declare_point(f, "p" + s, d), q = declare_point(f, "q" + s, d);
      well.push_back(points_differ(p, q));
      flats.push_back({p, q});
    } else {
      auto a = declare_point(f, "a" + s, d), b = declare_point(f, "b" + s, d), c = declare_point(f, "c" + s, d);
      well.push_back(vec_nonzero(scross(sub(b, a), sub(c, a))));
      flats.push_back({a, b, c});
    }
  }
  auto on_flat = [&](const SymPoint& x, const std::vector<SymPoint>& fl) {
    if (l == 1) return between(x, fl[0], fl[1]);
    return fm::eq(sdot(scross(sub(fl[1], fl[0]), sub(fl[2], fl[0])), sub(x, fl[0])), zero());
  };
  drawing_clauses(g, v, conj);
  conj.insert(conj.end(), well.begin(), well.end());
  for (const auto& e : g.edges()) {
    std::vector<FormulaP> options;
    for (const auto& fl : flats) options.push_back(fm::all({on_flat(v[e.u], fl), on_flat(v[e.v], fl)}));
    conj.push_back(fm::any(std::move(options)));
  }
  if (anchor)
    for (size_t j = 0; j < flats[0].size(); ++j)
      for (int i = 0; i < d; ++i) conj.push_back(fm::eq(flats[0][j][i], Poly::constant(j > 0 && i == static_cast<int>(j) - 1)));
  f.matrix = conj.empty() ? fm::truth(true) : fm::all(std::move(conj));
  return f;
}

// Stretchability of a template: each factor drawn on its own line, in factor
// order, as a crossing-free drawing with pairwise distinct lines.
inline RealFormula emit_stretch_formula(const TemplateGraph& h, int d) {
  validate_template(h);
  if (d != 2 && d != 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 2 or 3");
  using namespace detail;
  RealFormula f;
  const Graph& g = h.graph();
  std::vector<SymPoint> v;
  for (int i = 0; i < g.order(); ++i) v.push_back(declare_point(f, "v" + std::to_string(i + 1), d));
  std::vector<FormulaP> conj;
  for (const auto& p : h.factors())
    for (size_t t = 1; t + 1 < p.size(); ++t) {
      conj.push_back(collinear(v[p[t - 1]], v[p[t]], v[p[t + 1]]));
      conj.push_back(between(v[p[t]], v[p[t - 1]], v[p[t + 1]]));
    }
  for (int i = 0; i < h.k(); ++i)
    for (int j = i + 1; j < h.k(); ++j) {
      const auto& a = h.factors()[i];
      std::vector<FormulaP> off;
      for (int w : h.factors()[j]) {
        if (d == 2)
          off.push_back(fm::ne(schi(v[a[0]], v[a[1]], v[w]), zero()));
        else
          off.push_back(vec_nonzero(scross(sub(v[a[1]], v[a[0]]), sub(v[w], v[a[0]]))));
      }
      conj.push_back(fm::any(std::move(off)));
    }
  drawing_clauses(g, v, conj);
  f.matrix = fm::all(std::move(conj));
  return f;
}

namespace detail {

inline void write_term(std::ostream& os, const TermP& t, const std::vector<std::string>& names) {
  switch (t->kind) {
    case TermNode::Kind::Var: os << names[t->var]; return;
    case TermNode::Kind::Const: os << (t->value < 0 ? "(- 1.0)" : t->value == 0 ? "0.0" : "1.0"); return;
    case TermNode::Kind::Neg:
      os << "(- ";
      write_term(os, t->a, names);
      os << ')';
      return;
    default: break;
  }
  os << (t->kind == TermNode::Kind::Add ? "(+ " : t->kind == TermNode::Kind::Sub ? "(- " : "(* ");
  write_term(os, t->a, names);
  os << ' ';
  write_term(os, t->b, names);
  os << ')';
}

inline void write_formula(std::ostream& os, const FormulaP& f, const std::vector<std::string>& names) {
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::True: os << "true"; return;
    case K::False: os << "false"; return;
    case K::Lt:
    case K::Le:
    case K::Eq:
      os << (f->kind == K::Lt ? "(< " : f->kind == K::Le ? "(<= " : "(= ");
      write_term(os, f->lhs.node(), names);
      os << ' ';
      write_term(os, f->rhs.node(), names);
      os << ')';
      return;
    case K::And:
    case K::Or:
      if (f->args.empty()) {
        os << (f->kind == K::And ? "true" : "false");
        return;
      }
      os << (f->kind == K::And ? "(and" : "(or");
      for (const auto& a : f->args) {
        os << ' ';
        write_formula(os, a, names);
      }
      os << ')';
      return;
    case K::Not:
      os << "(not ";
      write_formula(os, f->args[0], names);
      os << ')';
      return;
  }
}

}  // namespace detail

inline std::string to_solver_text(const RealFormula& f) {
  std::ostringstream os;
  os << "(set-logic QF_NRA)\n";
  for (const auto& v : f.variables) os << "(declare-fun " << v << " () Real)\n";
  os << "(assert ";
  detail::write_formula(os, f.matrix, f.variables);
  os << ")\n(check-sat)\n";
  return os.str();
}

}  // namespace affcover
