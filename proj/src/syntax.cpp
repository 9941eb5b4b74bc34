#include "lams/syntax.hpp"

#include <algorithm>

namespace lams {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

TypePtr Type::boolean() {
  static const TypePtr b(new Type(Kind::Bool, nullptr, nullptr));
  return b;
}

TypePtr Type::prod(TypePtr l, TypePtr r) {
  if (!is_qubit_type(l) || !is_qubit_type(r))
    throw internal_error("product components must be qubit types");
  return TypePtr(new Type(Kind::Prod, std::move(l), std::move(r)));
}

TypePtr Type::span(TypePtr inner) {
  return TypePtr(new Type(Kind::Span, std::move(inner), nullptr));
}

TypePtr Type::arrow(TypePtr dom, TypePtr cod) {
  if (!is_qubit_type(dom))
    throw internal_error("arrow domain must be a qubit type");
  return TypePtr(new Type(Kind::Arrow, std::move(dom), std::move(cod)));
}

TypePtr Type::bools(int n) {
  if (n < 1) throw internal_error("B^n needs n >= 1");
  TypePtr t = boolean();
  for (int i = 1; i < n; ++i) t = prod(boolean(), t);
  return t;
}

int type_cmp(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case Type::Kind::Bool:
      return 0;
    case Type::Kind::Span:
      return type_cmp(a->inner(), b->inner());
    case Type::Kind::Prod:
    case Type::Kind::Arrow:
      if (int k = type_cmp(a->left(), b->left())) return k;
      return type_cmp(a->right(), b->right());
  }
  return 0;
}

bool type_eq(const TypePtr& a, const TypePtr& b) { return type_cmp(a, b) == 0; }

bool is_basis_type(const TypePtr& t) { return basis_width(t) > 0; }

int basis_width(const TypePtr& t) {
  if (t->kind() == Type::Kind::Bool) return 1;
  if (t->kind() == Type::Kind::Prod) {
    if (t->left()->kind() != Type::Kind::Bool) return 0;
    int rest = basis_width(t->right());
    return rest > 0 ? rest + 1 : 0;
  }
  return 0;
}

bool is_qubit_type(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::Bool:
      return true;
    case Type::Kind::Span:
      return is_qubit_type(t->inner());
    case Type::Kind::Prod:
      return is_qubit_type(t->left()) && is_qubit_type(t->right());
    case Type::Kind::Arrow:
      return false;
  }
  return false;
}

bool is_ground_type(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::Bool:
      return true;
    case Type::Kind::Span:
      return is_ground_type(t->inner());
    case Type::Kind::Prod:
      return is_ground_type(t->left()) && is_ground_type(t->right());
    case Type::Kind::Arrow:
      return false;
  }
  return false;
}

int span_depth(const TypePtr& t) {
  int n = 0;
  const Type* p = t.get();
  while (p->kind() == Type::Kind::Span) {
    ++n;
    p = p->inner().get();
  }
  return n;
}

TypePtr strip_spans(const TypePtr& t) {
  TypePtr p = t;
  while (p->kind() == Type::Kind::Span) p = p->inner();
  return p;
}

TypePtr add_spans(const TypePtr& t, int n) {
  TypePtr p = t;
  for (int i = 0; i < n; ++i) p = Type::span(p);
  return p;
}

namespace {

bool type_atom(const TypePtr& t) {
  return t->kind() == Type::Kind::Bool || t->kind() == Type::Kind::Span;
}

}  // namespace

std::string pretty_type(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::Bool:
      return "B";
    case Type::Kind::Span:
      return "S(" + pretty_type(t->inner()) + ")";
    case Type::Kind::Prod: {
      std::string l = pretty_type(t->left());
      if (!type_atom(t->left())) l = "(" + l + ")";
      std::string r = pretty_type(t->right());
      if (t->right()->kind() == Type::Kind::Arrow) r = "(" + r + ")";
      return l + " x " + r;  // product is right-associated
    }
    case Type::Kind::Arrow: {
      std::string l = pretty_type(t->left());
      if (t->left()->kind() == Type::Kind::Prod) l = "(" + l + ")";
      return l + " => " + pretty_type(t->right());
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

TermPtr Term::var(std::string name) {
  auto t = new Term(Kind::Var);
  t->name_ = std::move(name);
  return TermPtr(t);
}

TermPtr Term::ket0() {
  static const TermPtr k(new Term(Kind::Ket0));
  return k;
}

TermPtr Term::ket1() {
  static const TermPtr k(new Term(Kind::Ket1));
  return k;
}

TermPtr Term::lam(std::string var, TypePtr annot, TermPtr body) {
  auto t = new Term(Kind::Lam);
  t->name_ = std::move(var);
  t->type_ = std::move(annot);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}

TermPtr Term::app(TermPtr fun, TermPtr arg) {
  auto t = new Term(Kind::App);
  t->kids_ = {std::move(fun), std::move(arg)};
  return TermPtr(t);
}

TermPtr Term::ite(TermPtr then_branch, TermPtr else_branch) {
  auto t = new Term(Kind::Ite);
  t->kids_ = {std::move(then_branch), std::move(else_branch)};
  return TermPtr(t);
}

TermPtr Term::zero_vec(TypePtr annot) {
  auto t = new Term(Kind::Zero);
  t->type_ = std::move(annot);
  return TermPtr(t);
}

TermPtr Term::times(TermPtr l, TermPtr r) {
  auto t = new Term(Kind::Times);
  t->kids_ = {std::move(l), std::move(r)};
  return TermPtr(t);
}

TermPtr Term::head(TermPtr body) {
  auto t = new Term(Kind::Head);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}

TermPtr Term::tail(TermPtr body) {
  auto t = new Term(Kind::Tail);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}

TermPtr Term::cast_r(TermPtr body) {
  auto t = new Term(Kind::CastR);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}

TermPtr Term::cast_l(TermPtr body) {
  auto t = new Term(Kind::CastL);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}

TermPtr Term::scale(Scalar s, TermPtr body) {
  auto t = new Term(Kind::Scale);
  t->scalar_ = std::move(s);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}

namespace {

struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return term_cmp(a, b) < 0;
  }
};

}  // namespace

TermPtr Term::sum(std::vector<TermPtr> parts) {
  if (parts.empty()) throw internal_error("sum of no terms");
  std::vector<TermPtr> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p->kind() == Kind::Sum)
      flat.insert(flat.end(), p->children().begin(), p->children().end());
    else
      flat.push_back(std::move(p));
  }
  if (flat.size() == 1) return flat[0];
  std::stable_sort(flat.begin(), flat.end(), TermLess{});
  auto t = new Term(Kind::Sum);
  t->kids_ = std::move(flat);
  return TermPtr(t);
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case Term::Kind::Var:
      return a->var_name().compare(b->var_name());
    case Term::Kind::Ket0:
    case Term::Kind::Ket1:
      return 0;
    case Term::Kind::Lam:
      if (int k = a->var_name().compare(b->var_name())) return k;
      if (int k = type_cmp(a->lam_annot(), b->lam_annot())) return k;
      return term_cmp(a->child(0), b->child(0));
    case Term::Kind::Zero:
      return type_cmp(a->zero_annot(), b->zero_annot());
    case Term::Kind::Scale:
      // body first, so same-base summands sit next to each other in sums
      if (int k = term_cmp(a->child(0), b->child(0))) return k;
      return a->scalar().compare(b->scalar());
    default: {
      const auto& ka = a->children();
      const auto& kb = b->children();
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      for (size_t i = 0; i < ka.size(); ++i)
        if (int k = term_cmp(ka[i], kb[i])) return k;
      return 0;
    }
  }
}

bool term_eq(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }

bool is_basis_term(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Ket0:
    case Term::Kind::Ket1:
    case Term::Kind::Lam:
      return true;
    case Term::Kind::Times:
      return is_basis_term(t->child(0)) && is_basis_term(t->child(1));
    default:
      return false;
  }
}

bool is_value(const TermPtr& t) {
  if (is_basis_term(t)) return true;
  switch (t->kind()) {
    case Term::Kind::Zero:
      return true;
    case Term::Kind::Scale:
      return is_value(t->child(0));
    case Term::Kind::Times:
      return is_value(t->child(0)) && is_value(t->child(1));
    case Term::Kind::Sum:
      for (const auto& p : t->children())
        if (!is_value(p)) return false;
      return true;
    default:
      return false;
  }
}

namespace {

void collect_free(const TermPtr& t, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      if (!bound.count(t->var_name())) out.insert(t->var_name());
      return;
    case Term::Kind::Lam: {
      bool fresh = bound.insert(t->var_name()).second;
      collect_free(t->child(0), bound, out);
      if (fresh) bound.erase(t->var_name());
      return;
    }
    default:
      for (const auto& k : t->children()) collect_free(k, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& r) {
  switch (t->kind()) {
    case Term::Kind::Var:
      return t->var_name() == x ? r : t;
    case Term::Kind::Ket0:
    case Term::Kind::Ket1:
    case Term::Kind::Zero:
      return t;
    case Term::Kind::Lam: {
      if (t->var_name() == x) return t;  // shadowed
      auto body = substitute(t->child(0), x, r);
      if (body == t->child(0)) return t;
      return Term::lam(t->var_name(), t->lam_annot(), std::move(body));
    }
    case Term::Kind::App:
      return Term::app(substitute(t->child(0), x, r),
                       substitute(t->child(1), x, r));
    case Term::Kind::Ite:
      return Term::ite(substitute(t->child(0), x, r),
                       substitute(t->child(1), x, r));
    case Term::Kind::Times:
      return Term::times(substitute(t->child(0), x, r),
                         substitute(t->child(1), x, r));
    case Term::Kind::Head:
      return Term::head(substitute(t->child(0), x, r));
    case Term::Kind::Tail:
      return Term::tail(substitute(t->child(0), x, r));
    case Term::Kind::CastR:
      return Term::cast_r(substitute(t->child(0), x, r));
    case Term::Kind::CastL:
      return Term::cast_l(substitute(t->child(0), x, r));
    case Term::Kind::Scale:
      return Term::scale(t->scalar(), substitute(t->child(0), x, r));
    case Term::Kind::Sum: {
      std::vector<TermPtr> parts;
      parts.reserve(t->children().size());
      for (const auto& p : t->children()) parts.push_back(substitute(p, x, r));
      return Term::sum(std::move(parts));  // re-canonicalize
    }
  }
  throw internal_error("substitute: unhandled term kind");
}

// ---------------------------------------------------------------------------
// Pretty printer. Precedence, loosest to tightest: sum, scale, product,
// application, prefix operators and atoms.
// ---------------------------------------------------------------------------

namespace {

enum Prec { kSum = 0, kScale = 1, kTimes = 2, kApp = 3, kAtom = 4 };

std::string print(const TermPtr& t, int min_prec);

std::string wrap(std::string s, bool needed) {
  return needed ? "(" + std::move(s) + ")" : std::move(s);
}

std::string print(const TermPtr& t, int min_prec) {
  switch (t->kind()) {
    case Term::Kind::Var:
      return t->var_name();
    case Term::Kind::Ket0:
      return "|0>";
    case Term::Kind::Ket1:
      return "|1>";
    case Term::Kind::Zero:
      return "zero[" + pretty_type(t->zero_annot()) + "]";
    case Term::Kind::Ite:
      return "if { " + print(t->child(0), kSum) + " } else { " +
             print(t->child(1), kSum) + " }";
    case Term::Kind::Lam: {
      std::string s = "\\" + t->var_name() + ":" + pretty_type(t->lam_annot()) +
                      ". " + print(t->child(0), kSum);
      return wrap(std::move(s), min_prec > kSum);
    }
    case Term::Kind::Sum: {
      std::string s;
      for (size_t i = 0; i < t->children().size(); ++i) {
        if (i) s += " + ";
        s += print(t->child(i), kScale);
      }
      return wrap(std::move(s), min_prec > kSum);
    }
    case Term::Kind::Scale: {
      std::string s =
          t->scalar().pretty() + " . " + print(t->child(0), kTimes);
      return wrap(std::move(s), min_prec > kScale);
    }
    case Term::Kind::Times: {
      // right-associated: left operand needs parens if it is itself a product
      std::string s = print(t->child(0), kApp) + " * " +
                      print(t->child(1), t->child(1)->kind() == Term::Kind::Times
                                             ? kTimes
                                             : kApp);
      return wrap(std::move(s), min_prec > kTimes);
    }
    case Term::Kind::App: {
      std::string s =
          print(t->child(0), kApp) + " " + print(t->child(1), kAtom);
      return wrap(std::move(s), min_prec > kApp);
    }
    case Term::Kind::Head:
      return wrap("head " + print(t->child(0), kAtom), min_prec > kApp);
    case Term::Kind::Tail:
      return wrap("tail " + print(t->child(0), kAtom), min_prec > kApp);
    case Term::Kind::CastR:
      return wrap("upR " + print(t->child(0), kAtom), min_prec > kApp);
    case Term::Kind::CastL:
      return wrap("upL " + print(t->child(0), kAtom), min_prec > kApp);
  }
  throw internal_error("pretty: unhandled term kind");
}

}  // namespace

std::string pretty(const TermPtr& t) { return print(t, kSum); }

size_t term_size(const TermPtr& t) {
  size_t n = 1;
  for (const auto& k : t->children()) n += term_size(k);
  return n;
}

}  // namespace lams
