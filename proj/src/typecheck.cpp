#include "lams/typecheck.hpp"

#include <algorithm>

namespace lams {

const char* type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "unbound variable";
    case TypeErrorKind::LinearReuse: return "linear variable reused";
    case TypeErrorKind::LinearUnused: return "linear variable unused";
    case TypeErrorKind::AppMismatch: return "application mismatch";
    case TypeErrorKind::CastShape: return "cast shape mismatch";
    case TypeErrorKind::HeadTailArity: return "head/tail arity";
    case TypeErrorKind::AnnotationMismatch: return "annotation mismatch";
  }
  return "?";
}

namespace {

std::string describe(TypeErrorKind kind, const std::string& rule,
                     const TermPtr& at, const TypePtr& expected,
                     const TypePtr& found) {
  std::string s = std::string(type_error_kind_name(kind)) + " [rule " + rule +
                  "] in: " + pretty(at);
  if (expected) s += " (expected " + pretty_type(expected);
  if (found) s += (expected ? ", found " : " (found ") + pretty_type(found);
  if (expected || found) s += ")";
  return s;
}

}  // namespace

TypeError::TypeError(TypeErrorKind kind_, std::string rule_, TermPtr offending_,
                     TypePtr expected_, TypePtr found_)
    : std::runtime_error(describe(kind_, rule_, offending_, expected_, found_)),
      kind(kind_),
      rule(std::move(rule_)),
      offending(std::move(offending_)),
      expected(std::move(expected_)),
      found(std::move(found_)) {}

namespace {

using Used = std::set<std::string>;

// S_I only ever adds outer spans, so `want` is reachable from `from` exactly
// when stripping the surplus spans of `want` gives `from` back.
bool liftable_to(const TypePtr& from, const TypePtr& want) {
  int gap = span_depth(want) - span_depth(from);
  if (gap < 0) return false;
  TypePtr w = want;
  for (int i = 0; i < gap; ++i) w = w->inner();
  return type_eq(w, from);
}

struct Elaborator {
  const TermPtr root;

  // goal == nullptr synthesizes the minimal type.
  TypedPtr elab(const Context& ctx, const TermPtr& t, const TypePtr& goal,
                Used& used) {
    switch (t->kind()) {
      case Term::Kind::Var: return var(ctx, t, goal, used);
      case Term::Kind::Ket0:
      case Term::Kind::Ket1: return ket(t, goal);
      case Term::Kind::Zero: return zero(t, goal);
      case Term::Kind::Lam: return lam(ctx, t, goal, used);
      case Term::Kind::App: return app(ctx, t, goal, used);
      case Term::Kind::Ite: return ite(ctx, t, goal, used);
      case Term::Kind::Sum: return sum(ctx, t, goal, used);
      case Term::Kind::Scale: return scale(ctx, t, goal, used);
      case Term::Kind::Times: return times(ctx, t, goal, used);
      case Term::Kind::Head:
      case Term::Kind::Tail: return head_tail(ctx, t, goal, used);
      case Term::Kind::CastR:
      case Term::Kind::CastL: return cast(ctx, t, goal, used);
    }
    throw internal_error("elaborate: unhandled term kind");
  }

  // Closes a rule application: checks the goal is an outer-S lift of the
  // rule's conclusion.
  TypedPtr finish(const TermPtr& t, TyRule rule, TypePtr rule_type,
                  const TypePtr& goal, std::vector<TypedPtr> premises,
                  const char* rule_name) {
    TypePtr used_at = goal ? goal : rule_type;
    if (goal && !liftable_to(rule_type, goal))
      throw TypeError(TypeErrorKind::AnnotationMismatch, rule_name, t, goal,
                      rule_type);
    return std::make_shared<TypedTerm>(t, rule, std::move(rule_type),
                                       std::move(used_at), std::move(premises));
  }

  TypedPtr var(const Context& ctx, const TermPtr& t, const TypePtr& goal,
               Used& used) {
    auto it = ctx.find(t->var_name());
    if (it == ctx.end())
      throw TypeError(TypeErrorKind::UnboundVariable, "Ax", t, nullptr, nullptr);
    if (!is_basis_type(it->second)) {
      if (!used.insert(t->var_name()).second)
        throw TypeError(TypeErrorKind::LinearReuse, "Ax", t, nullptr,
                        it->second);
    }
    return finish(t, TyRule::Ax, it->second, goal, {}, "Ax");
  }

  TypedPtr ket(const TermPtr& t, const TypePtr& goal) {
    bool one = t->kind() == Term::Kind::Ket1;
    return finish(t, one ? TyRule::AxKet1 : TyRule::AxKet0, Type::boolean(),
                  goal, {}, one ? "Ax_|1>" : "Ax_|0>");
  }

  TypedPtr zero(const TermPtr& t, const TypePtr& goal) {
    return finish(t, TyRule::Ax0, Type::span(t->zero_annot()), goal, {}, "Ax_0");
  }

  TypedPtr lam(const Context& ctx, const TermPtr& t, const TypePtr& goal,
               Used& used) {
    const TypePtr& annot = t->lam_annot();
    if (!is_qubit_type(annot))
      throw TypeError(TypeErrorKind::AnnotationMismatch, "=>_I", t, nullptr,
                      annot);
    TypePtr body_goal;
    if (goal) {
      TypePtr core = strip_spans(goal);
      if (core->kind() != Type::Kind::Arrow || !type_eq(core->left(), annot))
        throw TypeError(TypeErrorKind::AnnotationMismatch, "=>_I", t, goal,
                        nullptr);
      body_goal = core->right();
    }
    Context inner = ctx;
    inner[t->var_name()] = annot;
    Used body_used;
    TypedPtr body = elab(inner, t->child(0), body_goal, body_used);
    if (!is_basis_type(annot)) {
      if (!body_used.count(t->var_name()))
        throw TypeError(TypeErrorKind::LinearUnused, "=>_I", t, nullptr, annot);
      body_used.erase(t->var_name());
    }
    merge_used(t, used, body_used, "=>_I");
    return finish(t, TyRule::ArrowI, Type::arrow(annot, body->used_type()),
                  goal, {body}, "=>_I");
  }

  // =>_E fires when both sides are exact; otherwise =>_ES with at most one
  // outer lift per side, per the derivation-tree normal form.
  TypedPtr app(const Context& ctx, const TermPtr& t, const TypePtr& goal,
               Used& used) {
    Used fun_used, arg_used;
    TypedPtr fun = elab(ctx, t->child(0), nullptr, fun_used);
    TypedPtr arg = elab(ctx, t->child(1), nullptr, arg_used);
    merge_used(t, used, fun_used, "=>_E");
    merge_used(t, used, arg_used, "=>_E");
    const TypePtr& tf = fun->used_type();
    const TypePtr& tu = arg->used_type();

    TypePtr arrow;  // the arrow under at most one span
    int fun_lift = 0;
    if (tf->kind() == Type::Kind::Arrow) {
      arrow = tf;
    } else if (tf->kind() == Type::Kind::Span &&
               tf->inner()->kind() == Type::Kind::Arrow) {
      arrow = tf->inner();
      fun_lift = -1;  // already lifted
    } else {
      throw TypeError(TypeErrorKind::AppMismatch, "=>_E", t, nullptr, tf);
    }
    const TypePtr& dom = arrow->left();
    const TypePtr& cod = arrow->right();

    if (fun_lift == 0 && type_eq(tu, dom)) {
      return finish(t, TyRule::ArrowE, cod, goal, {fun, arg}, "=>_E");
    }
    // =>_ES: premises at S(dom => cod) and S(dom).
    TypedPtr fun2 = fun, arg2 = arg;
    if (fun_lift == 0) fun2 = relift(fun, 1);
    if (type_eq(tu, dom))
      arg2 = relift(arg, 1);
    else if (!type_eq(tu, Type::span(dom)))
      throw TypeError(TypeErrorKind::AppMismatch, "=>_ES", t, Type::span(dom),
                      tu);
    return finish(t, TyRule::ArrowES, Type::span(cod), goal, {fun2, arg2},
                  "=>_ES");
  }

  TypedPtr ite(const Context& ctx, const TermPtr& t, const TypePtr& goal,
               Used& used) {
    TypePtr branch_goal;
    if (goal) {
      TypePtr core = strip_spans(goal);
      if (core->kind() != Type::Kind::Arrow ||
          core->left()->kind() != Type::Kind::Bool)
        throw TypeError(TypeErrorKind::AnnotationMismatch, "If", t, goal,
                        nullptr);
      branch_goal = core->right();
    } else {
      Used scratch;
      TypedPtr a = elab(ctx, t->child(0), nullptr, scratch);
      scratch.clear();
      TypedPtr b = elab(ctx, t->child(1), nullptr, scratch);
      branch_goal = least_common_lift(t, a->used_type(), b->used_type(), "If");
    }
    Used then_used, else_used;
    TypedPtr then_b = elab(ctx, t->child(0), branch_goal, then_used);
    TypedPtr else_b = elab(ctx, t->child(1), branch_goal, else_used);
    // rule If types both branches under the same context
    if (then_used != else_used)
      throw TypeError(TypeErrorKind::LinearUnused, "If", t, nullptr, nullptr);
    merge_used(t, used, then_used, "If");
    return finish(t, TyRule::If, Type::arrow(Type::boolean(), branch_goal),
                  goal, {then_b, else_b}, "If");
  }

  TypedPtr sum(const Context& ctx, const TermPtr& t, const TypePtr& goal,
               Used& used) {
    if (goal) {
      // +_I as deep as allowed (S_I at the root), so try the most-stripped
      // span level first.
      int p = span_depth(goal);
      if (p == 0)
        throw TypeError(TypeErrorKind::AnnotationMismatch, "+_I", t, goal,
                        nullptr);
      for (int q = p - 1; q >= 0; --q) {
        TypePtr level = goal;
        for (int i = 0; i < q; ++i) level = level->inner();
        try {
          return sum_at(ctx, t, level, goal, used);
        } catch (const TypeError&) {
          if (q == 0) throw;
        }
      }
    }
    // minimal: lift all summands to the least common span type
    TypePtr level;
    {
      Used scratch;
      for (const auto& p : t->children()) {
        scratch.clear();
        TypedPtr e = elab(ctx, p, nullptr, scratch);
        TypePtr m = e->used_type();
        if (span_depth(m) == 0) m = Type::span(m);
        level = level ? least_common_lift(t, level, m, "+_I") : m;
      }
    }
    return sum_at(ctx, t, level, nullptr, used);
  }

  TypedPtr sum_at(const Context& ctx, const TermPtr& t, const TypePtr& level,
                  const TypePtr& goal, Used& used) {
    std::vector<TypedPtr> premises;
    Used all;
    for (const auto& p : t->children()) {
      Used part_used;
      premises.push_back(elab(ctx, p, level, part_used));
      merge_used(t, all, part_used, "+_I");
    }
    merge_used(t, used, all, "+_I");
    return finish(t, TyRule::PlusI, level, goal, std::move(premises), "+_I");
  }

  TypedPtr scale(const Context& ctx, const TermPtr& t, const TypePtr& goal,
                 Used& used) {
    if (goal) {
      int p = span_depth(goal);
      if (p == 0)
        throw TypeError(TypeErrorKind::AnnotationMismatch, "alpha_I", t, goal,
                        nullptr);
      for (int q = p - 1; q >= 0; --q) {
        TypePtr level = goal;
        for (int i = 0; i < q; ++i) level = level->inner();
        try {
          Used body_used;
          TypedPtr body = elab(ctx, t->child(0), level, body_used);
          merge_used(t, used, body_used, "alpha_I");
          return finish(t, TyRule::AlphaI, level, goal, {body}, "alpha_I");
        } catch (const TypeError&) {
          if (q == 0) throw;
        }
      }
    }
    Used body_used;
    TypedPtr body = elab(ctx, t->child(0), nullptr, body_used);
    merge_used(t, used, body_used, "alpha_I");
    TypePtr level = body->used_type();
    if (span_depth(level) == 0) {
      level = Type::span(level);
      body = relift(body, 1);
    }
    return finish(t, TyRule::AlphaI, level, goal, {body}, "alpha_I");
  }

  TypedPtr times(const Context& ctx, const TermPtr& t, const TypePtr& goal,
                 Used& used) {
    TypePtr lg, rg;
    if (goal) {
      TypePtr core = strip_spans(goal);
      if (core->kind() != Type::Kind::Prod)
        throw TypeError(TypeErrorKind::AnnotationMismatch, "x_I", t, goal,
                        nullptr);
      lg = core->left();
      rg = core->right();
    }
    Used lu, ru;
    TypedPtr l = elab(ctx, t->child(0), lg, lu);
    TypedPtr r = elab(ctx, t->child(1), rg, ru);
    merge_used(t, used, lu, "x_I");
    merge_used(t, used, ru, "x_I");
    if (!is_qubit_type(l->used_type()) || !is_qubit_type(r->used_type()))
      throw TypeError(TypeErrorKind::AnnotationMismatch, "x_I", t, nullptr,
                      is_qubit_type(l->used_type()) ? r->used_type()
                                                    : l->used_type());
    return finish(t, TyRule::TimesI,
                  Type::prod(l->used_type(), r->used_type()), goal, {l, r},
                  "x_I");
  }

  TypedPtr head_tail(const Context& ctx, const TermPtr& t, const TypePtr& goal,
                     Used& used) {
    bool is_head = t->kind() == Term::Kind::Head;
    const char* rn = is_head ? "x_Er" : "x_El";
    Used body_used;
    TypedPtr body = elab(ctx, t->child(0), nullptr, body_used);
    merge_used(t, used, body_used, rn);
    int n = basis_width(body->used_type());
    if (n <= 1)
      throw TypeError(TypeErrorKind::HeadTailArity, rn, t, nullptr,
                      body->used_type());
    TypePtr out = is_head ? Type::boolean() : Type::bools(n - 1);
    return finish(t, is_head ? TyRule::TimesEr : TyRule::TimesEl,
                  std::move(out), goal, {body}, rn);
  }

  TypedPtr cast(const Context& ctx, const TermPtr& t, const TypePtr& goal,
                Used& used) {
    bool right = t->kind() == Term::Kind::CastR;
    const char* rn = right ? "cast_r" : "cast_l";
    TypePtr conclusion;  // S(Psi x Phi)
    if (goal) {
      int p = span_depth(goal);
      TypePtr core = strip_spans(goal);
      if (p < 1 || core->kind() != Type::Kind::Prod)
        throw TypeError(TypeErrorKind::CastShape, rn, t, goal, nullptr);
      conclusion = Type::span(core);
    } else {
      Used scratch;
      TypedPtr body = elab(ctx, t->child(0), nullptr, scratch);
      TypePtr core = strip_spans(body->used_type());
      if (core->kind() != Type::Kind::Prod)
        throw TypeError(TypeErrorKind::CastShape, rn, t, nullptr,
                        body->used_type());
      TypePtr flat = right ? Type::prod(strip_spans(core->left()), core->right())
                           : Type::prod(core->left(), strip_spans(core->right()));
      conclusion = Type::span(flat);
    }
    TypePtr flat = conclusion->inner();
    const TypePtr& kept = right ? flat->right() : flat->left();
    const TypePtr& stripped = right ? flat->left() : flat->right();
    if (stripped->kind() == Type::Kind::Span)
      throw TypeError(TypeErrorKind::CastShape, rn, t, goal, nullptr);
    // Premise S(S^k(Psi) x Phi) for some k > 0; inner lifts can supply any
    // number of spans, so probe small k first.
    int k_max = std::min(12, 1 + deepest_span_run(t->child(0)));
    TypeError last(TypeErrorKind::CastShape, rn, t, goal, nullptr);
    for (int k = 1; k <= k_max; ++k) {
      TypePtr lifted = add_spans(stripped, k);
      TypePtr premise = Type::span(right ? Type::prod(lifted, kept)
                                         : Type::prod(kept, lifted));
      try {
        Used body_used;
        TypedPtr body = elab(ctx, t->child(0), premise, body_used);
        merge_used(t, used, body_used, rn);
        return finish(t, right ? TyRule::CastR : TyRule::CastL, conclusion,
                      goal, {body}, rn);
      } catch (TypeError& e) {
        last = e;
      }
    }
    throw last;
  }

  // Upper bound for the cast premise search: the longest span nesting that a
  // derivation for `t` could need without extra root lifts.
  int deepest_span_run(const TermPtr& t) {
    int best = 1;
    if (t->kind() == Term::Kind::Zero || t->kind() == Term::Kind::Lam)
      best = std::max(best, deepest_span_run_type(
                                t->kind() == Term::Kind::Zero ? t->zero_annot()
                                                              : t->lam_annot()));
    for (const auto& k : t->children())
      best = std::max(best, deepest_span_run(k));
    return best + 1;
  }

  int deepest_span_run_type(const TypePtr& ty) {
    switch (ty->kind()) {
      case Type::Kind::Bool:
        return 0;
      case Type::Kind::Span:
        return 1 + deepest_span_run_type(ty->inner());
      case Type::Kind::Prod:
      case Type::Kind::Arrow:
        return std::max(deepest_span_run_type(ty->left()),
                        deepest_span_run_type(ty->right()));
    }
    return 0;
  }

  TypePtr least_common_lift(const TermPtr& at, const TypePtr& a,
                            const TypePtr& b, const char* rule) {
    TypePtr ca = strip_spans(a), cb = strip_spans(b);
    if (!type_eq(ca, cb))
      throw TypeError(TypeErrorKind::AnnotationMismatch, rule, at, a, b);
    return add_spans(ca, std::max(span_depth(a), span_depth(b)));
  }

  void merge_used(const TermPtr& at, Used& into, const Used& from,
                  const char* rule) {
    for (const auto& v : from)
      if (!into.insert(v).second)
        throw TypeError(TypeErrorKind::LinearReuse, rule, at, nullptr, nullptr);
  }

  // Adds trailing S_I lifts to an already-elaborated premise.
  static TypedPtr relift(const TypedPtr& n, int extra) {
    return std::make_shared<TypedTerm>(n->term(), n->rule(), n->rule_type(),
                                       add_spans(n->used_type(), extra),
                                       n->premises());
  }
};

}  // namespace

TypedPtr synthesize(const Context& ctx, const TermPtr& t,
                    std::set<std::string>* used) {
  Elaborator e{t};
  Used u;
  TypedPtr out = e.elab(ctx, t, nullptr, u);
  if (used) *used = std::move(u);
  return out;
}

TypedPtr check(const Context& ctx, const TermPtr& t, const TypePtr& want,
               std::set<std::string>* used) {
  Elaborator e{t};
  Used u;
  TypedPtr out = e.elab(ctx, t, want, u);
  if (used) *used = std::move(u);
  return out;
}

}  // namespace lams
