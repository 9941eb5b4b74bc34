#include "lams/rewrite.hpp"

namespace lams {

const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::beta_b: return "beta_b";
    case RuleId::beta_n: return "beta_n";
    case RuleId::lin_r_plus: return "lin_r_plus";
    case RuleId::lin_r_scal: return "lin_r_scal";
    case RuleId::lin_r_zero: return "lin_r_zero";
    case RuleId::lin_l_plus: return "lin_l_plus";
    case RuleId::lin_l_scal: return "lin_l_scal";
    case RuleId::lin_l_zero: return "lin_l_zero";
    case RuleId::if_true: return "if_true";
    case RuleId::if_false: return "if_false";
    case RuleId::head: return "head";
    case RuleId::tail: return "tail";
    case RuleId::neut: return "neut";
    case RuleId::unit: return "unit";
    case RuleId::zero_scal: return "zero_scal";
    case RuleId::zero: return "zero";
    case RuleId::prod: return "prod";
    case RuleId::dist_scal_sum: return "dist_scal_sum";
    case RuleId::fact: return "fact";
    case RuleId::fact1: return "fact1";
    case RuleId::fact2: return "fact2";
    case RuleId::dist_sum_r: return "dist_sum_r";
    case RuleId::dist_sum_l: return "dist_sum_l";
    case RuleId::dist_scal_r: return "dist_scal_r";
    case RuleId::dist_scal_l: return "dist_scal_l";
    case RuleId::dist_zero_r: return "dist_zero_r";
    case RuleId::dist_zero_l: return "dist_zero_l";
    case RuleId::dist_cast_sum: return "dist_cast_sum";
    case RuleId::dist_cast_scal: return "dist_cast_scal";
    case RuleId::dist_cast_zero_r: return "dist_cast_zero_r";
    case RuleId::cast_neut_zero_r: return "cast_neut_zero_r";
    case RuleId::dist_cast_zero_l: return "dist_cast_zero_l";
    case RuleId::cast_neut_zero_l: return "cast_neut_zero_l";
    case RuleId::cast_neut_r: return "cast_neut_r";
    case RuleId::cast_neut_l: return "cast_neut_l";
  }
  return "?";
}

namespace {

struct Match {
  RuleId rule;
  TermPtr result;  // the rewritten subterm
};

struct Engine {
  RingId ring;

  TypePtr minimal(const TermPtr& t) const {
    try {
      return synthesize({}, t)->used_type();
    } catch (const TypeError& e) {
      throw internal_error(std::string("rewriting an ill-typed term: ") +
                           e.what());
    }
  }

  // Minimal type of the function position, when it is an arrow with a basis
  // domain (the side condition of the lin_r rules).
  bool fun_has_basis_arrow(const TermPtr& f, TypePtr* dom = nullptr,
                           TypePtr* cod = nullptr) const {
    TypePtr tf = minimal(f);
    if (tf->kind() != Type::Kind::Arrow || !is_basis_type(tf->left()))
      return false;
    if (dom) *dom = tf->left();
    if (cod) *cod = tf->right();
    return true;
  }

  // ---- root rule matching, in figure order --------------------------------

  void root_matches(const TermPtr& t, bool first_only,
                    std::vector<Match>& out) const {
    switch (t->kind()) {
      case Term::Kind::App:
        app_rules(t, first_only, out);
        return;
      case Term::Kind::Head:
      case Term::Kind::Tail:
        list_rules(t, out);
        return;
      case Term::Kind::Sum:
        sum_rules(t, first_only, out);
        return;
      case Term::Kind::Scale:
        scale_rules(t, first_only, out);
        return;
      case Term::Kind::CastR:
      case Term::Kind::CastL:
        cast_rules(t, first_only, out);
        return;
      default:
        return;
    }
  }

  void app_rules(const TermPtr& t, bool first_only,
                 std::vector<Match>& out) const {
    const TermPtr& f = t->child(0);
    const TermPtr& a = t->child(1);
    // Figure: beta
    if (f->kind() == Term::Kind::Lam) {
      const TypePtr& annot = f->lam_annot();
      if (is_basis_type(annot) && is_basis_term(a) &&
          type_eq(minimal(a), annot)) {
        out.push_back({RuleId::beta_b, substitute(f->child(0), f->var_name(), a)});
        if (first_only) return;
      } else if (annot->kind() == Type::Kind::Span &&
                 type_eq(minimal(a), annot)) {
        out.push_back({RuleId::beta_n, substitute(f->child(0), f->var_name(), a)});
        if (first_only) return;
      }
    }
    // Figure: linear distribution
    if ((a->kind() == Term::Kind::Sum || a->kind() == Term::Kind::Scale ||
         a->kind() == Term::Kind::Zero)) {
      TypePtr dom, cod;
      if (fun_has_basis_arrow(f, &dom, &cod)) {
        if (a->kind() == Term::Kind::Sum) {
          std::vector<TermPtr> parts;
          for (const auto& p : a->children())
            parts.push_back(Term::app(f, p));
          out.push_back({RuleId::lin_r_plus, Term::sum(std::move(parts))});
          if (first_only) return;
        } else if (a->kind() == Term::Kind::Scale) {
          out.push_back({RuleId::lin_r_scal,
                         Term::scale(a->scalar(), Term::app(f, a->child(0)))});
          if (first_only) return;
        } else if (type_eq(a->zero_annot(), dom)) {
          out.push_back({RuleId::lin_r_zero, Term::zero_vec(cod)});
          if (first_only) return;
        }
      }
    }
    if (f->kind() == Term::Kind::Sum) {
      std::vector<TermPtr> parts;
      for (const auto& p : f->children()) parts.push_back(Term::app(p, a));
      out.push_back({RuleId::lin_l_plus, Term::sum(std::move(parts))});
      if (first_only) return;
    }
    if (f->kind() == Term::Kind::Scale) {
      out.push_back({RuleId::lin_l_scal,
                     Term::scale(f->scalar(), Term::app(f->child(0), a))});
      if (first_only) return;
    }
    if (f->kind() == Term::Kind::Zero &&
        f->zero_annot()->kind() == Type::Kind::Arrow &&
        is_basis_type(f->zero_annot()->left())) {
      out.push_back({RuleId::lin_l_zero, Term::zero_vec(f->zero_annot()->right())});
      if (first_only) return;
    }
    // Figure: conditional
    if (f->kind() == Term::Kind::Ite) {
      if (a->kind() == Term::Kind::Ket1) {
        out.push_back({RuleId::if_true, f->child(0)});
        if (first_only) return;
      } else if (a->kind() == Term::Kind::Ket0) {
        out.push_back({RuleId::if_false, f->child(1)});
        if (first_only) return;
      }
    }
  }

  void list_rules(const TermPtr& t, std::vector<Match>& out) const {
    const TermPtr& b = t->child(0);
    if (b->kind() != Term::Kind::Times) return;
    const TermPtr& h = b->child(0);
    if (h->kind() == Term::Kind::Times || !is_basis_term(h)) return;
    if (t->kind() == Term::Kind::Head)
      out.push_back({RuleId::head, h});
    else
      out.push_back({RuleId::tail, b->child(1)});
  }

  // Decomposition of a summand as (scalar prefix, base) for the fact family.
  static bool scale_split(const TermPtr& s, Scalar* alpha, TermPtr* base) {
    if (s->kind() == Term::Kind::Scale) {
      *alpha = s->scalar();
      *base = s->child(0);
      return true;
    }
    *base = s;
    return false;
  }

  void sum_rules(const TermPtr& t, bool first_only,
                 std::vector<Match>& out) const {
    const auto& parts = t->children();
    // neut: drop a zero-vector summand
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i]->kind() != Term::Kind::Zero) continue;
      std::vector<TermPtr> rest;
      for (size_t j = 0; j < parts.size(); ++j)
        if (j != i) rest.push_back(parts[j]);
      out.push_back({RuleId::neut, Term::sum(std::move(rest))});
      if (first_only) return;
    }
    // fact / fact1 / fact2: merge the first pair of summands equal up to a
    // scalar prefix (pairs scanned in canonical order)
    for (size_t i = 0; i < parts.size(); ++i) {
      Scalar ai;
      TermPtr bi;
      bool si = scale_split(parts[i], &ai, &bi);
      for (size_t j = i + 1; j < parts.size(); ++j) {
        Scalar aj;
        TermPtr bj;
        bool sj = scale_split(parts[j], &aj, &bj);
        if (!term_eq(bi, bj)) continue;
        RuleId rule;
        Scalar merged = Scalar::one(ring);
        if (si && sj) {
          rule = RuleId::fact;
          merged = ai + aj;
        } else if (si || sj) {
          rule = RuleId::fact1;
          merged = (si ? ai : aj) + Scalar::one(ring);
        } else {
          rule = RuleId::fact2;
          merged = Scalar::one(ring) + Scalar::one(ring);
        }
        std::vector<TermPtr> rest{Term::scale(merged, bi)};
        for (size_t m = 0; m < parts.size(); ++m)
          if (m != i && m != j) rest.push_back(parts[m]);
        out.push_back({rule, Term::sum(std::move(rest))});
        if (first_only) return;
      }
    }
  }

  void scale_rules(const TermPtr& t, bool first_only,
                   std::vector<Match>& out) const {
    const Scalar& alpha = t->scalar();
    const TermPtr& body = t->child(0);
    if (alpha.is_one()) {
      out.push_back({RuleId::unit, body});
      if (first_only) return;
    }
    if (alpha.is_zero()) {
      TypePtr ty = minimal(body);
      TypePtr annot = ty->kind() == Type::Kind::Span ? ty->inner() : ty;
      out.push_back({RuleId::zero_scal, Term::zero_vec(annot)});
      if (first_only) return;
    }
    if (body->kind() == Term::Kind::Zero) {
      out.push_back({RuleId::zero, body});
      if (first_only) return;
    }
    if (body->kind() == Term::Kind::Scale) {
      out.push_back({RuleId::prod, Term::scale(alpha * body->scalar(),
                                               body->child(0))});
      if (first_only) return;
    }
    // dist_scal_sum is never applied: the worked examples keep factored
    // scalars as results, so distributing over sums would both change their
    // normal forms and break joinability with the fact rules.
  }

  void cast_rules(const TermPtr& t, bool first_only,
                  std::vector<Match>& out) const {
    bool right = t->kind() == Term::Kind::CastR;
    auto recast = [&](TermPtr b) {
      return right ? Term::cast_r(std::move(b)) : Term::cast_l(std::move(b));
    };
    const TermPtr& body = t->child(0);
    if (body->kind() == Term::Kind::Times) {
      const TermPtr& main = right ? body->child(0) : body->child(1);
      const TermPtr& other = right ? body->child(1) : body->child(0);
      auto retimes = [&](TermPtr m) {
        return right ? Term::times(std::move(m), other)
                     : Term::times(other, std::move(m));
      };
      // dist_sum_r / dist_sum_l
      if (main->kind() == Term::Kind::Sum) {
        std::vector<TermPtr> parts;
        for (const auto& p : main->children())
          parts.push_back(recast(retimes(p)));
        out.push_back({right ? RuleId::dist_sum_r : RuleId::dist_sum_l,
                       Term::sum(std::move(parts))});
        if (first_only) return;
      }
      // dist_scal_r / dist_scal_l
      if (main->kind() == Term::Kind::Scale) {
        out.push_back({right ? RuleId::dist_scal_r : RuleId::dist_scal_l,
                       Term::scale(main->scalar(),
                                   recast(retimes(main->child(0))))});
        if (first_only) return;
      }
      // dist_zero_r / dist_zero_l: the annotation must be span-free for the
      // result to keep the redex's type
      if (main->kind() == Term::Kind::Zero &&
          main->zero_annot()->kind() != Type::Kind::Span) {
        TypePtr other_ty = minimal(other);
        TypePtr annot = right ? Type::prod(main->zero_annot(), other_ty)
                              : Type::prod(other_ty, main->zero_annot());
        out.push_back({right ? RuleId::dist_zero_r : RuleId::dist_zero_l,
                       Term::zero_vec(std::move(annot))});
        if (first_only) return;
      }
    }
    // dist_cast_sum
    if (body->kind() == Term::Kind::Sum) {
      std::vector<TermPtr> parts;
      for (const auto& p : body->children()) parts.push_back(recast(p));
      out.push_back({RuleId::dist_cast_sum, Term::sum(std::move(parts))});
      if (first_only) return;
    }
    // dist_cast_scal
    if (body->kind() == Term::Kind::Scale) {
      out.push_back({RuleId::dist_cast_scal,
                     Term::scale(body->scalar(), recast(body->child(0)))});
      if (first_only) return;
    }
    // cast-of-zero rules, on product annotations
    if (body->kind() == Term::Kind::Zero &&
        body->zero_annot()->kind() == Type::Kind::Prod) {
      const TypePtr& annot = body->zero_annot();
      const TypePtr& main = right ? annot->left() : annot->right();
      const TypePtr& other = right ? annot->right() : annot->left();
      auto reannot = [&](TypePtr m) {
        return right ? Type::prod(std::move(m), other)
                     : Type::prod(other, std::move(m));
      };
      if (main->kind() == Type::Kind::Span) {
        if (main->inner()->kind() == Type::Kind::Span) {
          out.push_back(
              {right ? RuleId::dist_cast_zero_r : RuleId::dist_cast_zero_l,
               recast(Term::zero_vec(reannot(main->inner())))});
          if (first_only) return;
        } else if (is_basis_type(main->inner())) {
          out.push_back(
              {right ? RuleId::cast_neut_zero_r : RuleId::cast_neut_zero_l,
               Term::zero_vec(reannot(main->inner()))});
          if (first_only) return;
        }
      }
    }
    // cast_neut_r (upL with a basis right component) and cast_neut_l (upR
    // with a basis left component); the printed labels are swapped relative
    // to the subscripts.
    if (body->kind() == Term::Kind::Times) {
      if (!right && is_basis_term(body->child(1))) {
        out.push_back({RuleId::cast_neut_r, body});
        if (first_only) return;
      }
      if (right && is_basis_term(body->child(0))) {
        out.push_back({RuleId::cast_neut_l, body});
        if (first_only) return;
      }
    }
  }

  // ---- contextual descent (Figure 9) --------------------------------------

  // Child positions open to reduction, in the deterministic visit order.
  std::vector<int> context_positions(const TermPtr& t) const {
    switch (t->kind()) {
      case Term::Kind::App: {
        std::vector<int> ps;
        if (is_value(t->child(1))) ps.push_back(0);
        const TermPtr& f = t->child(0);
        bool cbb_lam = f->kind() == Term::Kind::Lam &&
                       is_basis_type(f->lam_annot());
        if (cbb_lam || f->kind() == Term::Kind::Ite) ps.push_back(1);
        return ps;
      }
      case Term::Kind::Sum: {
        std::vector<int> ps(t->children().size());
        for (size_t i = 0; i < ps.size(); ++i) ps[i] = static_cast<int>(i);
        return ps;
      }
      case Term::Kind::Scale:
      case Term::Kind::CastR:
      case Term::Kind::CastL:
      case Term::Kind::Head:
      case Term::Kind::Tail:
        return {0};
      case Term::Kind::Times:
        return {0, 1};
      default:
        return {};
    }
  }

  TermPtr replace_child(const TermPtr& t, int idx, const TermPtr& sub) const {
    switch (t->kind()) {
      case Term::Kind::App:
        return Term::app(idx == 0 ? sub : t->child(0),
                         idx == 1 ? sub : t->child(1));
      case Term::Kind::Times:
        return Term::times(idx == 0 ? sub : t->child(0),
                           idx == 1 ? sub : t->child(1));
      case Term::Kind::Scale:
        return Term::scale(t->scalar(), sub);
      case Term::Kind::CastR:
        return Term::cast_r(sub);
      case Term::Kind::CastL:
        return Term::cast_l(sub);
      case Term::Kind::Head:
        return Term::head(sub);
      case Term::Kind::Tail:
        return Term::tail(sub);
      case Term::Kind::Sum: {
        std::vector<TermPtr> parts = t->children();
        parts[idx] = sub;
        return Term::sum(std::move(parts));
      }
      default:
        throw internal_error("replace_child: position has no context");
    }
  }

  std::optional<std::pair<RuleId, std::vector<int>>> find_step(
      const TermPtr& t, TermPtr* rewritten) const {
    std::vector<Match> m;
    root_matches(t, /*first_only=*/true, m);
    if (!m.empty()) {
      *rewritten = m.front().result;
      return std::make_pair(m.front().rule, std::vector<int>{});
    }
    for (int idx : context_positions(t)) {
      TermPtr sub;
      if (auto inner = find_step(t->child(idx), &sub)) {
        inner->second.insert(inner->second.begin(), idx);
        *rewritten = replace_child(t, idx, sub);
        return inner;
      }
    }
    return std::nullopt;
  }

  void collect_reducts(const TermPtr& root, const TermPtr& t,
                       std::vector<int>& path, std::vector<Reduct>& out) const {
    std::vector<Match> ms;
    root_matches(t, /*first_only=*/false, ms);
    for (auto& m : ms)
      out.push_back({m.rule, path, rebuild(root, path, 0, m.result)});
    for (int idx : context_positions(t)) {
      path.push_back(idx);
      collect_reducts(root, t->child(idx), path, out);
      path.pop_back();
    }
  }

  TermPtr rebuild(const TermPtr& t, const std::vector<int>& path, size_t at,
                  const TermPtr& sub) const {
    if (at == path.size()) return sub;
    return replace_child(t, path[at],
                         rebuild(t->child(path[at]), path, at + 1, sub));
  }
};

}  // namespace

std::optional<Step> Rewriter::step(const TermPtr& t) const {
  Engine e{ring_};
  TermPtr next;
  if (auto hit = e.find_step(t, &next))
    return Step{hit->first, std::move(hit->second), t, next};
  return std::nullopt;
}

Trace Rewriter::normalize(const TermPtr& t, size_t max_steps) const {
  Trace tr;
  tr.initial = t;
  TermPtr cur = t;
  while (auto s = step(cur)) {
    cur = s->after;
    tr.steps.push_back(std::move(*s));
    if (tr.steps.size() > max_steps) {
      tr.final_term = cur;
      tr.normal = false;
      throw normalization_budget_exceeded(tr);
    }
  }
  tr.final_term = cur;
  tr.normal = true;
  return tr;
}

std::vector<Reduct> Rewriter::all_reducts(const TermPtr& t) const {
  Engine e{ring_};
  std::vector<Reduct> out;
  std::vector<int> path;
  e.collect_reducts(t, t, path, out);
  return out;
}

}  // namespace lams
