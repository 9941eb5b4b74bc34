#include "lams/props.hpp"

#include "lams/denote.hpp"
#include "lams/rewrite.hpp"

#include <algorithm>

namespace lams {

namespace {

// Closed, well-typed candidates smaller than t: immediate subterms plus sums
// with one summand removed. Used to shrink counterexamples.
std::vector<TermPtr> shrink_candidates(const TermPtr& t) {
  std::vector<TermPtr> out;
  for (const auto& k : t->children())
    if (is_closed(k)) out.push_back(k);
  if (t->kind() == Term::Kind::Sum && t->children().size() >= 2) {
    for (size_t i = 0; i < t->children().size(); ++i) {
      std::vector<TermPtr> rest;
      for (size_t j = 0; j < t->children().size(); ++j)
        if (j != i) rest.push_back(t->child(j));
      out.push_back(Term::sum(std::move(rest)));
    }
  }
  if (t->kind() == Term::Kind::Scale || t->kind() == Term::Kind::CastR ||
      t->kind() == Term::Kind::CastL)
    ;  // children already collected
  return out;
}

TermPtr shrink(TermPtr t, const std::function<bool(const TermPtr&)>& fails) {
  bool progress = true;
  int rounds = 0;
  while (progress && rounds++ < 100) {
    progress = false;
    for (const auto& cand : shrink_candidates(t)) {
      bool still = false;
      try {
        synthesize({}, cand);
        still = fails(cand);
      } catch (...) {
        still = false;
      }
      if (still) {
        t = cand;
        progress = true;
        break;
      }
    }
  }
  return t;
}

struct Runner {
  GenConfig cfg;
  PropertyReport report;

  void fail(int idx, const TermPtr& t, std::string detail,
            const std::function<bool(const TermPtr&)>& predicate = nullptr) {
    PropertyFailure f;
    f.case_index = idx;
    f.term = pretty(predicate ? shrink(t, predicate) : t);
    f.detail = std::move(detail);
    report.failures.push_back(std::move(f));
  }
};

// ---- subject reduction ------------------------------------------------------

PropertyReport prop_subject_reduction(const GenConfig& cfg) {
  Runner r{cfg, {"subject_reduction", cfg.seed}};
  TermGen gen(cfg);
  Rewriter rw(cfg.ring);
  auto violates = [&](const TermPtr& t) {
    try {
      TypePtr a = synthesize({}, t)->used_type();
      for (auto& s : rw.normalize(t).steps) check({}, s.after, a);
      return false;
    } catch (const TypeError&) {
      return true;
    } catch (...) {
      return true;
    }
  };
  for (int i = 0; i < cfg.count; ++i) {
    TermPtr t = gen.next();
    ++r.report.cases;
    TypePtr a = synthesize({}, t)->used_type();
    try {
      Trace tr = rw.normalize(t);
      for (size_t k = 0; k < tr.steps.size(); ++k) {
        try {
          check({}, tr.steps[k].after, a);
        } catch (const TypeError& e) {
          r.fail(i, t,
                 "step " + std::to_string(k) + " (" +
                     rule_name(tr.steps[k].rule) + ") broke typing: " + e.what(),
                 violates);
          break;
        }
      }
    } catch (const std::exception& e) {
      r.fail(i, t, std::string("normalization failed: ") + e.what(), violates);
    }
  }
  return r.report;
}

// ---- per-step denotational soundness ---------------------------------------

PropertyReport prop_soundness(const GenConfig& cfg) {
  Runner r{cfg, {"soundness_per_step", cfg.seed}};
  GenConfig gcfg = cfg;
  TermGen gen(gcfg);
  Rewriter rw(cfg.ring);
  auto violates = [&](const TermPtr& t) {
    try {
      TypePtr a = synthesize({}, t)->used_type();
      if (!is_ground_type(a)) return false;
      SemPtr prev = denote(check({}, t, a), cfg.ring);
      for (auto& s : rw.normalize(t).steps) {
        SemPtr cur = denote(check({}, s.after, a), cfg.ring);
        if (sem_eq(prev, cur, a, cfg.ring) != TriBool::True) return true;
        prev = cur;
      }
      return false;
    } catch (...) {
      return true;
    }
  };
  for (int i = 0; i < cfg.count; ++i) {
    TypePtr goal = cfg.target
                       ? *cfg.target
                       : Type::span(Type::bools(
                             1 + static_cast<int>(gen.rand_below(cfg.max_qubits))));
    TermPtr t = gen.next_at(goal);
    ++r.report.cases;
    try {
      TypePtr a = synthesize({}, t)->used_type();
      SemPtr prev = denote(check({}, t, a), cfg.ring);
      Trace tr = rw.normalize(t);
      for (size_t k = 0; k < tr.steps.size(); ++k) {
        SemPtr cur = denote(check({}, tr.steps[k].after, a), cfg.ring);
        if (sem_eq(prev, cur, a, cfg.ring) != TriBool::True) {
          r.fail(i, t,
                 "step " + std::to_string(k) + " (" +
                     rule_name(tr.steps[k].rule) + ") changed the denotation: " +
                     render_sem(prev, a) + "  vs  " + render_sem(cur, a),
                 violates);
          break;
        }
        prev = cur;
      }
    } catch (const std::exception& e) {
      r.fail(i, t, std::string("evaluation failed: ") + e.what(), violates);
    }
  }
  return r.report;
}

// ---- strong normalization ----------------------------------------------------

PropertyReport prop_strong_normalization(const GenConfig& cfg) {
  Runner r{cfg, {"strong_normalization", cfg.seed}};
  TermGen gen(cfg);
  Rewriter rw(cfg.ring);
  for (int i = 0; i < cfg.count; ++i) {
    TermPtr t = gen.next();
    ++r.report.cases;
    try {
      rw.normalize(t, 10000);
    } catch (const normalization_budget_exceeded&) {
      r.fail(i, t, "no normal form within 10000 steps");
    }
  }
  return r.report;
}

// ---- local confluence ---------------------------------------------------------

PropertyReport prop_local_confluence(const GenConfig& cfg) {
  Runner r{cfg, {"local_confluence", cfg.seed}};
  TermGen gen(cfg);
  Rewriter rw(cfg.ring);
  auto violates = [&](const TermPtr& t) {
    try {
      auto reds = rw.all_reducts(t);
      TermPtr nf0;
      for (auto& red : reds) {
        TermPtr nf = rw.normalize(red.after).final_term;
        if (!nf0)
          nf0 = nf;
        else if (!term_eq(nf0, nf))
          return true;
      }
      return false;
    } catch (...) {
      return true;
    }
  };
  for (int i = 0; i < cfg.count; ++i) {
    TermPtr t = gen.next();
    ++r.report.cases;
    try {
      auto reds = rw.all_reducts(t);
      std::vector<TermPtr> nfs;
      nfs.reserve(reds.size());
      for (auto& red : reds)
        nfs.push_back(rw.normalize(red.after).final_term);
      for (size_t a = 0; a < nfs.size(); ++a)
        for (size_t b = a + 1; b < nfs.size(); ++b)
          if (!term_eq(nfs[a], nfs[b])) {
            r.fail(i, t,
                   std::string("peak not joinable: ") +
                       rule_name(reds[a].rule) + " leads to " + pretty(nfs[a]) +
                       " but " + rule_name(reds[b].rule) + " leads to " +
                       pretty(nfs[b]),
                   violates);
            a = nfs.size();
            break;
          }
    } catch (const std::exception& e) {
      r.fail(i, t, std::string("exploration failed: ") + e.what());
    }
  }
  return r.report;
}

// ---- completeness at ground type ---------------------------------------------

// Semantics-preserving reshuffles of a span-typed closed term.
TermPtr shuffle_once(TermGen& gen, RingId ring, const TermPtr& t,
                     const TypePtr& a) {
  TypePtr inner = a->inner();
  switch (gen.rand_below(5)) {
    case 0:  // 1.t
      return Term::scale(Scalar::one(ring), t);
    case 1:  // t + 0
      return Term::sum({t, Term::zero_vec(inner)});
    case 2: {  // t + 0.(t) -- a vanished copy
      return Term::sum({t, Term::scale(Scalar::zero(ring), t)});
    }
    case 3: {  // split a scalar: alpha.s ~> beta.s + (alpha-beta).s
      TermPtr target = t;
      if (t->kind() == Term::Kind::Sum) {
        for (const auto& p : t->children())
          if (p->kind() == Term::Kind::Scale) {
            target = p;
            break;
          }
      }
      if (target->kind() != Term::Kind::Scale)
        return Term::scale(Scalar::one(ring), t);
      Scalar beta = gen.pick_scalar();
      Scalar gamma = target->scalar() + (-beta);
      TermPtr split = Term::sum({Term::scale(beta, target->child(0)),
                                 Term::scale(gamma, target->child(0))});
      if (term_eq(target, t)) return split;
      std::vector<TermPtr> parts;
      bool done = false;
      for (const auto& p : t->children()) {
        if (!done && term_eq(p, target)) {
          parts.push_back(split);
          done = true;
        } else {
          parts.push_back(p);
        }
      }
      return Term::sum(std::move(parts));
    }
    default: {  // refactor through an invertible unit: t ~> u.(u^-1.t)
      auto [u, uinv] = gen.pick_unit();
      return Term::scale(u, Term::scale(uinv, t));
    }
  }
}

PropertyReport prop_completeness(const GenConfig& cfg) {
  Runner r{cfg, {"completeness_ground", cfg.seed}};
  TermGen gen(cfg);
  Rewriter rw(cfg.ring);
  for (int i = 0; i < cfg.count; ++i) {
    TypePtr goal = Type::span(
        Type::bools(1 + static_cast<int>(gen.rand_below(cfg.max_qubits))));
    TermPtr t = gen.next_at(goal);
    TermPtr t2 = t;
    int shuffles = 1 + static_cast<int>(gen.rand_below(3));
    for (int s = 0; s < shuffles; ++s)
      t2 = shuffle_once(gen, cfg.ring, t2, goal);
    ++r.report.cases;
    try {
      SemPtr v1 = denote(check({}, t, goal), cfg.ring);
      SemPtr v2 = denote(check({}, t2, goal), cfg.ring);
      if (sem_eq(v1, v2, goal, cfg.ring) != TriBool::True) {
        r.fail(i, t2, "reshuffle changed the denotation of " + pretty(t));
        continue;
      }
      TermPtr nf1 = rw.normalize(t).final_term;
      TermPtr nf2 = rw.normalize(t2).final_term;
      if (!term_eq(nf1, nf2))
        r.fail(i, t2,
               "equal denotations but distinct normal forms: " + pretty(nf1) +
                   "  vs  " + pretty(nf2) + " (from " + pretty(t) + ")");
    } catch (const std::exception& e) {
      r.fail(i, t2, std::string("evaluation failed: ") + e.what());
    }
  }
  return r.report;
}

// ---- substitution lemma --------------------------------------------------------

PropertyReport prop_substitution(const GenConfig& cfg) {
  Runner r{cfg, {"substitution_lemma", cfg.seed}};
  TermGen gen(cfg);
  int attempts = 0;
  while (r.report.cases < cfg.count && attempts++ < cfg.count * 30) {
    TypePtr dom, cod;
    if (gen.rand_below(2)) {
      dom = Type::bools(1 + static_cast<int>(gen.rand_below(2)));
      cod = gen.rand_below(2) ? Type::span(Type::boolean()) : Type::boolean();
    } else {
      dom = Type::span(Type::boolean());
      cod = Type::span(Type::bools(1 + static_cast<int>(gen.rand_below(2))));
    }
    TermPtr f = gen.next_at(Type::arrow(dom, cod));
    if (f->kind() != Term::Kind::Lam) continue;
    const std::string& x = f->var_name();
    TermPtr body = f->child(0);
    TermPtr arg = gen.next_at(dom);
    Context ctx{{x, dom}};
    TypedPtr tbody;
    try {
      tbody = synthesize(ctx, body);
    } catch (const TypeError&) {
      continue;
    }
    TypePtr a = tbody->used_type();
    if (!is_ground_type(a)) continue;
    ++r.report.cases;
    try {
      SemPtr direct =
          denote(check({}, substitute(body, x, arg), a), cfg.ring);
      Env env{{x, denote(check({}, arg, dom), cfg.ring)}};
      SemPtr via_env = denote(check(ctx, body, a), env, cfg.ring);
      if (sem_eq(direct, via_env, a, cfg.ring) != TriBool::True)
        r.fail(r.report.cases, f,
               "substituting " + pretty(arg) + ": " + render_sem(direct, a) +
                   "  vs  " + render_sem(via_env, a));
    } catch (const std::exception& e) {
      r.fail(r.report.cases, f, std::string("evaluation failed: ") + e.what());
    }
  }
  return r.report;
}

// ---- derivation independence ----------------------------------------------------

// A legal but non-canonical derivation of t at `goal`: the commuting rule is
// applied above the S_I lifts instead of below.
TypedPtr alternative_derivation(const TermPtr& t, const TypePtr& goal) {
  switch (t->kind()) {
    case Term::Kind::Scale: {
      TypedPtr premise = check({}, t->child(0), goal);
      return std::make_shared<TypedTerm>(t, TyRule::AlphaI, goal, goal,
                                         std::vector<TypedPtr>{premise});
    }
    case Term::Kind::Sum: {
      std::vector<TypedPtr> premises;
      for (const auto& p : t->children())
        premises.push_back(check({}, p, goal));
      return std::make_shared<TypedTerm>(t, TyRule::PlusI, goal, goal,
                                         std::move(premises));
    }
    case Term::Kind::App: {
      TypedPtr can = check({}, t, goal);
      if (can->rule() != TyRule::ArrowE || can->lifts() < 1) return nullptr;
      const TypedPtr& fun = can->premises()[0];
      const TypedPtr& arg = can->premises()[1];
      auto lift1 = [](const TypedPtr& n) {
        return std::make_shared<TypedTerm>(n->term(), n->rule(), n->rule_type(),
                                           Type::span(n->used_type()),
                                           n->premises());
      };
      TypePtr cod = Type::span(can->rule_type());
      return std::make_shared<TypedTerm>(
          t, TyRule::ArrowES, cod, goal,
          std::vector<TypedPtr>{lift1(fun), lift1(arg)});
    }
    default:
      return nullptr;
  }
}

PropertyReport prop_derivation_independence(const GenConfig& cfg) {
  Runner r{cfg, {"derivation_independence", cfg.seed}};
  Rewriter rw(cfg.ring);

  auto compare = [&](int idx, const TermPtr& t, const TypePtr& goal) {
    TypedPtr alt = alternative_derivation(t, goal);
    if (!alt) return false;
    ++r.report.cases;
    try {
      SemPtr v1 = denote(check({}, t, goal), cfg.ring);
      SemPtr v2 = denote(alt, cfg.ring);
      if (!sem_struct_eq(v1, v2))
        r.fail(idx, t,
               "derivations disagree at " + pretty_type(goal) + ": " +
                   render_sem(v1, goal) + "  vs  " + render_sem(v2, goal));
    } catch (const std::exception& e) {
      r.fail(idx, t, std::string("evaluation failed: ") + e.what());
    }
    return true;
  };

  // the double-derivation example: 1.zero[B] at S(S(B))
  RingId ring = cfg.ring;
  TypePtr ssb = Type::span(Type::span(Type::boolean()));
  compare(-1, Term::scale(Scalar::one(ring), Term::zero_vec(Type::boolean())),
          ssb);
  // a sum lifted one level
  compare(-2, Term::sum({Term::ket0(), Term::ket1()}), ssb);

  TermGen gen(cfg);
  int produced = 0, attempts = 0;
  while (produced < cfg.count && attempts++ < cfg.count * 30) {
    TermPtr t = gen.next();
    TypePtr m;
    try {
      m = synthesize({}, t)->used_type();
    } catch (const TypeError&) {
      continue;
    }
    if (!is_ground_type(m)) continue;
    if (compare(produced, t, Type::span(m))) ++produced;
  }
  return r.report;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{
      "subject_reduction",    "soundness_per_step",
      "strong_normalization", "local_confluence",
      "completeness_ground",  "substitution_lemma",
      "derivation_independence"};
  return names;
}

PropertyReport run_property(const std::string& name, const GenConfig& cfg) {
  if (name == "subject_reduction") return prop_subject_reduction(cfg);
  if (name == "soundness_per_step") return prop_soundness(cfg);
  if (name == "strong_normalization") return prop_strong_normalization(cfg);
  if (name == "local_confluence") return prop_local_confluence(cfg);
  if (name == "completeness_ground") return prop_completeness(cfg);
  if (name == "substitution_lemma") return prop_substitution(cfg);
  if (name == "derivation_independence")
    return prop_derivation_independence(cfg);
  throw internal_error("unknown property: " + name);
}

std::vector<PropertyReport> run_all_properties(const GenConfig& cfg) {
  std::vector<PropertyReport> out;
  for (const auto& n : property_names()) {
    GenConfig c = cfg;
    if (n == "subject_reduction") {
      c.max_size = std::min(cfg.max_size, 10);
    } else if (n == "strong_normalization") {
      c.max_size = 12;
    } else if (n == "local_confluence") {
      c.max_size = std::min(cfg.max_size, 8);
      c.count = std::max(1, cfg.count * 2 / 5);
    } else if (n == "soundness_per_step") {
      c.count = std::max(1, cfg.count * 3 / 5);
    } else if (n == "completeness_ground") {
      c.count = std::max(1, cfg.count / 5);
    } else if (n == "substitution_lemma") {
      c.count = std::max(1, cfg.count * 2 / 5);
    } else if (n == "derivation_independence") {
      c.count = std::max(1, cfg.count / 5);
    }
    out.push_back(run_property(n, c));
  }
  return out;
}

}  // namespace lams
