#include "lams/denote.hpp"

#include <algorithm>
#include <atomic>

namespace lams {

namespace {

std::atomic<std::uint64_t> next_closure_id{1};

}  // namespace

SemPtr SemValue::bit(int b) {
  auto v = new SemValue(Kind::Bit);
  v->bit_ = b;
  return SemPtr(v);
}

SemPtr SemValue::tuple(SemPtr fst, SemPtr snd) {
  auto v = new SemValue(Kind::Tuple);
  v->fst_ = std::move(fst);
  v->snd_ = std::move(snd);
  return SemPtr(v);
}

SemPtr SemValue::lin(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return sem_cmp(a.key, b.key) < 0; });
  std::vector<Entry> merged;
  for (auto& e : entries) {
    if (!merged.empty() && sem_cmp(merged.back().key, e.key) == 0)
      merged.back().coef = merged.back().coef + e.coef;
    else
      merged.push_back(std::move(e));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Entry& e) { return e.coef.is_zero(); }),
               merged.end());
  auto v = new SemValue(Kind::Lin);
  v->lin_ = std::move(merged);
  return SemPtr(v);
}

SemPtr SemValue::lam_closure(Env env, std::string var, TypedPtr body) {
  auto v = new SemValue(Kind::Closure);
  v->env_ = std::move(env);
  v->var_ = std::move(var);
  v->body_ = std::move(body);
  v->id_ = next_closure_id.fetch_add(1);
  return SemPtr(v);
}

SemPtr SemValue::ite_closure(Env env, TypedPtr then_b, TypedPtr else_b) {
  auto v = new SemValue(Kind::Closure);
  v->ite_ = true;
  v->env_ = std::move(env);
  v->body_ = std::move(then_b);
  v->else_ = std::move(else_b);
  v->id_ = next_closure_id.fetch_add(1);
  return SemPtr(v);
}

int sem_cmp(const SemPtr& a, const SemPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case SemValue::Kind::Bit:
      return a->bit() - b->bit();
    case SemValue::Kind::Tuple:
      if (int k = sem_cmp(a->fst(), b->fst())) return k;
      return sem_cmp(a->snd(), b->snd());
    case SemValue::Kind::Lin: {
      const auto& la = a->lin();
      const auto& lb = b->lin();
      if (la.size() != lb.size()) return la.size() < lb.size() ? -1 : 1;
      for (size_t i = 0; i < la.size(); ++i) {
        if (int k = sem_cmp(la[i].key, lb[i].key)) return k;
        if (int k = la[i].coef.compare(lb[i].coef)) return k;
      }
      return 0;
    }
    case SemValue::Kind::Closure:
      return a->closure_id() < b->closure_id()
                 ? -1
                 : (a->closure_id() == b->closure_id() ? 0 : 1);
  }
  return 0;
}

bool sem_struct_eq(const SemPtr& a, const SemPtr& b) { return sem_cmp(a, b) == 0; }

namespace {

const std::vector<SemValue::Entry>& as_lin(const SemPtr& v, const char* who) {
  if (v->kind() != SemValue::Kind::Lin)
    throw internal_error(std::string(who) + ": expected a combination");
  return v->lin();
}

}  // namespace

SemPtr unit_eta(RingId ring, const SemPtr& v) {
  return SemValue::lin({{v, Scalar::one(ring)}});
}

SemPtr mu_flatten(const SemPtr& vv) {
  std::vector<SemValue::Entry> out;
  for (const auto& outer : as_lin(vv, "mu_flatten")) {
    for (const auto& inner : as_lin(outer.key, "mu_flatten"))
      out.push_back({inner.key, outer.coef * inner.coef});
  }
  return SemValue::lin(std::move(out));
}

SemPtr vadd(const SemPtr& x, const SemPtr& y) {
  std::vector<SemValue::Entry> out = as_lin(x, "vadd");
  const auto& ly = as_lin(y, "vadd");
  out.insert(out.end(), ly.begin(), ly.end());
  return SemValue::lin(std::move(out));
}

SemPtr scale_sem(const Scalar& alpha, const SemPtr& x) {
  std::vector<SemValue::Entry> out;
  for (const auto& e : as_lin(x, "scale_sem"))
    out.push_back({e.key, alpha * e.coef});
  return SemValue::lin(std::move(out));
}

SemPtr scale_at_depth(const Scalar& alpha, const SemPtr& x, int m) {
  if (m <= 1) return scale_sem(alpha, x);
  std::vector<SemValue::Entry> out;
  for (const auto& e : as_lin(x, "scale_at_depth"))
    out.push_back({scale_at_depth(alpha, e.key, m - 1), e.coef});
  return SemValue::lin(std::move(out));
}

SemPtr tensor_pair(const SemPtr& x, const SemPtr& y) {
  std::vector<SemValue::Entry> out;
  for (const auto& ex : as_lin(x, "tensor_pair"))
    for (const auto& ey : as_lin(y, "tensor_pair"))
      out.push_back({SemValue::tuple(ex.key, ey.key), ex.coef * ey.coef});
  return SemValue::lin(std::move(out));
}

SemPtr sum_at_depth(const SemPtr& x, const SemPtr& y, int m) {
  if (m <= 1) return vadd(x, y);
  std::vector<SemValue::Entry> out;
  for (const auto& ex : as_lin(x, "sum_at_depth"))
    for (const auto& ey : as_lin(y, "sum_at_depth"))
      out.push_back({sum_at_depth(ex.key, ey.key, m - 1), ex.coef * ey.coef});
  return SemValue::lin(std::move(out));
}

SemPtr cast_distribute(const SemPtr& x, int k, CastSide side) {
  SemPtr cur = x;
  for (int round = 0; round < k; ++round) {
    std::vector<SemValue::Entry> out;
    for (const auto& e : as_lin(cur, "cast_distribute")) {
      if (e.key->kind() != SemValue::Kind::Tuple)
        throw internal_error("cast_distribute: expected tuple keys");
      const SemPtr& nested =
          side == CastSide::Right ? e.key->fst() : e.key->snd();
      const SemPtr& kept = side == CastSide::Right ? e.key->snd() : e.key->fst();
      for (const auto& inner : as_lin(nested, "cast_distribute")) {
        SemPtr key = side == CastSide::Right ? SemValue::tuple(inner.key, kept)
                                             : SemValue::tuple(kept, inner.key);
        out.push_back({std::move(key), e.coef * inner.coef});
      }
    }
    cur = SemValue::lin(std::move(out));
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Interpretation of the canonical derivation
// ---------------------------------------------------------------------------

SemPtr sem_apply(const SemPtr& fun, const SemPtr& arg, RingId ring) {
  if (fun->kind() != SemValue::Kind::Closure)
    throw internal_error("sem_apply: not a function value");
  if (fun->closure_is_ite()) {
    if (arg->kind() != SemValue::Kind::Bit)
      throw internal_error("sem_apply: conditional expects a bit");
    const TypedPtr& branch =
        arg->bit() == 1 ? fun->closure_body() : fun->closure_else();
    return denote(branch, fun->closure_env(), ring);
  }
  Env env = fun->closure_env();
  env[fun->closure_var()] = arg;
  return denote(fun->closure_body(), env, ring);
}

SemPtr denote(const TypedPtr& t, const Env& env, RingId ring) {
  SemPtr v;
  switch (t->rule()) {
    case TyRule::Ax: {
      auto it = env.find(t->term()->var_name());
      if (it == env.end())
        throw internal_error("denote: environment misses " +
                             t->term()->var_name());
      v = it->second;
      break;
    }
    case TyRule::AxKet0:
      v = SemValue::bit(0);
      break;
    case TyRule::AxKet1:
      v = SemValue::bit(1);
      break;
    case TyRule::Ax0:
      v = SemValue::lin_zero();
      break;
    case TyRule::AlphaI: {
      int m = span_depth(t->rule_type());
      v = scale_at_depth(t->term()->scalar(), denote(t->premises()[0], env, ring),
                         m);
      break;
    }
    case TyRule::PlusI: {
      int m = span_depth(t->rule_type());
      v = denote(t->premises()[0], env, ring);
      for (size_t i = 1; i < t->premises().size(); ++i)
        v = sum_at_depth(v, denote(t->premises()[i], env, ring), m);
      break;
    }
    case TyRule::If:
      v = SemValue::ite_closure(env, t->premises()[0], t->premises()[1]);
      break;
    case TyRule::ArrowI:
      v = SemValue::lam_closure(env, t->term()->var_name(), t->premises()[0]);
      break;
    case TyRule::ArrowE: {
      SemPtr f = denote(t->premises()[0], env, ring);
      SemPtr a = denote(t->premises()[1], env, ring);
      v = sem_apply(f, a, ring);
      break;
    }
    case TyRule::ArrowES: {
      SemPtr f = denote(t->premises()[0], env, ring);
      SemPtr a = denote(t->premises()[1], env, ring);
      // n then Um pairs the combinations; US(eps) applies pointwise
      std::vector<SemValue::Entry> out;
      for (const auto& ef : as_lin(f, "=>_ES"))
        for (const auto& ea : as_lin(a, "=>_ES"))
          out.push_back({sem_apply(ef.key, ea.key, ring), ef.coef * ea.coef});
      v = SemValue::lin(std::move(out));
      break;
    }
    case TyRule::TimesI:
      v = SemValue::tuple(denote(t->premises()[0], env, ring),
                          denote(t->premises()[1], env, ring));
      break;
    case TyRule::TimesEr:
    case TyRule::TimesEl: {
      SemPtr p = denote(t->premises()[0], env, ring);
      if (p->kind() != SemValue::Kind::Tuple)
        throw internal_error("denote: head/tail of a non-tuple");
      v = t->rule() == TyRule::TimesEr ? p->fst() : p->snd();
      break;
    }
    case TyRule::CastR:
    case TyRule::CastL: {
      bool right = t->rule() == TyRule::CastR;
      const TypedPtr& body = t->premises()[0];
      TypePtr prod = strip_spans(body->used_type());
      int k = span_depth(right ? prod->left() : prod->right());
      v = cast_distribute(denote(body, env, ring), k,
                          right ? CastSide::Right : CastSide::Left);
      break;
    }
  }
  for (int i = 0; i < t->lifts(); ++i) v = unit_eta(ring, v);
  return v;
}

// ---------------------------------------------------------------------------
// Equality and rendering
// ---------------------------------------------------------------------------

TriBool sem_eq(const SemPtr& x, const SemPtr& y, const TypePtr& at,
               RingId ring) {
  switch (at->kind()) {
    case Type::Kind::Bool:
      return x->bit() == y->bit() ? TriBool::True : TriBool::False;
    case Type::Kind::Prod: {
      TriBool a = sem_eq(x->fst(), y->fst(), at->left(), ring);
      if (a != TriBool::True) return a;
      return sem_eq(x->snd(), y->snd(), at->right(), ring);
    }
    case Type::Kind::Span:
      // Combinations are canonical maps: structural equality decides, but
      // only where keys are honest data (no closures).
      if (!is_ground_type(at->inner())) return TriBool::Incomparable;
      return sem_struct_eq(x, y) ? TriBool::True : TriBool::False;
    case Type::Kind::Arrow: {
      int n = basis_width(at->left());
      if (n == 0) return TriBool::Incomparable;
      std::vector<SemPtr> inputs{SemValue::bit(0), SemValue::bit(1)};
      for (int extra = 1; extra < n; ++extra) {
        std::vector<SemPtr> next;
        for (const auto& bit : {SemValue::bit(0), SemValue::bit(1)})
          for (const auto& rest : inputs)
            next.push_back(SemValue::tuple(bit, rest));
        inputs = std::move(next);
      }
      for (const auto& in : inputs) {
        TriBool r = sem_eq(sem_apply(x, in, ring), sem_apply(y, in, ring),
                           at->right(), ring);
        if (r != TriBool::True) return r;
      }
      return TriBool::True;
    }
  }
  return TriBool::Incomparable;
}

namespace {

bool render_bits(const SemPtr& v, std::string& bits) {
  if (v->kind() == SemValue::Kind::Bit) {
    bits += v->bit() ? '1' : '0';
    return true;
  }
  if (v->kind() == SemValue::Kind::Tuple)
    return render_bits(v->fst(), bits) && render_bits(v->snd(), bits);
  return false;
}

}  // namespace

std::string render_sem(const SemPtr& v, const TypePtr& at) {
  switch (at->kind()) {
    case Type::Kind::Bool:
      return v->bit() ? "|1>" : "|0>";
    case Type::Kind::Prod: {
      if (is_basis_type(at)) {
        std::string bits;
        if (render_bits(v, bits)) return "|" + bits + ">";
      }
      return "(" + render_sem(v->fst(), at->left()) + ", " +
             render_sem(v->snd(), at->right()) + ")";
    }
    case Type::Kind::Span: {
      const auto& entries = v->lin();
      if (entries.empty()) return "0 : " + pretty_type(at);
      std::string out;
      for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += " + ";
        std::string key = render_sem(entries[i].key, at->inner());
        if (at->inner()->kind() == Type::Kind::Span) key = "(" + key + ")";
        out += entries[i].coef.display() + " " + key;
      }
      return out;
    }
    case Type::Kind::Arrow:
      return "<function>";
  }
  return "?";
}

}  // namespace lams
