#include "lams/generate.hpp"

namespace lams {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct retry : std::exception {};

}  // namespace

TermGen::TermGen(GenConfig cfg) : cfg_(std::move(cfg)), state_(cfg_.seed) {}

std::uint64_t TermGen::rand_below(std::uint64_t n) {
  return n ? splitmix64(state_) % n : 0;
}

Scalar TermGen::pick_scalar() {
  RingId r = cfg_.ring;
  switch (rand_below(r == RingId::QSqrt2I ? 7 : (r == RingId::Q ? 5 : 3))) {
    case 0: return Scalar::from_int(r, 2);
    case 1: return Scalar::from_int(r, 3);
    case 2: return -Scalar::one(r);
    case 3: return Scalar::from_rational(r, BigRat(1, 2));
    case 4: return Scalar::from_rational(r, BigRat(-2, 3));
    case 5: return Scalar::sqrt2(r) * Scalar::from_rational(r, BigRat(1, 2));
    default: return Scalar::i(r);
  }
}

std::pair<Scalar, Scalar> TermGen::pick_unit() {
  RingId r = cfg_.ring;
  switch (rand_below(r == RingId::QSqrt2I ? 4 : (r == RingId::Q ? 2 : 1))) {
    case 0:
      return {-Scalar::one(r), -Scalar::one(r)};
    case 1:
      return {Scalar::from_int(r, 2), Scalar::from_rational(r, BigRat(1, 2))};
    case 2:
      return {Scalar::sqrt2(r),
              Scalar::sqrt2(r) * Scalar::from_rational(r, BigRat(1, 2))};
    default:
      return {Scalar::i(r), -Scalar::i(r)};
  }
}

namespace {

struct Binding {
  std::string name;
  TypePtr type;
};

}  // namespace

// Type-directed construction. Basis-typed bindings are freely reusable; a
// linear binding is threaded to exactly one leaf via the `linear` slot.
struct GenImpl {
  TermGen& g;
  RingId ring;
  std::vector<Binding> basis_vars;
  std::optional<Binding> linear;  // must be consumed exactly once
  int fuel = 0;

  std::uint64_t pick(std::uint64_t n) { return g.rand_below(n); }
  bool coin(int pct) { return pick(100) < static_cast<std::uint64_t>(pct); }

  bool linear_fits(const TypePtr& goal) {
    return linear && type_eq(linear->type, goal);
  }

  TermPtr use_linear() {
    TermPtr v = Term::var(linear->name);
    linear.reset();
    return v;
  }

  // A term whose minimal type is exactly `goal`.
  TermPtr gen(const TypePtr& goal, bool value_only) {
    --fuel;
    switch (goal->kind()) {
      case Type::Kind::Bool:
        return gen_bool(value_only);
      case Type::Kind::Prod:
        return gen_prod(goal, value_only);
      case Type::Kind::Span:
        return gen_span(goal, value_only);
      case Type::Kind::Arrow:
        return gen_fun(goal);
    }
    throw retry{};
  }

  TermPtr gen_bool(bool value_only) {
    if (linear_fits(Type::boolean())) return use_linear();
    // reuse a basis variable of type B when one is around
    std::vector<const Binding*> hits;
    for (const auto& b : basis_vars)
      if (type_eq(b.type, Type::boolean())) hits.push_back(&b);
    if (!hits.empty() && coin(35)) return Term::var(hits[pick(hits.size())]->name);
    if (fuel > 4 && !value_only && !linear && coin(45)) {
      switch (pick(3)) {
        case 0: {  // head of a basis product
          int n = 2 + static_cast<int>(fuel > 6 ? pick(2) : 0);
          fuel -= n;
          return Term::head(gen(Type::bools(n), false));
        }
        case 1: {  // if-application on a basis condition
          fuel -= 2;
          TermPtr c = gen_bool(true);
          return Term::app(Term::ite(gen_bool(true), gen_bool(true)), c);
        }
        default:  // call-by-base redex
          return gen_cbb_app(Type::boolean(), /*superposed_arg=*/false);
      }
    }
    return pick(2) ? Term::ket1() : Term::ket0();
  }

  TermPtr gen_prod(const TypePtr& goal, bool value_only) {
    if (linear_fits(goal)) return use_linear();
    if (is_basis_type(goal) && fuel > 5 && !value_only && !linear && coin(20)) {
      // tail of a longer list
      int n = basis_width(goal);
      fuel -= 2;
      return Term::tail(gen(Type::bools(n + 1), false));
    }
    // split the linear obligation into one component
    bool to_left = linear ? pick(2) == 0 : false;
    std::optional<Binding> saved = linear;
    TermPtr l, r;
    if (saved) {
      linear = to_left ? saved : std::nullopt;
      l = gen(goal->left(), value_only);
      if (to_left && linear) throw retry{};  // obligation not consumed
      linear = to_left ? std::nullopt : saved;
      r = gen(goal->right(), value_only);
      if (!to_left && linear) throw retry{};
    } else {
      l = gen(goal->left(), value_only);
      r = gen(goal->right(), value_only);
    }
    return Term::times(std::move(l), std::move(r));
  }

  TermPtr gen_span(const TypePtr& goal, bool value_only) {
    if (linear_fits(goal)) {
      // route the obligation through a span production some of the time
      if (coin(50)) return use_linear();
    }
    const TypePtr& inner = goal->inner();
    int n = static_cast<int>(pick(10));
    if (fuel <= 1) n = 9;  // cheapest productions when out of budget
    switch (n) {
      case 0:  // zero vector
        if (linear) break;
        if (!is_ground_type(inner)) break;
        return Term::zero_vec(inner);
      case 1: {  // sum
        if (fuel < 4) break;
        size_t parts = 2 + (fuel > 8 ? pick(2) : 0);
        size_t with_linear = linear ? pick(parts) : parts;
        std::optional<Binding> saved = linear;
        std::vector<TermPtr> ps;
        for (size_t i = 0; i < parts; ++i) {
          linear = (saved && i == with_linear) ? saved : std::nullopt;
          ps.push_back(gen_span_summand(goal, value_only));
          if (saved && i == with_linear && linear) throw retry{};
        }
        linear.reset();
        return Term::sum(std::move(ps));
      }
      case 2:  // scale
        return Term::scale(g.pick_scalar(), gen_span(goal, value_only));
      case 3: {  // quantum-if application
        if (value_only || fuel < 6) break;
        if (inner->kind() == Type::Kind::Arrow) break;
        if (linear && !linear_fits(Type::span(Type::boolean()))) break;
        fuel -= 2;
        TermPtr arg = linear_fits(Type::span(Type::boolean()))
                          ? use_linear()
                          : gen_span_value(Type::span(Type::boolean()));
        return Term::app(Term::ite(gen(inner, false), gen(inner, false)), arg);
      }
      case 4:  // call-by-base application with a superposed argument
        if (value_only || linear || fuel < 6) break;
        if (inner->kind() == Type::Kind::Arrow) break;
        return gen_cbb_app(inner, /*superposed_arg=*/true);
      case 5:  // call-by-name redex
        if (value_only || fuel < 7) break;
        if (inner->kind() == Type::Kind::Arrow) break;
        return gen_cbn_app(goal);
      case 6: {  // casting
        if (inner->kind() != Type::Kind::Prod || fuel < 3) break;
        bool right = pick(2) == 0;
        const TypePtr& moved = right ? inner->left() : inner->right();
        const TypePtr& kept = right ? inner->right() : inner->left();
        if (moved->kind() == Type::Kind::Span) break;
        auto one_pair = [&]() {
          TermPtr m = gen_span_value(Type::span(moved));
          TermPtr k = gen_exact_value(kept);
          return right ? Term::times(std::move(m), std::move(k))
                       : Term::times(std::move(k), std::move(m));
        };
        TermPtr body;
        if (!linear && fuel > 6 && coin(35)) {
          // expose the cast-through-sum and cast-through-scale rules
          body = coin(50) ? Term::sum({one_pair(), one_pair()})
                          : Term::scale(g.pick_scalar(), one_pair());
        } else if (linear) {
          std::optional<Binding> saved = linear;
          bool to_moved = pick(2) == 0;
          linear = to_moved ? saved : std::nullopt;
          TermPtr m = gen_span_value(Type::span(moved));
          if (to_moved && linear) throw retry{};
          linear = to_moved ? std::nullopt : saved;
          TermPtr k = gen(kept, true);
          if (!to_moved && linear) throw retry{};
          body = right ? Term::times(std::move(m), std::move(k))
                       : Term::times(std::move(k), std::move(m));
        } else {
          body = one_pair();
        }
        return right ? Term::cast_r(std::move(body)) : Term::cast_l(std::move(body));
      }
      case 7: {  // combinations of functions in head position
        if (value_only || linear || fuel < 6) break;
        if (inner->kind() == Type::Kind::Arrow) break;
        TypePtr dom = Type::bools(1 + static_cast<int>(pick(2)));
        TermPtr fun;
        switch (pick(3)) {
          case 0:
            fun = Term::zero_vec(Type::arrow(dom, inner));
            break;
          case 1: {
            std::string x = fresh();
            fun = Term::scale(g.pick_scalar(),
                              Term::lam(x, dom, gen_exact_value(inner)));
            break;
          }
          default: {
            std::string x = fresh(), y = fresh();
            fun = Term::sum({Term::lam(x, dom, gen_exact_value(inner)),
                             Term::lam(y, dom, gen_exact_value(inner))});
            break;
          }
        }
        return Term::app(std::move(fun), gen_value_at(dom));
      }
      case 8: {  // casting a zero vector with a nested-span annotation
        if (linear || inner->kind() != Type::Kind::Prod) break;
        bool right = pick(2) == 0;
        const TypePtr& moved = right ? inner->left() : inner->right();
        const TypePtr& kept = right ? inner->right() : inner->left();
        if (!is_basis_type(moved) || !is_ground_type(kept)) break;
        TypePtr lifted = add_spans(moved, 1 + static_cast<int>(pick(2)));
        TypePtr annot = right ? Type::prod(lifted, kept)
                              : Type::prod(kept, lifted);
        TermPtr z = Term::zero_vec(std::move(annot));
        return right ? Term::cast_r(std::move(z)) : Term::cast_l(std::move(z));
      }
      default:
        break;
    }
    // fallback: lift a term of the inner type
    if (inner->kind() == Type::Kind::Span) return gen_span(inner, value_only);
    return gen(inner, value_only);
  }

  // sum premises sit at the sum's span type; anything liftable to it works
  TermPtr gen_span_summand(const TypePtr& goal, bool value_only) {
    if (linear) {
      if (linear_fits(goal) && coin(60)) return use_linear();
      return gen_span(goal, value_only);  // embed the obligation below
    }
    if (coin(50)) return gen(goal->inner(), value_only);
    return gen_span(goal, value_only);
  }

  // A value whose minimal type is exactly S(...): a scale, sum of those, or
  // an annotated zero.
  TermPtr gen_span_value(const TypePtr& goal) {
    const TypePtr& inner = goal->inner();
    switch (pick(4)) {
      case 0:
        if (is_ground_type(inner)) return Term::zero_vec(inner);
        [[fallthrough]];
      case 1: {
        if (fuel < 4) break;
        std::vector<TermPtr> ps;
        size_t parts = 2 + (fuel > 6 ? pick(2) : 0);
        for (size_t i = 0; i < parts; ++i)
          ps.push_back(Term::scale(g.pick_scalar(), gen_value_at(inner)));
        return Term::sum(std::move(ps));
      }
      default:
        break;
    }
    return Term::scale(g.pick_scalar(), gen_value_at(inner));
  }

  // A value whose minimal type is exactly ty.
  TermPtr gen_exact_value(const TypePtr& ty) {
    switch (ty->kind()) {
      case Type::Kind::Span:
        return gen_span_value(ty);
      case Type::Kind::Prod:
        return Term::times(gen_exact_value(ty->left()),
                           gen_exact_value(ty->right()));
      default:
        return gen_value_at(ty);
    }
  }

  TermPtr gen_value_at(const TypePtr& ty) {
    --fuel;
    switch (ty->kind()) {
      case Type::Kind::Bool:
        return pick(2) ? Term::ket1() : Term::ket0();
      case Type::Kind::Prod:
        return Term::times(gen_value_at(ty->left()), gen_value_at(ty->right()));
      case Type::Kind::Span:
        return gen_span_value(ty);
      case Type::Kind::Arrow:
        return gen_fun(ty);
    }
    throw retry{};
  }

  // (\x:B^m. body) arg — beta or linear distribution depending on the
  // argument shape.
  TermPtr gen_cbb_app(const TypePtr& body_goal, bool superposed_arg) {
    fuel -= 2;
    int m = 1 + static_cast<int>(pick(2));
    TypePtr dom = Type::bools(m);
    std::string x = fresh();
    basis_vars.push_back({x, dom});
    TermPtr body = gen(body_goal, false);
    basis_vars.pop_back();
    TermPtr fun = Term::lam(x, dom, std::move(body));
    TermPtr arg = superposed_arg ? gen_span_value(Type::span(dom))
                                 : gen_value_at(dom);
    return Term::app(std::move(fun), std::move(arg));
  }

  // (\x:S(psi). body) arg with the bound variable used exactly once.
  TermPtr gen_cbn_app(const TypePtr& result_goal) {
    fuel -= 2;
    TypePtr dom = Type::span(pick(2) ? Type::boolean()
                                     : Type::bools(1 + static_cast<int>(pick(2))));
    std::string x = fresh();
    std::optional<Binding> saved = linear;
    linear = Binding{x, dom};
    TermPtr body = gen_span(result_goal, false);
    if (linear) {
      linear = saved;
      throw retry{};
    }
    linear = saved;
    return Term::app(Term::lam(x, dom, std::move(body)),
                     gen_span_value(dom));
  }

  TermPtr gen_fun(const TypePtr& goal) {
    const TypePtr& dom = goal->left();
    const TypePtr& cod = goal->right();
    if (dom->kind() == Type::Kind::Bool && coin(40))
      return Term::ite(gen(cod, false), gen(cod, false));
    std::string x = fresh();
    TermPtr body;
    if (is_basis_type(dom)) {
      basis_vars.push_back({x, dom});
      body = gen(cod, false);
      basis_vars.pop_back();
    } else {
      std::optional<Binding> saved = linear;
      linear = Binding{x, dom};
      if (cod->kind() != Type::Kind::Span) {
        linear = saved;
        throw retry{};
      }
      body = gen_span(cod, false);
      if (linear) {
        linear = saved;
        throw retry{};
      }
      linear = saved;
    }
    return Term::lam(x, dom, std::move(body));
  }

  std::string fresh() { return "x" + std::to_string(++var_counter); }
  int var_counter = 0;
};

TermPtr TermGen::next() {
  if (cfg_.target) return next_at(*cfg_.target);
  TypePtr b = Type::bools(1 + static_cast<int>(rand_below(cfg_.max_qubits)));
  switch (rand_below(5)) {
    case 0: return next_at(b);
    case 1: return next_at(Type::span(b));
    case 2:
      return next_at(Type::prod(Type::span(Type::boolean()),
                                Type::bools(1 + static_cast<int>(rand_below(2)))));
    case 3:
      return next_at(Type::span(Type::prod(Type::boolean(), Type::boolean())));
    default: return next_at(Type::span(b));
  }
}

TermPtr TermGen::next_at(const TypePtr& goal) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    GenImpl impl{*this, cfg_.ring};
    impl.fuel = cfg_.max_size;
    try {
      TermPtr t = impl.gen(goal, false);
      if (static_cast<int>(term_size(t)) > cfg_.max_size) continue;
      check({}, t, goal);  // self-check against the type checker
      if (!is_closed(t)) continue;
      return t;
    } catch (const retry&) {
    } catch (const TypeError&) {
    }
  }
  throw internal_error("term generation failed to converge at " +
                       pretty_type(goal));
}

}  // namespace lams
