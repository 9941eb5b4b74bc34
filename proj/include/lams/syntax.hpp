#pragma once

#include "lams/scalar.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lams {

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Types: B, products (right-associated), spans S(.), first-order arrows.
// ---------------------------------------------------------------------------

class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
 public:
  enum class Kind : std::uint8_t { Bool, Prod, Span, Arrow };

  Kind kind() const { return kind_; }
  const TypePtr& left() const { return left_; }    // Prod left, Arrow domain
  const TypePtr& right() const { return right_; }  // Prod right, Arrow codomain
  const TypePtr& inner() const { return left_; }   // Span payload

  static TypePtr boolean();
  /// Right-associated product of qubit types.
  static TypePtr prod(TypePtr l, TypePtr r);
  static TypePtr span(TypePtr inner);
  /// Arrow with a qubit-type domain.
  static TypePtr arrow(TypePtr dom, TypePtr cod);
  /// B^n, right-associated, with B^1 = B.
  static TypePtr bools(int n);

 private:
  Type(Kind k, TypePtr l, TypePtr r) : kind_(k), left_(std::move(l)), right_(std::move(r)) {}
  Kind kind_;
  TypePtr left_, right_;
};

int type_cmp(const TypePtr& a, const TypePtr& b);
bool type_eq(const TypePtr& a, const TypePtr& b);

/// True for B^n.
bool is_basis_type(const TypePtr& t);
/// Width n of B^n; 0 if not a basis type.
int basis_width(const TypePtr& t);
/// True for the qubit grammar (no arrows anywhere).
bool is_qubit_type(const TypePtr& t);
/// True when the type mentions no arrows: B^n and products/spans thereof.
bool is_ground_type(const TypePtr& t);
/// Number of outer S layers.
int span_depth(const TypePtr& t);
/// Type with all outer S layers removed.
TypePtr strip_spans(const TypePtr& t);
/// S^n(t).
TypePtr add_spans(const TypePtr& t, int n);

std::string pretty_type(const TypePtr& t);

// ---------------------------------------------------------------------------
// Terms: AST with AC-canonical n-ary sums.
// ---------------------------------------------------------------------------

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  // Tag order is the primary key of the term order; basis constructors come
  // first so unscaled basis summands sort ahead of their scaled copies.
  enum class Kind : std::uint8_t {
    Var,
    Ket0,
    Ket1,
    Lam,
    Ite,
    Zero,
    Times,
    Head,
    Tail,
    CastR,
    CastL,
    App,
    Scale,
    Sum,
  };

  Kind kind() const { return kind_; }

  const std::string& var_name() const { return name_; }
  const TypePtr& lam_annot() const { return type_; }
  const TypePtr& zero_annot() const { return type_; }
  const Scalar& scalar() const { return scalar_; }

  // Children by role. Lam: [body]; App: [fun, arg]; Ite: [then, else];
  // Times: [left, right]; Head/Tail/CastR/CastL: [body]; Scale: [body];
  // Sum: summands (>= 2, flattened, sorted).
  const std::vector<TermPtr>& children() const { return kids_; }
  const TermPtr& child(size_t i) const { return kids_[i]; }

  static TermPtr var(std::string name);
  static TermPtr ket0();
  static TermPtr ket1();
  static TermPtr lam(std::string var, TypePtr annot, TermPtr body);
  static TermPtr app(TermPtr fun, TermPtr arg);
  static TermPtr ite(TermPtr then_branch, TermPtr else_branch);
  static TermPtr zero_vec(TypePtr annot);
  static TermPtr times(TermPtr l, TermPtr r);
  static TermPtr head(TermPtr body);
  static TermPtr tail(TermPtr body);
  static TermPtr cast_r(TermPtr body);
  static TermPtr cast_l(TermPtr body);
  static TermPtr scale(Scalar s, TermPtr body);
  /// AC-canonical sum: flattens nested sums, sorts by the term order,
  /// returns the single element for a one-element list. Empty list is a
  /// usage error.
  static TermPtr sum(std::vector<TermPtr> parts);

 private:
  explicit Term(Kind k) : kind_(k) {}
  Kind kind_;
  std::string name_;
  TypePtr type_;
  Scalar scalar_;
  std::vector<TermPtr> kids_;
};

/// Fixed total order on raw syntax: constructor tag, then recursive
/// comparison. Stable across runs; used to canonicalize AC sums.
int term_cmp(const TermPtr& a, const TermPtr& b);
bool term_eq(const TermPtr& a, const TermPtr& b);

/// Basis-term grammar: variables, abstractions, kets, products of basis terms.
bool is_basis_term(const TermPtr& t);
/// Value grammar: basis terms, sums of values, zero vectors, scaled values,
/// products of values.
bool is_value(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
bool is_closed(const TermPtr& t);

/// Capture-avoiding substitution of a closed term r for x; canonical form of
/// sums is re-established.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& r);

std::string pretty(const TermPtr& t);
size_t term_size(const TermPtr& t);

}  // namespace lams
