#pragma once

#include "lams/syntax.hpp"

#include <map>
#include <optional>
#include <set>

namespace lams {

/// Typing context: ordered map from variable to type. Bindings at basis types
/// B^n may be shared and dropped; all other bindings are linear.
using Context = std::map<std::string, TypePtr>;

enum class TypeErrorKind : std::uint8_t {
  UnboundVariable,
  LinearReuse,
  LinearUnused,
  AppMismatch,
  CastShape,
  HeadTailArity,
  AnnotationMismatch,
};

const char* type_error_kind_name(TypeErrorKind k);

struct TypeError : std::runtime_error {
  TypeError(TypeErrorKind kind, std::string rule, TermPtr offending,
            TypePtr expected, TypePtr found);
  TypeErrorKind kind;
  std::string rule;  // typing rule whose premise failed
  TermPtr offending;
  TypePtr expected;  // may be null
  TypePtr found;     // may be null
};

/// Typing rules (S_I is implicit: every node carries the count of trailing
/// S_I lifts as the gap between rule_type and used_type).
enum class TyRule : std::uint8_t {
  Ax,
  Ax0,
  AxKet0,
  AxKet1,
  AlphaI,
  PlusI,
  If,
  ArrowI,
  ArrowE,
  ArrowES,
  TimesI,
  TimesEr,
  TimesEl,
  CastR,
  CastL,
};

class TypedTerm;
using TypedPtr = std::shared_ptr<const TypedTerm>;

/// A node of the canonical type derivation: the subterm, the rule concluding
/// it, the rule's conclusion type, and the (possibly S_I-lifted) type the
/// occurrence is used at. Premises are elaborated at their premise types, so
/// the tree is exactly the appendix normal form with S_I pushed rootward.
class TypedTerm {
 public:
  TypedTerm(TermPtr term, TyRule rule, TypePtr rule_type, TypePtr used_type,
            std::vector<TypedPtr> premises)
      : term_(std::move(term)),
        rule_(rule),
        rule_type_(std::move(rule_type)),
        used_type_(std::move(used_type)),
        premises_(std::move(premises)) {}

  const TermPtr& term() const { return term_; }
  TyRule rule() const { return rule_; }
  const TypePtr& rule_type() const { return rule_type_; }
  const TypePtr& used_type() const { return used_type_; }
  const std::vector<TypedPtr>& premises() const { return premises_; }
  /// Trailing S_I applications above the rule.
  int lifts() const { return span_depth(used_type_) - span_depth(rule_type_); }

 private:
  TermPtr term_;
  TyRule rule_;
  TypePtr rule_type_;
  TypePtr used_type_;
  std::vector<TypedPtr> premises_;
};

/// Synthesizes the minimal type: the returned derivation is canonical and
/// every other derivable type is an outer-S lift of it permitted at the root.
/// `used` (if given) receives the linear variables consumed.
TypedPtr synthesize(const Context& ctx, const TermPtr& t,
                    std::set<std::string>* used = nullptr);

/// Derivation of ctx |- t : want, if one exists; the canonical tree again.
/// Fails with AnnotationMismatch when `want` is not reachable.
TypedPtr check(const Context& ctx, const TermPtr& t, const TypePtr& want,
               std::set<std::string>* used = nullptr);

inline TypePtr minimal_type(const TypedPtr& t) { return t->used_type(); }

/// Erases annotations back to the underlying term.
inline const TermPtr& erase(const TypedPtr& t) { return t->term(); }

}  // namespace lams
