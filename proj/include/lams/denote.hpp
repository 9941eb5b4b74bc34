#pragma once

#include "lams/typecheck.hpp"

#include <map>

namespace lams {

class SemValue;
using SemPtr = std::shared_ptr<const SemValue>;

/// Evaluation environment: one denotation per context binding.
using Env = std::map<std::string, SemPtr>;

/// Denotational value in the Set / free-module model: a basis element of B,
/// a tuple, a finite formal linear combination (free module layer), or a
/// semantic function (closure of a lambda or of a conditional).
class SemValue {
 public:
  enum class Kind : std::uint8_t { Bit, Tuple, Lin, Closure };

  struct Entry {
    SemPtr key;
    Scalar coef;
  };

  Kind kind() const { return kind_; }
  int bit() const { return bit_; }
  const SemPtr& fst() const { return fst_; }
  const SemPtr& snd() const { return snd_; }
  /// Canonical: sorted by key, no zero coefficients; empty map is the zero
  /// vector.
  const std::vector<Entry>& lin() const { return lin_; }

  bool closure_is_ite() const { return ite_; }
  const Env& closure_env() const { return env_; }
  const std::string& closure_var() const { return var_; }
  const TypedPtr& closure_body() const { return body_; }
  const TypedPtr& closure_else() const { return else_; }
  std::uint64_t closure_id() const { return id_; }

  static SemPtr bit(int b);
  static SemPtr tuple(SemPtr fst, SemPtr snd);
  /// Canonicalizes: merges duplicate keys, drops zero coefficients.
  static SemPtr lin(std::vector<Entry> entries);
  static SemPtr lin_zero() { return lin({}); }
  static SemPtr lam_closure(Env env, std::string var, TypedPtr body);
  static SemPtr ite_closure(Env env, TypedPtr then_b, TypedPtr else_b);

 private:
  explicit SemValue(Kind k) : kind_(k) {}
  Kind kind_;
  int bit_ = 0;
  SemPtr fst_, snd_;
  std::vector<Entry> lin_;
  bool ite_ = false;
  Env env_;
  std::string var_;
  TypedPtr body_, else_;
  std::uint64_t id_ = 0;
};

/// Total order on values; closures compare by creation id, which keeps Lin
/// maps deterministic but is never used to decide semantic equality.
int sem_cmp(const SemPtr& a, const SemPtr& b);
bool sem_struct_eq(const SemPtr& a, const SemPtr& b);

// ---- free-module monad and pairing ----------------------------------------

/// Monad unit: singleton combination {v -> 1}.
SemPtr unit_eta(RingId ring, const SemPtr& v);
/// Monad multiplication: weighted flattening of a combination of
/// combinations.
SemPtr mu_flatten(const SemPtr& vv);
/// Pointwise coefficient addition of two combinations over a common basis.
SemPtr vadd(const SemPtr& x, const SemPtr& y);
/// Coefficient scaling of the outermost combination layer.
SemPtr scale_sem(const Scalar& alpha, const SemPtr& x);
/// Scaling routed through m-1 outer layers (the alpha_I semantics at S-depth
/// m).
SemPtr scale_at_depth(const Scalar& alpha, const SemPtr& x, int m);
/// Bilinear pairing: (sum a_i u_i, sum b_j w_j) -> sum a_i b_j (u_i, w_j).
SemPtr tensor_pair(const SemPtr& x, const SemPtr& y);
/// Sum at S-depth m: collapse m-1 outer layers tensor-wise, then add
/// pointwise at the innermost layer (g_{m-1} followed by the internal sum).
SemPtr sum_at_depth(const SemPtr& x, const SemPtr& y, int m);

enum class CastSide : std::uint8_t { Right, Left };

/// k-fold distribution of a nested combination out of the designated tuple
/// component: sum_i a_i (sum_j c_ij u_ij, w_i) -> sum_ij a_i c_ij (u_ij, w_i).
SemPtr cast_distribute(const SemPtr& x, int k, CastSide side);

// ---- interpretation ---------------------------------------------------------

/// Interprets the canonical derivation in the free-module model over the
/// configured ring. env must cover the derivation's context.
SemPtr denote(const TypedPtr& t, const Env& env, RingId ring);
inline SemPtr denote(const TypedPtr& t, RingId ring) {
  return denote(t, Env{}, ring);
}

/// Applies a semantic function value to an argument.
SemPtr sem_apply(const SemPtr& fun, const SemPtr& arg, RingId ring);

enum class TriBool : std::uint8_t { False, True, Incomparable };

/// Decidable equality at the types where the model is injective on values:
/// structural at ground types and spans of them, extensional at arrows with
/// basis domain, Incomparable elsewhere.
TriBool sem_eq(const SemPtr& x, const SemPtr& y, const TypePtr& at, RingId ring);

/// Deterministic text rendering, e.g. "1/2*sqrt2 |00> + 1/2*sqrt2 |11>".
std::string render_sem(const SemPtr& v, const TypePtr& at);

}  // namespace lams
