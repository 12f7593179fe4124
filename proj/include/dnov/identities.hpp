#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dnov/algebra.hpp"

namespace dnov {

// Monomial of the free bi-magma: full binary tree, leaves labeled by variable
// slots 0..arity-1, internal nodes carrying one of two product symbols.
class Term {
public:
  static Term var(int v);
  static Term app(int product, const Term& l, const Term& r);

  bool is_leaf() const { return n_->var >= 0; }
  int var_index() const { return n_->var; }
  int product() const { return n_->prod; }
  Term left() const { return Term(n_->l); }
  Term right() const { return Term(n_->r); }

  bool uses_product(int p) const;
  std::string str(const std::vector<std::string>& var_names) const;

private:
  struct Node {
    int var = -1;
    int prod = 0;
    std::shared_ptr<const Node> l, r;
  };
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

inline Term P1(const Term& l, const Term& r) { return Term::app(0, l, r); }
inline Term P2(const Term& l, const Term& r) { return Term::app(1, l, r); }

struct FormalTerm {
  Scalar coeff;
  Term tree;
};

// Multilinear polynomial, stored as LHS - RHS; "satisfied" means identically
// zero.
struct FormalIdentity {
  std::string name;
  std::size_t arity = 0;
  std::vector<FormalTerm> terms;

  bool uses_p1 = false, uses_p2 = false;
  bool delta_parametric() const;
  FormalIdentity at_delta(const Rational& d) const;
  std::string str() const;
};

struct IdentityFamily {
  std::string name;
  std::vector<FormalIdentity> identities;

  std::size_t max_arity() const;
  bool uses_p2() const;
  bool delta_parametric() const;
  IdentityFamily at_delta(const Rational& d) const;
};

// Identity catalog, keyed by the CLI-facing names. Single identities come
// back as one-element families.
IdentityFamily catalog(const std::string& name);
std::vector<std::string> catalog_names();

// Which tensors the two product symbols refer to during evaluation.
struct ProductBinding {
  const Algebra* p1 = nullptr;
  const Algebra* p2 = nullptr;

  static ProductBinding of(const Algebra& a) { return {&a, nullptr}; }
  static ProductBinding of(const BiAlgebra& b) { return {&b.productA, &b.productB}; }
};

Vec evaluate_term(const Term& t, const ProductBinding& bind, const std::vector<Vec>& args);

// Value of the identity polynomial on the given argument vectors. Identity
// coefficients are instantiated at `delta` when provided, otherwise kept
// symbolic.
Vec evaluate(const FormalIdentity& id, const ProductBinding& bind,
             const std::vector<Vec>& args, const std::optional<Rational>& delta = {});

// Evaluate at a basis-index assignment (0-based indices).
Vec evaluate_on_basis(const FormalIdentity& id, const ProductBinding& bind,
                      const std::vector<std::size_t>& assignment,
                      const std::optional<Rational>& delta = {});

struct CheckReport {
  enum class Verdict { Satisfied, Violated, Conditional };
  Verdict verdict = Verdict::Satisfied;
  std::string identity_name;                        // failing member for families
  std::optional<std::vector<std::size_t>> witness;  // 1-based basis tuple, lex-least
  Vec defect;                                       // nonzero when violated
  // Symbolic mode: monic polynomials in delta that must all vanish.
  std::vector<DeltaPoly> delta_conditions;

  bool satisfied() const { return verdict == Verdict::Satisfied; }
};

// Exhaustive check over all basis tuples (sufficient by multilinearity).
// With `delta` given (or nothing delta-parametric in sight) the verdict is
// Satisfied/Violated; otherwise delta_conditions are collected and the
// verdict is Conditional unless they are empty.
CheckReport check(const FormalIdentity& id, const ProductBinding& bind,
                  std::size_t dim, const std::optional<Rational>& delta = {});
CheckReport check(const IdentityFamily& fam, const ProductBinding& bind,
                  std::size_t dim, const std::optional<Rational>& delta = {});

CheckReport check(const IdentityFamily& fam, const Algebra& a,
                  const std::optional<Rational>& delta = {});
CheckReport check(const IdentityFamily& fam, const BiAlgebra& b,
                  const std::optional<Rational>& delta = {});

struct AdmissibleDeltas {
  enum class Kind { All, Roots, Empty } kind = Kind::Empty;
  std::vector<Rational> roots;       // rational members of the admissible set
  std::vector<DeltaPoly> factors;    // monic factors of the condition gcd
  DeltaPoly condition_gcd;

  bool is_all() const { return kind == Kind::All; }
  bool is_empty() const { return kind == Kind::Empty; }
  bool equals_single_root(const Rational& r) const {
    return kind == Kind::Roots && roots.size() == 1 && roots[0] == r &&
           factors.size() == 1;
  }
};

// The gamma-column computation: the set of delta for which the (delta-free)
// algebra satisfies the delta-parametrized family.
AdmissibleDeltas admissible_deltas(const IdentityFamily& fam, const ProductBinding& bind,
                                   std::size_t dim);
AdmissibleDeltas admissible_deltas(const IdentityFamily& fam, const Algebra& a);
AdmissibleDeltas admissible_deltas(const IdentityFamily& fam, const BiAlgebra& b);

// Verifies the two linear expressions of TP through GD and GD through TP on
// all basis triples of B at delta = d. Throws ExcludedDelta at d = 1/2 (first
// combination) and d = -1 (second).
CheckReport gd_tp_combination_check(const BiAlgebra& b, const Rational& d);

}  // namespace dnov
