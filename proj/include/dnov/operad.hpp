#pragma once

#include <array>
#include <map>
#include <optional>

#include "dnov/identities.hpp"

namespace dnov {
namespace operad {

// Planar binary tree shapes interned in a global registry; id 0 is the leaf.
using ShapeId = int;

ShapeId leaf_shape();
ShapeId node_shape(ShapeId l, ShapeId r);
int shape_leaves(ShapeId s);
ShapeId shape_left(ShapeId s);
ShapeId shape_right(ShapeId s);

// Shapes with n leaves in canonical order (left subtree size descending,
// recursively).
const std::vector<ShapeId>& shapes_of_degree(int n);

// Planar binary tree with leaves labeled by a permutation of 0..n-1, read
// left to right.
struct TreeMonomial {
  ShapeId shape = 0;
  std::vector<int> labels;

  int degree() const { return static_cast<int>(labels.size()); }
  std::string str(const std::vector<std::string>& var_names) const;
  friend bool operator==(const TreeMonomial& a, const TreeMonomial& b) {
    return a.shape == b.shape && a.labels == b.labels;
  }
  friend bool operator<(const TreeMonomial& a, const TreeMonomial& b) {
    if (a.shape != b.shape) return a.shape < b.shape;
    return a.labels < b.labels;
  }
};

constexpr int kMaxDegree = 5;

// All Catalan(n-1) * n! degree-n monomials, shape-major, labelings in
// lexicographic order; position in this list is the matrix column index.
std::vector<TreeMonomial> monomials(int n, int max_degree = kMaxDegree);
std::size_t monomial_count(int n);
std::size_t column_index(const TreeMonomial& m);
TreeMonomial monomial_at(int n, std::size_t col);

// Formal linear combination of same-degree monomials.
using Combination = std::map<TreeMonomial, Scalar>;

// Degree-n component of the operadic ideal generated by the arity-3
// single-product relations: every substitution of disjoint tree monomials
// into the relation variables, grafted into every leaf of every complementary
// monomial. Columns follow monomials(n); delta instantiates the relation
// coefficients when given.
ExactMatrix consequence_space(const std::vector<FormalIdentity>& relations, int n,
                              const std::optional<Rational>& delta,
                              int max_degree = kMaxDegree);

struct DimReport {
  int degree = 0;
  bool symbolic = false;
  std::size_t monomial_count = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::vector<DeltaPoly> exceptional_factors;  // symbolic runs only
};

// Multilinear dimension of the free (left) delta-Novikov algebra in the given
// degree; symbolic when delta is not provided.
DimReport component_dim(const std::optional<Rational>& delta, int degree,
                        int max_degree = kMaxDegree);

// Normal form over the 6-element degree-3 base, derived from the defining
// identities: ((x y) z with y > z) -> ((x z) y), and
// x(yz) -> delta (xy)z - delta (yx)z + y(xz) when x > y.
Combination rewrite_degree3(const Combination& comb, const Scalar& delta);
Combination rewrite_degree3(const TreeMonomial& m, const Scalar& delta);

// The six rewrite rules as strings (derived, not transcribed).
std::vector<std::string> derived_rewrite_rules();

// Hilbert-series data of the operad at a fixed delta: multilinear dimensions
// in degrees 1..5 and the coefficients of H(x) = sum (-1)^n dims[n-1]/n! x^n.
struct HilbertData {
  std::array<std::size_t, 5> dims{};
  std::array<Rational, 5> series{};  // coefficient of x^1..x^5
};

HilbertData hilbert_data(const Rational& d);

struct KoszulReport {
  Rational delta;
  std::size_t beta = 0;   // degree-4 dimension
  std::size_t alpha = 0;  // degree-5 dimension
  Rational coefficient;   // (240 - 15 beta + alpha) / 60
  bool nonzero = false;
};

// Degree-5 coefficient of the Hilbert-series composition; nonzero certifies
// the operad is not Koszul at this delta. Throws DeltaExcluded at delta = 1.
KoszulReport koszul_obstruction(const Rational& d);

struct DualOperadReport {
  // base monomial (degree-3, left factor) -> collected relation on the right
  // factor, as a length-12 coefficient vector over monomials(3)
  std::vector<std::pair<TreeMonomial, Vec>> relations;
  std::size_t relation_rank = 0;
  std::size_t right_novikov_rank = 0;
  std::size_t joint_rank = 0;
  bool equals_right_delta_novikov = false;
};

// Expands the cyclic Jacobi sum on simple tensors, reduces left factors to
// the degree-3 base, and compares the collected relation space with the right
// delta-Novikov relations. Runs over Q(delta) when delta is not given.
DualOperadReport dual_relations_via_lie_admissibility(
    const std::optional<Rational>& delta = {});

}  // namespace operad
}  // namespace dnov
