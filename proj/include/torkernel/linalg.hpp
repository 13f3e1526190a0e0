#pragma once

#include "torkernel/fan.hpp"
#include "torkernel/rational.hpp"

#include <optional>
#include <vector>

namespace torkernel {

/// Integer basis of the linear relations among d generators: rows are
/// primitive, start with a positive entry and are sorted in descending
/// lexicographic order. Column i holds the weights of coordinate z_i.
struct RelationBasis {
  int d = 0;
  IntMatrix rows;

  [[nodiscard]] int rank() const { return static_cast<int>(rows.size()); }
  [[nodiscard]] IntVector column(int i) const;

  bool operator==(const RelationBasis&) const = default;
};

struct ReducedRowEchelon {
  RatMatrix reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

ReducedRowEchelon rref(RatMatrix a);

/// Nullspace basis of the n x d matrix whose columns are the generators.
/// Throws LinalgError on ragged input or when the generators do not span.
RelationBasis lin_rel(const std::vector<LatticeVector>& generators);

/// Exact determinant by fraction-free elimination; the 0 x 0 determinant is 1.
Rational det_exact(const RatMatrix& m);

/// Coefficients c with sum_k c_k * basis[k] == target, or nullopt when the
/// target lies outside the span. Throws LinalgError on a dependent basis.
std::optional<RatVector> solve_in_basis(const RatMatrix& basis, const RatVector& target);

/// Exact inverse of a square nonsingular matrix.
RatMatrix inverse(const RatMatrix& m);

RatMatrix transpose(const RatMatrix& m);

}  // namespace torkernel
