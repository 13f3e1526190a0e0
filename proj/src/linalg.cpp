#include "torkernel/linalg.hpp"

#include <algorithm>
#include <functional>

namespace torkernel {

IntVector RelationBasis::column(int i) const {
  IntVector col;
  col.reserve(rows.size());
  for (const auto& row : rows) col.push_back(row.at(i));
  return col;
}

ReducedRowEchelon rref(RatMatrix a) {
  ReducedRowEchelon out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

RelationBasis lin_rel(const std::vector<LatticeVector>& generators) {
  if (generators.empty()) throw LinalgError("no generators");
  const std::size_t n = generators[0].size();
  const std::size_t d = generators.size();
  for (const auto& v : generators) {
    if (v.size() != n) throw LinalgError("vectors must have equal length");
  }

  RatMatrix a(n, RatVector(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][j] = generators[j][i];

  const auto ech = rref(std::move(a));
  if (ech.pivots.size() != n) {
    throw LinalgError("generators span a sublattice of rank " + std::to_string(ech.pivots.size()) +
                      " < " + std::to_string(n));
  }

  std::vector<bool> is_pivot(d, false);
  for (int p : ech.pivots) is_pivot[p] = true;

  RelationBasis basis;
  basis.d = static_cast<int>(d);
  for (std::size_t f = 0; f < d; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(d);
    x[f] = 1;
    for (std::size_t k = 0; k < ech.pivots.size(); ++k) x[ech.pivots[k]] = -ech.reduced[k][f];
    basis.rows.push_back(clear_denominators(x));
  }
  std::sort(basis.rows.begin(), basis.rows.end(), std::greater<>());
  return basis;
}

Rational det_exact(const RatMatrix& m) {
  const std::size_t k = m.size();
  for (const auto& row : m) {
    if (row.size() != k) throw LinalgError("determinant of a non-square matrix");
  }
  if (k == 0) return 1;

  // Bareiss: every division below is exact.
  RatMatrix a = m;
  Rational prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    if (a[c][c] == 0) {
      std::size_t p = c + 1;
      while (p < k && a[p][c] == 0) ++p;
      if (p == k) return 0;
      std::swap(a[p], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j) {
        a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  return sign * a[k - 1][k - 1];
}

std::optional<RatVector> solve_in_basis(const RatMatrix& basis, const RatVector& target) {
  const std::size_t k = basis.size();
  const std::size_t m = target.size();
  for (const auto& b : basis) {
    if (b.size() != m) throw LinalgError("basis vector length differs from target length");
  }

  // Columns are the basis vectors, the last column is the target.
  RatMatrix aug(m, RatVector(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    aug[i][k] = target[i];
  }
  const auto ech = rref(std::move(aug));

  const auto basis_rank = std::count_if(ech.pivots.begin(), ech.pivots.end(),
                                        [k](int p) { return p < static_cast<int>(k); });
  if (static_cast<std::size_t>(basis_rank) != k) throw LinalgError("basis vectors are linearly dependent");
  if (ech.pivots.size() > k) return std::nullopt;

  RatVector c(k);
  for (std::size_t r = 0; r < k; ++r) c[ech.pivots[r]] = ech.reduced[r][k];
  return c;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t k = m.size();
  RatMatrix aug(k, RatVector(2 * k));
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i].size() != k) throw LinalgError("inverse of a non-square matrix");
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = m[i][j];
    aug[i][k + i] = 1;
  }
  const auto ech = rref(std::move(aug));
  if (ech.pivots.size() < k || (k > 0 && ech.pivots[k - 1] != static_cast<int>(k - 1))) {
    throw LinalgError("matrix is singular");
  }
  RatMatrix inv(k, RatVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inv[i][j] = ech.reduced[i][k + j];
  return inv;
}

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix t(m[0].size(), RatVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace torkernel
