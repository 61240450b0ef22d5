#pragma once

#include <cstddef>
#include <vector>

#include "homoclinic/errors.hpp"
#include "homoclinic/rational.hpp"

namespace homoclinic {

using BigMatrix = std::vector<std::vector<BigInt>>;

inline BigMatrix identity_matrix(std::size_t n) {
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t p = b.empty() ? 0 : b[0].size();
  BigMatrix c(n, std::vector<BigInt>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
    }
  return c;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(BigMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m)
    if (row.size() != n) throw InvalidArgument("determinant: matrix is not square");
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace homoclinic
