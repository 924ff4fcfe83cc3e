#include "qlab/constructions.hpp"

#include "qlab/errors.hpp"

namespace qlab {

YSpaceBuild build_y_space(const BasisSpace& inner, std::size_t blocks) {
  if (blocks < 1) throw InvalidArgument("Y needs at least one block");
  if (inner.dimension() < blocks)
    throw InvalidArgument("inner space has " + std::to_string(inner.dimension()) + " basis vectors, " +
                          std::to_string(blocks) + " blocks need that many");
  for (std::size_t n = 0; n < blocks; ++n)
    if (basis_vector_norm(inner, n) != 1)
      throw InvalidArgument("inner basis vector " + std::to_string(n) + " is not normalized");
  BasisSpace space = BasisSpace::direct_sum_y(inner, blocks);
  std::size_t dim = space.dimension();
  return YSpaceBuild{inner, blocks, std::move(space), dim};
}

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

// Columns are f_1..f_{n+1}.
Matrix lemma_matrix(std::size_t n) {
  Matrix f(n + 1, std::vector<Scalar>(n + 1, Scalar(0)));
  for (std::size_t j = 0; j < n; ++j) {
    f[j][j] = 1;
    f[n][j] = Scalar(1) / Scalar(n);
    f[j][n] = 1;
  }
  return f;
}

Matrix inverse(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InvalidArgument("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Scalar p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Scalar m = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= m * a[col][c];
        inv[r][c] -= m * inv[col][c];
      }
    }
  }
  return inv;
}

} // namespace

std::vector<Scalar> lemma_projection_norms(std::size_t n, std::size_t max_n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (n > max_n) throw SearchBudgetExceeded("lemma basis constant is capped at n = " + std::to_string(max_n), 0);
  Matrix f = lemma_matrix(n);
  Matrix finv = inverse(f);
  const std::size_t d = n + 1;
  std::vector<Scalar> out;
  for (std::size_t m = 1; m <= d; ++m) {
    // P_m = F diag(1..1, 0..0) F^{-1}; the l_inf operator norm is the max row sum.
    Scalar worst = 0;
    for (std::size_t r = 0; r < d; ++r) {
      Scalar row = 0;
      for (std::size_t c = 0; c < d; ++c) {
        Scalar v = 0;
        for (std::size_t k = 0; k < m; ++k) v += f[r][k] * finv[k][c];
        row += abs(v);
      }
      worst = std::max(worst, row);
    }
    out.push_back(worst);
  }
  return out;
}

Scalar lemma_basis_constant(std::size_t n, std::size_t max_n) {
  Scalar best = 0;
  for (const auto& v : lemma_projection_norms(n, max_n)) best = std::max(best, v);
  return best;
}

} // namespace qlab
