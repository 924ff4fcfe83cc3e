#include "qlab/constructions.hpp"
#include "qlab/errors.hpp"
#include "qlab/oracle.hpp"

#include "brute.hpp"

#include <gtest/gtest.h>

using namespace qlab;

namespace {

Scalar q(const char* s) { return parse_scalar(s); }
NetFamily lattice(const Scalar& d) { return NetFamily(Net::lattice(d)); }

// ||P_m|| by brute force: the coordinate matrix of f_1..f_{n+1} in
// l_inf^{n+1}, projection onto the first m, operator norm computed as the
// max over sign vectors of sup |(P_m x)_r| with ||x||_inf = 1 (vertices).
Scalar projection_norm_by_signs(std::size_t n, std::size_t m) {
  const std::size_t d = n + 1;
  // columns f_j
  std::vector<brute::Vec> f(d, brute::Vec(d, Scalar(0)));
  for (std::size_t j = 0; j < n; ++j) {
    f[j][j] = 1;
    f[j][n] = Scalar(1) / Scalar(static_cast<long>(n));
  }
  for (std::size_t r = 0; r < n; ++r) f[n][r] = 1;
  Scalar best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    brute::Vec x(d);
    for (std::size_t r = 0; r < d; ++r) x[r] = (mask >> r & 1) ? 1 : -1;
    // coefficients c with sum c_j f_j = x
    std::vector<brute::Vec> a(d, brute::Vec(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t j = 0; j < d; ++j) a[r][j] = f[j][r];
    auto c = brute::solve(a, x);
    brute::Vec y(d, Scalar(0));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r = 0; r < d; ++r) y[r] += (*c)[j] * f[j][r];
    for (const auto& v : y) best = std::max(best, brute::absq(v));
  }
  return best;
}

} // namespace

TEST(YSpace, Build) {
  auto y = build_y_space(BasisSpace::c0(4), 4);
  EXPECT_EQ(y.dimension, 34u);
  for (Index i = 0; i < y.dimension; ++i) EXPECT_EQ(basis_vector_norm(y.space, i), 1);
  EXPECT_THROW(build_y_space(BasisSpace::c0(2), 3), InvalidArgument);
  EXPECT_THROW(build_y_space(BasisSpace::poly_gauge(Body::cube(2, 2)), 2), InvalidArgument);
}

TEST(YSpace, QuantizerBound) {
  brute::Rng rng(51);
  for (const auto& inner : {BasisSpace::c0(4), BasisSpace::summing(4)}) {
    auto y = build_y_space(inner, 4);
    Scalar tail = 0;
    for (long n = 1; n <= 4; ++n) tail += Scalar(1, n * n);
    for (int t = 0; t < 1000; ++t) {
      Scalar delta(static_cast<long>(rng.below(6)) + 1, 4);
      delta.canonicalize();
      Coeffs x = rng.vector(y.dimension, 3, 8, 40);
      auto r = quantize_y(x, lattice(delta), *y.space.as<DirectSumYSpace>());
      EXPECT_EQ(r.error, norm(y.space, x - r.choice.digits));
      EXPECT_EQ(r.guarantee, delta * (3 + tail));
      EXPECT_LE(r.error, r.guarantee);
    }
  }
}

TEST(YSpace, LemmaBasisConstant) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto norms = lemma_projection_norms(n);
    ASSERT_EQ(norms.size(), n + 1);
    for (std::size_t m = 1; m <= n + 1; ++m) EXPECT_EQ(norms[m - 1], projection_norm_by_signs(n, m)) << n << " " << m;
    EXPECT_EQ(norms.back(), 1);
    EXPECT_LE(lemma_basis_constant(n), 3);
  }
  EXPECT_THROW(lemma_basis_constant(6, 5), SearchBudgetExceeded);
}

TEST(USpace, SingleStage) {
  auto u = build_u_space(BasisSpace::c0(1), q("1/2"), 1);
  EXPECT_EQ(u.markers, (std::vector<Index>{1}));
  EXPECT_EQ(u.dual_sets.at(0).size(), 9u);
  EXPECT_EQ(u.functionals.size(), 9u);
  EXPECT_TRUE(verify_u_invariants(u).ok());
}

TEST(USpace, TwoStages) {
  auto u = build_u_space(BasisSpace::c0(2), q("1/2"), 2);
  EXPECT_EQ(u.dual_sets.at(1).size(), 73u);
  EXPECT_EQ(u.markers, (std::vector<Index>{1, 75}));
  // G_1 (9) + one truncation f + e_link per pair (73) + the full extension
  // for the 64 pairs whose g has a nonzero second coordinate.
  EXPECT_EQ(u.functionals.size(), 146u);
  auto inv = verify_u_invariants(u);
  EXPECT_TRUE(inv.ok()) << (inv.violations.empty() ? "" : inv.violations.front());
  for (Index i = 1; i <= u.max_index(); ++i) EXPECT_EQ(u_norm(u, Coeffs{{i, 1}}), 1);
  EXPECT_THROW(u_norm(u, Coeffs{{0, 1}}), IndexError);
  EXPECT_THROW(u_norm(u, Coeffs{{76, 1}}), IndexError);
}

TEST(USpace, Validation) {
  EXPECT_THROW(build_u_space(BasisSpace::c0(2), q("1/2"), 0), InvalidArgument);
  EXPECT_THROW(build_u_space(BasisSpace::summing(2), q("1/2"), 2), InvalidArgument);
  EXPECT_THROW(build_u_space(BasisSpace::c0(1), q("1/2"), 2), InvalidArgument);
  EXPECT_THROW(build_u_space(BasisSpace::c0(2), 1, 2), InvalidArgument);
}

TEST(USpace, QuantizerAndMonotonicity) {
  auto u = build_u_space(BasisSpace::c0(2), q("1/2"), 2);
  brute::Rng rng(52);
  Scalar eps = 1;
  for (int t = 0; t < 300; ++t) {
    Coeffs x;
    for (Index i = 1; i <= u.max_index(); ++i)
      if (rng.below(10) == 0) x.set(i, rng.rational(2, 8));
    NetFamily nets(Net::lattice(eps / 3));
    if (t % 2) nets = NetFamily(brute::random_explicit_net(rng, eps / 3, 12));
    auto r = quantize_u(u, x, nets);
    EXPECT_EQ(r.error, u_norm(u, x - r.choice.digits));
    EXPECT_LE(r.error, 2 * eps / 3);
    for (Index k = 1; k <= u.max_index(); k += 7) EXPECT_LE(u_norm(u, x.prefix(k)), u_norm(u, x));
  }
}

TEST(USpace, MarkersEquivalentToBase) {
  auto u = build_u_space(BasisSpace::c0(2), q("1/2"), 2);
  auto rep = subsequence_equivalence_check(u, 200, 3);
  EXPECT_TRUE(rep.within_bounds);
  EXPECT_GE(rep.min_ratio, q("1/2"));
  EXPECT_LE(rep.max_ratio, 1);
  // The unit vectors of the dual set norm l_inf^2, so the markers are isometric.
  EXPECT_EQ(rep.min_ratio, 1);
}

TEST(USpace, MarkerSectionReproducesBaseOptimum) {
  auto build = std::make_shared<const USpaceBuild>(build_u_space(BasisSpace::c0(2), q("1/2"), 2));
  brute::Rng rng(53);
  SectionProblem pu{std::make_shared<UModel>(build), {1, 75}, lattice(q("1/3"))};
  SectionProblem pb = full_section(BasisSpace::c0(2), lattice(q("1/3")));
  for (int t = 0; t < 40; ++t) {
    Scalar a = rng.rational(2, 7), b = rng.rational(2, 7);
    auto eu = best_quantization(pu, Coeffs{{1, a}, {75, b}});
    auto eb = best_quantization(pb, Coeffs{{0, a}, {1, b}});
    EXPECT_EQ(*eu.choice.error, *eb.choice.error);
  }
}
