#include "qlab/errors.hpp"
#include "qlab/oracle.hpp"
#include "qlab/quantize.hpp"

#include "brute.hpp"

#include <cstdlib>
#include <gtest/gtest.h>

using namespace qlab;

namespace {

Scalar q(const char* s) { return parse_scalar(s); }
NetFamily lattice(const Scalar& d) { return NetFamily(Net::lattice(d)); }

// Candidate lists containing every digit an optimum can use: an optimal d
// has ||x - d|| <= ||x||, hence |a_i - d_i| <= ||e_i^*|| ||x||.
std::vector<std::vector<Scalar>> box_candidates(const BasisSpace& space, const Coeffs& x, const NetFamily& nets,
                                                const std::vector<Index>& indices) {
  Scalar r = norm(space, x);
  std::vector<std::vector<Scalar>> out;
  for (Index i : indices) {
    const Net& n = nets.at(i);
    Scalar w = 2 * r + n.delta();
    if (n.kind() == Net::Kind::lattice)
      out.push_back(brute::lattice_window(n.delta(), x.get(i), w));
    else {
      std::vector<Scalar> c;
      for (const auto& p : n.points())
        if (brute::absq(p - x.get(i)) <= w) c.push_back(p);
      out.push_back(c);
    }
  }
  return out;
}

std::vector<BasisSpace> small_spaces() {
  return {
      BasisSpace::c0(3),
      BasisSpace::summing(4),
      BasisSpace::multisign({{1, -1, 1}, {-1, -1, 1}}),
      BasisSpace::schauder(3),
      BasisSpace::tree({std::nullopt, 0, 0, 2}),
      BasisSpace::haar(2),
      BasisSpace::direct_sum_y(BasisSpace::c0(1), 1),
      BasisSpace::poly_gauge(Body::hull({{1, 0}, {q("1/2"), 1}, {-1, q("1/3")}, {0, -1}})),
  };
}

} // namespace

TEST(Oracle, Examples) {
  auto c0 = best_quantization(full_section(BasisSpace::c0(2), lattice(1)), Coeffs{{0, q("0.4")}, {1, q("-1.3")}});
  EXPECT_EQ(*c0.choice.error, q("0.4"));
  EXPECT_EQ(c0.choice.digits, (Coeffs{{1, -1}}));
  Coeffs member{{0, 2}, {2, -1}};
  auto m = best_quantization(full_section(BasisSpace::summing(3), lattice(1)), member);
  EXPECT_EQ(*m.choice.error, 0);
  EXPECT_EQ(m.choice.digits, member);
  auto z = best_quantization(full_section(BasisSpace::summing(3), lattice(1)), Coeffs());
  EXPECT_EQ(*z.choice.error, 0);
}

TEST(Oracle, MatchesFullEnumeration) {
  brute::Rng rng(31);
  for (const auto& space : small_spaces()) {
    const std::size_t dim = space.dimension();
    std::vector<Index> all;
    for (Index i = 0; i < dim; ++i) all.push_back(i);
    for (int t = 0; t < 25; ++t) {
      Scalar delta(static_cast<long>(rng.below(4)) + 1, 2);
      delta.canonicalize();
      NetFamily nets(Net::lattice(delta));
      if (rng.below(2)) nets.set(0, brute::random_explicit_net(rng, delta, 8));
      Coeffs x = rng.vector(dim, 2, 6, 30);
      auto f = [&](const Coeffs& v) { return norm(space, v); };
      for (auto mode : {QuantizationMode::support_restricted, QuantizationMode::unrestricted}) {
        std::vector<Index> idx = mode == QuantizationMode::unrestricted ? all : x.support();
        auto [expect, arg] = brute::box_minimum(f, x, idx, box_candidates(space, x, nets, idx));
        SectionProblem p = full_section(space, nets, mode);
        auto got = best_quantization(p, x);
        EXPECT_EQ(*got.choice.error, expect) << space.family_name();
        EXPECT_EQ(norm(space, x - got.choice.digits), expect);
        if (mode == QuantizationMode::support_restricted)
          for (const auto& [i, d] : got.choice.digits) EXPECT_NE(x.get(i), 0);
        auto slow = best_quantization(p, x, SearchOptions{default_search_budget(), false});
        EXPECT_EQ(*slow.choice.error, expect);
      }
    }
  }
}

TEST(Oracle, UnrestrictedIsNeverWorse) {
  brute::Rng rng(32);
  for (const auto& space : small_spaces())
    for (int t = 0; t < 40; ++t) {
      Coeffs x = rng.vector(space.dimension(), 2, 4);
      auto c = best_quantization(full_section(space, lattice(1)), x);
      auto n = best_quantization(full_section(space, lattice(1), QuantizationMode::unrestricted), x);
      EXPECT_LE(*n.choice.error, *c.choice.error);
    }
}

TEST(Oracle, GreedyWarmStartIsUpperBound) {
  brute::Rng rng(33);
  BasisSpace s = BasisSpace::summing(8);
  for (int t = 0; t < 50; ++t) {
    Coeffs x = rng.vector(8, 2, 8);
    auto best = best_quantization(full_section(s, lattice(1)), x);
    EXPECT_LE(*best.choice.error, quantize_summing(x, lattice(1)).error);
  }
}

TEST(Oracle, BudgetIsEnforced) {
  Coeffs x;
  for (Index i = 0; i < 8; ++i) x.set(i, q("1/3"));
  SectionProblem p = full_section(BasisSpace::c0(8), lattice(q("1/10")), QuantizationMode::unrestricted);
  EXPECT_THROW(best_quantization(p, x, SearchOptions{1, false}), SearchBudgetExceeded);
}

TEST(Oracle, BudgetFromEnvironment) {
  ::setenv("QLAB_BUDGET", "1234", 1);
  EXPECT_EQ(default_search_budget(), 1234u);
  ::setenv("QLAB_BUDGET", "nonsense", 1);
  EXPECT_EQ(default_search_budget(), 10000000u);
  ::unsetenv("QLAB_BUDGET");
  EXPECT_EQ(default_search_budget(), 10000000u);
}

TEST(Oracle, EpsEstimates) {
  SectionProblem c0 = full_section(BasisSpace::c0(2), lattice(1));
  SamplingPlan plan{200, 5, 1};
  auto e = eps_ball_estimate(c0, plan);
  EXPECT_EQ(e.lower_bound, q("1/2"));
  EXPECT_FALSE(e.certified);
  EXPECT_LE(norm(BasisSpace::c0(2), e.witness), 1);
  // Scale covariance: the samples for radius R are R times the unit ones.
  auto s1 = sample_section_ball(*c0.model, {0, 1}, plan);
  SamplingPlan scaled = plan;
  scaled.scale = 3;
  auto s3 = sample_section_ball(*c0.model, {0, 1}, scaled);
  ASSERT_EQ(s1.size(), s3.size());
  for (std::size_t k = 0; k < s1.size(); ++k) EXPECT_EQ(s3[k], Scalar(3) * s1[k]);
  EXPECT_EQ(eps_space_estimate(c0, 3, plan).lower_bound, q("1/2"));
  EXPECT_EQ(eps_space_estimate(c0, 0, plan).lower_bound, 0);
  // Same seed, same answer.
  EXPECT_EQ(eps_ball_estimate(c0, plan).witness, e.witness);
}

TEST(Oracle, PropertyP) {
  std::vector<Scalar> pts{-1, 0, 1};
  NetFamily nets(Net::explicit_points(pts, 1, 1));
  auto v = check_property_p(*make_model(BasisSpace::summing(2)), nets, {0, 1});
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.witness, (Coeffs{{0, 1}, {1, -1}}));
  EXPECT_LE(v.witness_norm, 1);
  // In c0 any single unit digit already works; with delta = 2 no digit is small enough.
  EXPECT_TRUE(check_property_p(*make_model(BasisSpace::c0(3)), lattice(1), {0, 1, 2}).holds);
  EXPECT_FALSE(check_property_p(*make_model(BasisSpace::c0(3)), lattice(2), {0, 1, 2}).holds);
}

TEST(Oracle, PropertyPAgreesWithEnumeration) {
  brute::Rng rng(34);
  for (int t = 0; t < 40; ++t) {
    BasisSpace s = BasisSpace::summing(3);
    Scalar delta(static_cast<long>(rng.below(6)) + 2, 4);
    delta.canonicalize();
    auto v = check_property_p(*make_model(s), lattice(delta), {0, 1, 2});
    // Brute force: nonzero digits of delta Z with |d_i| <= 2.
    bool expect = false;
    auto cands = brute::lattice_window(delta, 0, 2);
    for (const auto& a : cands)
      for (const auto& b : cands)
        for (const auto& c : cands)
          if (a != 0 && b != 0 && c != 0 && norm(s, Coeffs{{0, a}, {1, b}, {2, c}}) <= 1) expect = true;
    EXPECT_EQ(v.holds, expect) << to_string(delta);
  }
}

TEST(Oracle, HaarWitness) {
  Coeffs x = haar_witness(2);
  EXPECT_EQ(x, (Coeffs{{1, q("1/2")}, {2, q("1/2")}, {3, q("1/2")}}));
  EXPECT_EQ(norm(BasisSpace::haar(2), x), 1);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(norm(BasisSpace::haar(n), haar_witness(n)), 1);
  // A net too coarse to reach any coefficient leaves the distance at ||x_N||.
  EXPECT_EQ(haar_witness_distance(2, 4).distance, 1);
  auto d = haar_witness_distance(1, 2);
  EXPECT_EQ(d.distance, 1);
  EXPECT_EQ(norm(BasisSpace::haar(1), haar_witness(1) - d.nearest), d.distance);
}

TEST(Oracle, HaarDistanceMatchesEnumeration) {
  for (std::size_t level : {1u, 2u})
    for (Scalar delta : {Scalar(1), Scalar(1, 2), Scalar(2, 3)}) {
      BasisSpace h = BasisSpace::haar(level);
      Coeffs x = haar_witness(level);
      std::vector<Index> idx;
      for (Index i = 0; i < h.dimension(); ++i) idx.push_back(i);
      auto cands = box_candidates(h, x, lattice(delta), idx);
      auto [expect, arg] = brute::box_minimum([&](const Coeffs& v) { return norm(h, v); }, x, idx, cands);
      EXPECT_EQ(haar_witness_distance(level, delta).distance, expect);
    }
}

TEST(Oracle, QuasiGreedy) {
  SamplingPlan plan{100, 3, 1};
  auto c0 = quasi_greedy_constants(*make_model(BasisSpace::c0(3)), 3, q("1/4"), plan);
  EXPECT_EQ(c0.k_lower, 1);
  EXPECT_EQ(c0.l_lower, 1);
  auto sum = quasi_greedy_constants(*make_model(BasisSpace::summing(3)), 3, q("1/4"), plan);
  EXPECT_GE(sum.l_lower, 2);
  EXPECT_GE(sum.k_lower, 1);
  // The l witness really attains the reported ratio.
  Scalar nx = norm(BasisSpace::summing(3), sum.l_witness);
  EXPECT_EQ(nx, 1);
  EXPECT_EQ(norm(BasisSpace::summing(3), sum.l_witness.restrict_to(sum.l_subset)), sum.l_lower);
}
