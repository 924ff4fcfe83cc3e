#include "qlab/constructions.hpp"
#include "qlab/errors.hpp"
#include "qlab/serialize.hpp"

#include "brute.hpp"

#include <gtest/gtest.h>

using namespace qlab;

namespace {
Scalar q(const char* s) { return parse_scalar(s); }
Json parse(const char* text) { return Json::parse(text); }
} // namespace

TEST(Serialize, Scalars) {
  EXPECT_EQ(scalar_to_json(q("-3/8")), "-3/8");
  EXPECT_EQ(scalar_to_json(4), "4");
  EXPECT_EQ(scalar_from_json(Json(7)), 7);
  EXPECT_EQ(scalar_from_json(Json("0.25")), q("1/4"));
  EXPECT_THROW(scalar_from_json(Json(0.5)), ParseError);
  EXPECT_THROW(scalar_from_json(Json("x")), ParseError);
  EXPECT_THROW(scalar_from_json(Json::array()), ParseError);
}

TEST(Serialize, CoeffsRoundTrip) {
  brute::Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    Coeffs x = rng.vector(9, 4, 7);
    EXPECT_EQ(coeffs_from_json(coeffs_to_json(x)), x);
    EXPECT_EQ(coeffs_from_json(Json::parse(coeffs_to_json(x).dump())), x);
  }
  EXPECT_EQ(coeffs_from_json(parse(R"(["1/2", 0, "-1"])")), (Coeffs{{0, q("1/2")}, {2, -1}}));
  EXPECT_THROW(coeffs_from_json(parse(R"({"a": "1"})")), ParseError);
  EXPECT_THROW(coeffs_from_json(parse(R"({"-1": "1"})")), ParseError);
  EXPECT_THROW(coeffs_from_json(parse("3")), ParseError);
}

TEST(Serialize, NetsRoundTrip) {
  brute::Rng rng(62);
  Net e = brute::random_explicit_net(rng, q("1/3"), 2);
  EXPECT_EQ(net_from_json(net_to_json(e)), e);
  EXPECT_EQ(net_from_json(net_to_json(Net::lattice(q("2/7")))), Net::lattice(q("2/7")));
  NetFamily f(Net::lattice(1));
  f.set(3, e);
  NetFamily g = net_family_from_json(net_family_to_json(f));
  EXPECT_EQ(g.fallback(), f.fallback());
  EXPECT_EQ(g.overrides(), f.overrides());
  EXPECT_EQ(net_family_from_json(parse(R"({"kind":"lattice","delta":"1/2"})")).fallback(), Net::lattice(q("1/2")));
  EXPECT_THROW(net_from_json(parse(R"({"kind":"fancy"})")), ParseError);
  EXPECT_THROW(net_from_json(parse(R"({"delta":"1"})")), ParseError);
  EXPECT_THROW(net_from_json(parse(R"({"kind": 3, "delta":"1"})")), ParseError);
}

TEST(Serialize, SpacesRoundTrip) {
  std::vector<BasisSpace> spaces{
      BasisSpace::c0(3),
      BasisSpace::summing(4),
      BasisSpace::multisign({{1, -1}, {1, 1}}),
      BasisSpace::schauder(6),
      BasisSpace::tree({std::nullopt, 0, std::nullopt, 2}),
      BasisSpace::haar(3),
      BasisSpace::direct_sum_y(BasisSpace::summing(3), 2),
      BasisSpace::poly_gauge(Body::hull({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})),
      normalize_space(BasisSpace::poly_gauge(Body::cube(2, 2))).space,
  };
  brute::Rng rng(63);
  for (const auto& s : spaces) {
    Json j = space_to_json(s);
    BasisSpace back = space_from_json(Json::parse(j.dump()));
    EXPECT_EQ(space_to_json(back), j);
    EXPECT_EQ(back.dimension(), s.dimension());
    for (int t = 0; t < 20; ++t) {
      Coeffs x = rng.vector(s.dimension(), 3, 5);
      EXPECT_EQ(norm(back, x), norm(s, x)) << s.family_name();
    }
  }
  EXPECT_THROW(space_from_json(parse(R"({"family":"lp"})")), ParseError);
  EXPECT_THROW(space_from_json(parse(R"({"family":"c0"})")), ParseError);
  EXPECT_THROW(space_from_json(parse(R"({"family":"c0","n":-2})")), ParseError);
  EXPECT_THROW(space_from_json(parse(R"({"family":"c0","n":0})")), InvalidArgument);
}

TEST(Serialize, BodiesAndLattices) {
  Body cross({ConvexPolytope::box({-2, q("-1/2")}, {2, q("1/2")}), ConvexPolytope::box({q("-1/2"), -2}, {q("1/2"), 2})});
  for (const Body& b : {cross, parallelogram_body(), Body::cube(3, q("1/2"))}) {
    Body back = body_from_json(Json::parse(body_to_json(b).dump()));
    EXPECT_EQ(body_to_json(back), body_to_json(b));
    EXPECT_EQ(back.gauge(Point(b.dimension(), q("1/3"))), b.gauge(Point(b.dimension(), q("1/3"))));
  }
  EXPECT_EQ(body_from_json(parse(R"({"cube":"1/2","dimension":2})")).gauge({q("1/4"), 0}), q("1/2"));
  EXPECT_EQ(body_from_json(parse(R"({"box":{"lower":[-1,-2],"upper":[1,2]}})")).gauge({0, 1}), q("1/2"));
  EXPECT_EQ(body_to_json(body_from_json(parse(R"({"preset":"parallelogram"})"))), body_to_json(parallelogram_body()));
  EXPECT_THROW(body_from_json(parse(R"({"preset":"circle"})")), ParseError);
  EXPECT_THROW(body_from_json(parse(R"({})")), ParseError);

  LatticeSpec l({{2, 0}, {1, q("1/2")}});
  LatticeSpec back = lattice_from_json(lattice_to_json(l));
  EXPECT_EQ(back.basis(), l.basis());
  EXPECT_EQ(lattice_from_json(parse(R"({"integer":3})")).basis(), LatticeSpec::integer(3).basis());
  EXPECT_EQ(lattice_from_json(parse(R"({"diagonal":[1,"7/8"]})")).determinant(), q("7/8"));
}

TEST(Serialize, UBuildRoundTrip) {
  auto u = build_u_space(BasisSpace::c0(2), q("1/2"), 2);
  Json j = u_build_to_json(u);
  USpaceBuild back = u_build_from_json(Json::parse(j.dump()));
  EXPECT_EQ(u_build_to_json(back), j);
  EXPECT_EQ(back.markers, u.markers);
  EXPECT_TRUE(verify_u_invariants(back).ok());
  brute::Rng rng(64);
  for (int t = 0; t < 30; ++t) {
    Coeffs x;
    for (Index i = 1; i <= u.max_index(); ++i)
      if (rng.below(8) == 0) x.set(i, rng.rational(2, 5));
    EXPECT_EQ(u_norm(back, x), u_norm(u, x));
  }
  Json broken = j;
  broken["links"][0]["parent"] = 100000;
  EXPECT_THROW(u_build_from_json(broken), ParseError);
}

TEST(Serialize, Reports) {
  QuantizerReport r{{Coeffs{{0, 1}}, q("1/2")}, q("1/2"), 1, q("1/2")};
  Json j = quantizer_report_to_json(r);
  EXPECT_EQ(j["error"], "1/2");
  EXPECT_EQ(j["choice"], coeffs_to_json(Coeffs{{0, 1}}));
  CoverVerdict v;
  v.covered = false;
  v.witness = Point{q("1/2"), 0};
  v.certificate = {{Point{0, 0}, 2}};
  Json jv = verdict_to_json(v);
  EXPECT_EQ(jv["covered"], false);
  EXPECT_EQ(jv["witness"], parse(R"(["1/2","0"])"));
  EXPECT_EQ(jv["certificate"][0]["distance"], "2");
}
