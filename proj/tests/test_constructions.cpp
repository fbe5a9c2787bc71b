#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vuza/constructions.hpp"

using namespace vuza;

namespace {
const VuzaParams q72{2, 2, 3, 3, 2};
}

TEST_CASE("block tables at N=72") {
  BuildingBlocks b = base_blocks(q72);
  CHECK(b.A == ResidueSet(72, {0, 8, 16}));
  CHECK(b.B == ResidueSet(72, {0, 18}));
  CHECK(b.U == ResidueSet(72, {0, 24, 48}));
  CHECK(b.V == ResidueSet(72, {0, 36}));
  CHECK(b.H == scale_set(2, interval_set(36, 72)));
  CHECK(b.K == interval_set(2, 72));
  CHECK(b.K1 == ResidueSet(72, {0}));
  CHECK(b.K2 == ResidueSet(72, {1}));

  // alpha = p1 shrinks the dilation of U'
  BuildingBlocks ba = base_blocks(q72, 2, 1);
  CHECK(ba.Uprime == ResidueSet(72, {0, 12, 24}));
  CHECK_THROWS_AS(base_blocks(q72, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(base_blocks(q72, 1, 7), std::invalid_argument);
}

TEST_CASE("transversal splits are validated") {
  CHECK_THROWS_AS(base_blocks(q72, 1, 1, ResidueSet(72, {0}),
                              ResidueSet(72, {0})),
                  std::invalid_argument);  // not disjoint
  CHECK_THROWS_AS(base_blocks(q72, 1, 1, ResidueSet(72, {0}),
                              ResidueSet(72, {1, 2})),
                  std::invalid_argument);  // wrong size
  CHECK_THROWS_AS(base_blocks(q72, 1, 1, ResidueSet(72, {0}),
                              ResidueSet(72, {2})),
                  std::invalid_argument);  // {0,2} is not a transversal of H
  CHECK_NOTHROW(base_blocks(q72, 1, 1, ResidueSet(72, {1}),
                            ResidueSet(72, {0})));
}

TEST_CASE("worked construction at N=72") {
  BuildingBlocks b = base_blocks(q72, 1, 1, ResidueSet(72, {1}),
                                 ResidueSet(72, {0}));
  b = perturb_R(b, {{48, 18}}, {{36, 8}});
  CHECK(b.Uprime == ResidueSet(72, {0, 24, 66}));
  CHECK(b.Vprime == ResidueSet(72, {0, 44}));
  CanonPair c = construct_canon(b);
  CHECK(to_string(c.S) == "72:0,8,16,18,26,34");
  CHECK(to_string(c.R) == "72:0,1,21,24,25,30,36,45,49,60,66,69");
  CHECK(is_vuza_canon(c.S, c.R).ok);
}

TEST_CASE("substitution guard rails") {
  BuildingBlocks b = base_blocks(q72);
  CHECK_THROWS_AS(perturb_R(b, {{0, 18}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(perturb_R(b, {{48, 5}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(perturb_R(b, {{47, 18}}, {}), std::invalid_argument);
}

TEST_CASE("S-side perturbation keeps the same complement") {
  BuildingBlocks b = base_blocks(q72, 1, 1, ResidueSet(72, {1}),
                                 ResidueSet(72, {0}));
  ResidueSet sprime = perturb_S(b, {{16, 24}}, {{18, 36}});
  CHECK(sprime == sumset(ResidueSet(72, {0, 8, 40}), ResidueSet(72, {0, 54})));
  CanonPair c = construct_canon(perturb_R(b, {{48, 18}}, {{36, 8}}));
  CHECK(is_vuza_canon(sprime, c.R).ok);
  CHECK_THROWS_AS(perturb_S(b, {{8, 18}}, {}), std::invalid_argument);
}

TEST_CASE("non-periodicity shortcut for direct sums") {
  CHECK(szabo_nonperiodic(ResidueSet(72, {0, 8, 16}), ResidueSet(72, {0, 18})));
  // vacuous case falls back to the exhaustive test
  CHECK(szabo_nonperiodic(ResidueSet(6, {0, 1}), ResidueSet(6, {0, 2, 3})));
  CHECK_FALSE(
      szabo_nonperiodic(ResidueSet(6, {0, 1}), ResidueSet(6, {0, 1, 2, 4})));
  CHECK_THROWS_AS(szabo_nonperiodic(ResidueSet(6, {1}), ResidueSet(6, {0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      szabo_nonperiodic(ResidueSet(6, {0, 3}), ResidueSet(6, {0, 1})),
      std::invalid_argument);
}

TEST_CASE("variant hypothesis gates") {
  // gcd(n1*p1, n2*n3) = gcd(4, 6) != 1: the p2 table is inadmissible here
  CHECK_THROWS_AS(variant_p2_canon(q72, ResidueSet(72, {0}),
                                   ResidueSet(72, {1})),
                  std::invalid_argument);
  // the mirrored decomposition satisfies gcd(n1*p1, n2*n3) = gcd(9, 4) = 1
  VuzaParams qm{3, 3, 2, 2, 2};
  CHECK_THROWS_AS(variant_p1_canon(qm, ResidueSet(72, {0}),
                                   ResidueSet(72, {1})),
                  std::invalid_argument);  // gcd(n1*n3, n2*p2) = gcd(6, 4) != 1
  CanonPair c = variant_p2_canon(qm, ResidueSet(72, {0}), ResidueSet(72, {1}));
  CHECK(is_vuza_canon(c.S, c.R).ok);
  CHECK(c.provenance == "variant_p2");
}

TEST_CASE("assigning kernels across the transversal") {
  BuildingBlocks b = base_blocks(q72);
  ResidueSet k0(72, {0}), k1(72, {1});
  CanonPair direct = construct_canon(b);
  CanonPair viaUnion = multi_R_union(
      b, {sumset(b.U, b.Vprime), sumset(b.Uprime, b.V)}, {k0, k1});
  CHECK(viaUnion.S == direct.S);
  CHECK(viaUnion.R == direct.R);
  CHECK_THROWS_AS(multi_R_union(b, {b.U, b.U}, {k0, k1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      multi_R_union(b, {sumset(b.U, b.Vprime)}, {k0}),
      std::invalid_argument);  // {0} alone does not cover K
}

TEST_CASE("splitting the transversal factor Z_{n3}") {
  VuzaParams q144{2, 2, 3, 3, 4};
  BuildingBlocks b = base_blocks(q144);
  RhythmicCanon c = split_K_canon(b, ResidueSet(4, {0, 2}), ResidueSet(4, {0}),
                                  ResidueSet(4, {1}));
  CHECK(check_direct_sum(c.S, c.R).verdict);
  CHECK(c.provenance == "split_K");
  CHECK(c.vuza == (!find_period(c.S) && !find_period(c.R)));
  CHECK_THROWS_AS(split_K_canon(b, ResidueSet(4, {0, 1}), ResidueSet(4, {0}),
                                ResidueSet(4, {1})),
                  std::invalid_argument);  // {0,1} + {0,1} is not direct
}

TEST_CASE("concatenation always yields a periodic S part") {
  ResidueSet s(72, {0, 8, 16, 18, 26, 34});
  ResidueSet r(72, {0, 1, 21, 24, 25, 30, 36, 45, 49, 60, 66, 69});
  RhythmicCanon c = concatenate(s, r, 2);
  CHECK(c.S.modulus() == 144);
  CHECK_FALSE(c.vuza);
  CHECK(check_direct_sum(c.S, c.R).verdict);
  CHECK(find_period(c.S) == std::optional<int>(72));
  CHECK_THROWS_AS(concatenate(s, ResidueSet(72, {0, 1}), 2),
                  std::invalid_argument);
}

TEST_CASE("lifting to Z_{kN}") {
  ResidueSet s(72, {0, 8, 16, 18, 26, 34});
  ResidueSet r(72, {0, 1, 21, 24, 25, 30, 36, 45, 49, 60, 66, 69});
  CanonPair c = lift_canon(s, r, 2);
  CHECK(to_string(c.S) == "144:0,1,16,17,32,33,36,37,52,53,68,69");
  CHECK(c.R == scale_set(2, ResidueSet(144, r.elements())));
  CHECK(is_vuza_canon(c.S, c.R).ok);
  CHECK_THROWS_AS(lift_canon(s, ResidueSet(72, {0, 1}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(lift_canon(s, r, 0), std::invalid_argument);
}

TEST_CASE("restriction to a subgroup") {
  ResidueSet s144(144, {0, 16, 32, 36, 52, 68});
  ResidueSet r144(144, {0, 7, 12, 15, 24, 33, 34, 45, 46, 55, 57, 58, 63, 72,
                        84, 96, 103, 105, 106, 111, 117, 118, 129, 130});
  REQUIRE(is_vuza_canon(s144, r144).ok);

  // The arithmetic restriction through H = 2*I_72 is a genuine
  // factorization of Z_72 ...
  std::vector<int> sv, rv;
  for (int e : s144.elements()) sv.push_back(e / 2);
  for (int e : r144.elements())
    if (e % 2 == 0) rv.push_back(e / 2);
  ResidueSet s72(72, std::move(sv)), r72(72, std::move(rv));
  CHECK(to_string(s72) == "72:0,8,16,18,26,34");
  CHECK(to_string(r72) == "72:0,6,12,17,23,29,36,42,48,53,59,65");
  CHECK(check_direct_sum(s72, r72).verdict);

  // ... but its R part is 36-periodic, so the Vuza-grade constructor
  // reports exactly that instead of emitting it.
  CHECK(find_period(r72) == std::optional<int>(36));
  try {
    restrict_canon(s144, r144, 2);
    FAIL("expected NonPeriodicityError");
  } catch (const NonPeriodicityError& e) {
    CHECK(e.period() == 36);
  }
  CHECK_THROWS_AS(restrict_canon(s144, r144,
                                 scale_set(2, interval_set(72, 144))),
                  NonPeriodicityError);

  // guard rails
  CHECK_THROWS_AS(restrict_canon(r144, s144, 2), std::invalid_argument);
  CHECK_THROWS_AS(restrict_canon(s144, r144, 5), std::invalid_argument);
  CHECK_THROWS_AS(restrict_canon(s144, r144, interval_set(3, 144)),
                  std::invalid_argument);

  // k = 1 is the identity restriction
  CanonPair id = restrict_canon(s144, r144, 1);
  CHECK(id.S == s144);
  CHECK(id.R == r144);
}

TEST_CASE("duality and affine stability across moduli") {
  for (VuzaParams q : {VuzaParams{2, 2, 3, 3, 2}, VuzaParams{2, 2, 3, 3, 3},
                       VuzaParams{2, 2, 3, 5, 2}, VuzaParams{2, 2, 3, 3, 4}}) {
    const int n = static_cast<int>(q.order());
    CAPTURE(n);
    CanonPair c = construct_canon(base_blocks(q));
    CHECK(is_vuza_canon(c.S, c.R).ok);
    CHECK(is_vuza_canon(c.R, c.S).ok);
    for (int a : {5, 7, n - 1}) {
      if (std::gcd(a, n) != 1) continue;
      for (int b : {0, 3})
        CHECK(check_direct_sum(affine(a, b, c.S), scale_set(a, c.R)).verdict);
    }
  }
}
