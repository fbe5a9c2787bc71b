#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "vuza/zn.hpp"

using namespace vuza;

namespace {

ResidueSet random_nonempty(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<int> v;
  for (int e = 0; e < n; ++e)
    if (coin(rng) == 0) v.push_back(e);
  if (v.empty()) v.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
  return ResidueSet(n, std::move(v));
}

// Reference periodicity check straight from the definition.
std::optional<int> find_period_naive(const ResidueSet& s) {
  const int n = s.modulus();
  for (int g = 1; g < n; ++g)
    if (translate(s, g) == s) return g;
  return std::nullopt;
}

ResidueSet intersect(const ResidueSet& a, const ResidueSet& b) {
  std::vector<int> v;
  for (int e : a.elements())
    if (b.contains(e)) v.push_back(e);
  return ResidueSet(a.modulus(), std::move(v));
}

}  // namespace

TEST_CASE("set literal round trip") {
  ResidueSet s = parse_set("72:0,8,16,18,26,34");
  CHECK(s.modulus() == 72);
  CHECK(s.elements() == std::vector<int>{0, 8, 16, 18, 26, 34});
  CHECK(to_string(s) == "72:0,8,16,18,26,34");

  CHECK_THROWS_AS(parse_set("72"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("12:3,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("12:5,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("12:12"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("12:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set("12:x"), std::invalid_argument);
}

TEST_CASE("constructors reject bad input") {
  CHECK_THROWS_AS(ResidueSet(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(ResidueSet(6, {6}), std::invalid_argument);
  CHECK_THROWS_AS(ResidueSet(6, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(ResidueSet(6, {2, 2}), std::invalid_argument);
  CHECK(ResidueSet::reduce(6, {7, 13, -5}) == ResidueSet(6, {1}));
}

TEST_CASE("interval, scale, sumset, translate, affine") {
  CHECK(interval_set(3, 72) == ResidueSet(72, {0, 1, 2}));
  CHECK(scale_set(24, interval_set(3, 72)) == ResidueSet(72, {0, 24, 48}));
  // collapsing scale: 36*I_4 mod 72 has only two residues
  CHECK(scale_set(36, interval_set(4, 72)) == ResidueSet(72, {0, 36}));

  ResidueSet a(72, {0, 8, 16}), b(72, {0, 18});
  CHECK(sumset(a, b) == ResidueSet(72, {0, 8, 16, 18, 26, 34}));

  CHECK(translate(ResidueSet(12, {10, 11}), 3) == ResidueSet(12, {1, 2}));
  CHECK(translate(ResidueSet(12, {1}), -2) == ResidueSet(12, {11}));

  CHECK(affine(5, 1, ResidueSet(12, {0, 1})) == ResidueSet(12, {1, 6}));
  CHECK_THROWS_AS(affine(4, 0, ResidueSet(12, {0, 1})), std::invalid_argument);

  CHECK_THROWS_AS(translate(ResidueSet(12, {}), 1), EmptySetError);
  CHECK_THROWS_AS(scale_set(2, ResidueSet(12, {})), EmptySetError);
}

TEST_CASE("direct-sum certificate witnesses") {
  auto good = check_direct_sum(interval_set(6, 72),
                               scale_set(6, interval_set(12, 72)));
  CHECK(good.verdict);

  // too small: some residue is uncovered
  auto missing = check_direct_sum(ResidueSet(12, {0, 1}), ResidueSet(12, {0, 4}));
  CHECK_FALSE(missing.verdict);
  REQUIRE(missing.uncovered.has_value());
  CHECK_FALSE(sumset(ResidueSet(12, {0, 1}), ResidueSet(12, {0, 4}))
                  .contains(*missing.uncovered));

  // covering but not direct: a doubled representation is exhibited
  auto doubled = check_direct_sum(interval_set(4, 6), interval_set(3, 6));
  CHECK_FALSE(doubled.verdict);
  REQUIRE(doubled.doubled.has_value());
  const auto& w = *doubled.doubled;
  CHECK((w[1] + w[2]) % 6 == w[0]);
  CHECK((w[3] + w[4]) % 6 == w[0]);
  CHECK((w[1] != w[3] || w[2] != w[4]));

  CHECK_THROWS_AS(check_direct_sum(ResidueSet(6, {0}), ResidueSet(12, {0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_direct_sum(ResidueSet(6, {}), ResidueSet(6, {0})),
                  EmptySetError);
}

TEST_CASE("interval splittings I_a (+) a*I_b fill Z_ab") {
  for (int a = 1; a <= 400; ++a)
    for (int b = 1; a * b <= 400; ++b) {
      const int n = a * b;
      CAPTURE(a);
      CAPTURE(b);
      CHECK(check_direct_sum(interval_set(a, n),
                             scale_set(a % n == 0 ? n : a, interval_set(b, n)))
                .verdict);
    }
}

TEST_CASE("dilated splittings c*I_a (+) a*I_bc fill Z_abc when gcd(a,c)=1") {
  for (int a = 1; a <= 400; ++a)
    for (int b = 1; a * b <= 400; ++b)
      for (int c = 1; a * b * c <= 400; ++c) {
        if (std::gcd(a, c) != 1) continue;
        const int n = a * b * c;
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        auto left = scale_set(c % n == 0 ? n : c, interval_set(a, n));
        auto right = scale_set(a % n == 0 ? n : a, interval_set(b * c, n));
        CHECK(check_direct_sum(left, right).verdict);
      }
}

TEST_CASE("direct-sum verdict equals exhaustive representation counting") {
  std::mt19937 rng(20260826);
  for (int n = 2; n <= 48; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      ResidueSet s = random_nonempty(n, rng);
      ResidueSet r = random_nonempty(n, rng);
      std::vector<int> reps(static_cast<std::size_t>(n), 0);
      for (int a : s.elements())
        for (int b : r.elements()) ++reps[static_cast<std::size_t>((a + b) % n)];
      bool unique = std::all_of(reps.begin(), reps.end(),
                                [](int c) { return c == 1; });
      CAPTURE(n);
      CHECK(check_direct_sum(s, r).verdict == unique);
    }
}

TEST_CASE("sums from inside a subgroup meet it only through R n H") {
  std::mt19937 rng(7);
  for (int n = 2; n <= 48; ++n)
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      ResidueSet h = scale_set(d % n == 0 ? n : d, interval_set(n / d, n));
      for (int trial = 0; trial < 200; ++trial) {
        // S drawn inside H, R arbitrary
        std::vector<int> sv;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int e : h.elements())
          if (coin(rng)) sv.push_back(e);
        if (sv.empty()) sv.push_back(h.elements()[0]);
        ResidueSet s(n, std::move(sv));
        ResidueSet r = random_nonempty(n, rng);
        CHECK(intersect(sumset(s, r), h) == sumset(s, intersect(r, h)));
      }
    }
}

TEST_CASE("canonical forms: golden values") {
  ResidueSet s(72, {0, 2, 10, 18, 56, 64});
  CHECK(prime_form(s) == ResidueSet(72, {0, 8, 16, 18, 26, 34}));
  CHECK(basic_form(s).str() == "(8,8,2,8,8,38)");
}

TEST_CASE("canonical forms: idempotence, orbit invariance, interval sum") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 96)(rng);
    ResidueSet s = random_nonempty(n, rng);
    ResidueSet pf = prime_form(s);
    CHECK(prime_form(pf) == pf);
    int t = std::uniform_int_distribution<int>(0, n - 1)(rng);
    CHECK(prime_form(translate(s, t)) == pf);
    auto bf = basic_form(s);
    CHECK(std::accumulate(bf.intervals.begin(), bf.intervals.end(), 0) == n);
    CHECK(basic_form(pf) == bf);
  }
}

TEST_CASE("find_period agrees with the exhaustive shift scan") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 72)(rng);
    ResidueSet s = random_nonempty(n, rng);
    CAPTURE(to_string(s));
    CHECK(find_period(s) == find_period_naive(s));
  }
  CHECK_THROWS_AS(find_period(ResidueSet(6, {})), EmptySetError);
}

TEST_CASE("subgroup_generated") {
  CHECK(subgroup_generated(ResidueSet(72, {0, 18})) ==
        ResidueSet(72, {0, 18, 36, 54}));
  CHECK(subgroup_generated(ResidueSet(72, {0, 8, 16})) ==
        scale_set(8, interval_set(9, 72)));
  CHECK(subgroup_generated(ResidueSet(72, {0, 5})) == interval_set(72, 72));
  CHECK_THROWS_AS(subgroup_generated(ResidueSet(72, {5})),
                  std::invalid_argument);
}

TEST_CASE("canon verdicts and failure reasons") {
  ResidueSet s(72, {0, 8, 16, 18, 26, 34});
  ResidueSet r(72, {0, 1, 21, 24, 25, 30, 36, 45, 49, 60, 66, 69});
  auto ok = is_vuza_canon(s, r);
  CHECK(ok.ok);
  CHECK(ok.describe() == "Vuza canon");

  auto not_direct = is_vuza_canon(s, ResidueSet(72, {0, 1, 2}));
  CHECK_FALSE(not_direct.ok);
  CHECK(not_direct.reason == VuzaCheck::Fail::not_direct);

  auto s_per = is_vuza_canon(scale_set(6, interval_set(12, 72)),
                             interval_set(6, 72));
  CHECK_FALSE(s_per.ok);
  CHECK(s_per.reason == VuzaCheck::Fail::s_periodic);
  CHECK(*s_per.s_period == 6);

  auto r_per = is_vuza_canon(interval_set(6, 72),
                             scale_set(6, interval_set(12, 72)));
  CHECK_FALSE(r_per.ok);
  CHECK(r_per.reason == VuzaCheck::Fail::r_periodic);
}

TEST_CASE("duality: the two factors are interchangeable") {
  ResidueSet s(72, {0, 8, 16, 18, 26, 34});
  ResidueSet r(72, {0, 1, 21, 24, 25, 30, 36, 45, 49, 60, 66, 69});
  CHECK(is_vuza_canon(s, r).ok);
  CHECK(is_vuza_canon(r, s).ok);
  CHECK_FALSE(is_vuza_canon(interval_set(6, 72),
                            scale_set(6, interval_set(12, 72))).ok);
  CHECK_FALSE(is_vuza_canon(scale_set(6, interval_set(12, 72)),
                            interval_set(6, 72)).ok);
}

TEST_CASE("affine images of a factorization still factorize") {
  ResidueSet s(72, {0, 8, 16, 18, 26, 34});
  ResidueSet r(72, {0, 1, 21, 24, 25, 30, 36, 45, 49, 60, 66, 69});
  REQUIRE(check_direct_sum(s, r).verdict);
  const int n = 72;
  for (int a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    for (int b : {0, 5, 31}) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(check_direct_sum(affine(a, b, s), scale_set(a, r)).verdict);
    }
  }
}
