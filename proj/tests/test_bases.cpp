#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_set>

#include "radbasis/bases.hpp"
#include "test_support.hpp"

using namespace radbasis;
using radbasis::testing::random_vec;

namespace {

// Direct simulation of the three-case rule with explicit exclusion sets,
// independent of the cursor implementation in make_permutation_pi.
std::vector<std::int64_t> simulate_pi(std::int64_t K) {
  std::set<std::int64_t> used;
  std::vector<std::int64_t> values;
  for (std::int64_t j = 1; j <= K; ++j) {
    const std::int64_t m = 2 * j;
    std::int64_t v = 0;
    if ((m - 2) % 4 == 0) {
      v = b_value((m - 2) / 4);
    } else {
      for (v = 2;; v += 2) {
        if (!is_b_value(v) && !used.count(v)) break;
      }
    }
    used.insert(v);
    values.push_back(v);
  }
  return values;
}

}  // namespace

TEST_CASE("b-values match the block first-even sequence") {
  const std::vector<std::int64_t> expected = {2, 4, 8, 12, 16, 22, 30};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(b_value(static_cast<std::int64_t>(k)) == expected[k]);
  }
  CHECK(is_b_value(2));
  CHECK(is_b_value(30));
  CHECK(!is_b_value(6));
  CHECK(!is_b_value(10));
}

TEST_CASE("pi spot values") {
  const auto pi = make_permutation_pi(8);
  CHECK(pi.apply(2) == 2);
  CHECK(pi.apply(6) == 4);
  CHECK(pi.apply(10) == 8);
  CHECK(pi.apply(4) == 6);
  CHECK(pi.apply(8) == 10);
  CHECK(pi.apply(12) == 14);
  CHECK(pi.apply(7) == 7);  // odd arguments are fixed
  CHECK_THROWS_AS(pi.apply(18), std::out_of_range);
}

TEST_CASE("pi matches the rule simulation") {
  const std::int64_t K = 2000;
  const auto pi = make_permutation_pi(K);
  const auto sim = simulate_pi(K);
  for (std::int64_t j = 1; j <= K; ++j) {
    REQUIRE(pi.apply(2 * j) == sim[static_cast<std::size_t>(j - 1)]);
  }
}

TEST_CASE("pi is injective and follows the b-value arm up to K = 1e5") {
  const std::int64_t K = 100000;
  const auto pi = make_permutation_pi(K);
  std::unordered_set<std::int64_t> image;
  for (std::int64_t j = 1; j <= K; ++j) {
    const std::int64_t m = 2 * j;
    const std::int64_t v = pi.apply(m);
    CHECK(v % 2 == 0);
    REQUIRE(image.insert(v).second);
    if ((m - 2) % 4 == 0) REQUIRE(v == b_value((m - 2) / 4));
  }
}

TEST_CASE("pi image covers all small evens once K is large enough") {
  const std::int64_t K = 5000;
  const auto pi = make_permutation_pi(K);
  std::unordered_set<std::int64_t> image(pi.even_values().begin(), pi.even_values().end());
  // the min-rule arm has consumed every non-b even up to its cursor and the
  // b-arm every b-value up to its last one; all evens up to the smaller
  // frontier must be present
  std::int64_t last_min = 0;
  std::int64_t last_b = 0;
  for (std::int64_t j = 1; j <= K; ++j) {
    const std::int64_t m = 2 * j;
    if ((m - 2) % 4 == 0) {
      last_b = pi.apply(m);
    } else {
      last_min = pi.apply(m);
    }
  }
  const std::int64_t frontier = std::min(last_min, last_b);
  for (std::int64_t e = 2; e <= frontier; e += 2) REQUIRE(image.count(e) == 1);
}

TEST_CASE("basis vectors in standard coordinates") {
  CHECK(basis_vector(BasisMap::summing(5), 3).entries() == std::vector<double>{1, 1, 1});
  CHECK(basis_vector(BasisMap::difference(5), 2).entries() == std::vector<double>{-1, 1});
  const auto fp = BasisMap::fprime(make_permutation_pi(4));
  CHECK(basis_vector(fp, 2).entries() == std::vector<double>{1, 1});  // e_pi(2) + e_1, pi(2) = 2
  CHECK_THROWS_AS(basis_vector(fp, 9), std::invalid_argument);
}

TEST_CASE("synthesize closed forms") {
  CHECK(synthesize(BasisMap::summing(4), CoeffVec({1, 1})).entries() ==
        std::vector<double>{2, 1});
  const CoeffVec a({0.5, -1, 2});
  CHECK(synthesize(BasisMap::standard(3), a) == a);
  const auto fp = BasisMap::fprime(make_permutation_pi(4));
  CHECK(same_sequence(synthesize(fp, CoeffVec({0, 1})), CoeffVec({1, 1})));
}

TEST_CASE("analyze closed forms") {
  CHECK(analyze(BasisMap::summing(4), CoeffVec({2, 1})).entries() == std::vector<double>{1, 1});
  const CoeffVec x({0.5, -1, 2});
  CHECK(analyze(BasisMap::standard(3), x) == x);
}

TEST_CASE("analyze is the exact inverse of synthesize") {
  SplitMix64 gen(5);
  const auto pi_small = make_permutation_pi(16);
  std::vector<BasisMap> bases = {BasisMap::standard(32),      BasisMap::summing(32),
                                 BasisMap::difference(32),    BasisMap::fprime(pi_small),
                                 BasisMap::fsecond(pi_small)};
  for (const auto& basis : bases) {
    for (int trial = 0; trial < 50; ++trial) {
      const CoeffVec a = random_vec(gen, static_cast<std::size_t>(basis.num_vectors()));
      const CoeffVec back = analyze(basis, synthesize(basis, a));
      REQUIRE(back.dim() >= a.dim());
      for (std::int64_t m = 1; m <= back.dim(); ++m) {
        REQUIRE(back.at(m) == doctest::Approx(a.at(m)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("round trip at num_vectors = 1e4") {
  SplitMix64 gen(71);
  const auto pi_big = make_permutation_pi(5000);
  for (const auto& basis : {BasisMap::standard(10000), BasisMap::summing(10000),
                            BasisMap::difference(10000), BasisMap::fprime(pi_big),
                            BasisMap::fsecond(pi_big)}) {
    const CoeffVec a = random_vec(gen, static_cast<std::size_t>(basis.num_vectors()));
    const CoeffVec back = analyze(basis, synthesize(basis, a));
    double worst = 0.0;
    for (std::int64_t m = 1; m <= basis.num_vectors(); ++m) {
      worst = std::max(worst, std::abs(back.at(m) - a.at(m)));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("f' difference identity: f'_{2m} - f'_{2m-1} = e_{pi(2m)} exactly") {
  const auto pi = make_permutation_pi(64);
  const auto fp = BasisMap::fprime(pi);
  for (std::int64_t m = 1; m <= 64; ++m) {
    std::vector<double> coeff(static_cast<std::size_t>(2 * m), 0.0);
    coeff[static_cast<std::size_t>(2 * m - 1)] = 1.0;
    coeff[static_cast<std::size_t>(2 * m - 2)] = -1.0;
    const CoeffVec y = synthesize(fp, CoeffVec(coeff));
    const std::int64_t target = pi.apply(2 * m);
    for (std::int64_t pos = 1; pos <= y.dim(); ++pos) {
      REQUIRE(y.at(pos) == (pos == target ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("partial-sum projections") {
  CHECK(same_sequence(project_PN(BasisMap::standard(3), CoeffVec({1, 2, 3}), 2),
                      CoeffVec({1, 2, 0})));
  // one summing term: a_1 s_1
  const CoeffVec x = synthesize(BasisMap::summing(3), CoeffVec({2, 1, -1}));
  CHECK(same_sequence(project_PN(BasisMap::summing(3), x, 1), CoeffVec({2})));

  // P_{2m-1} e_pi(2m) = -e_{2m-1}
  const auto fp = BasisMap::fprime(make_permutation_pi(64));
  for (std::int64_t m = 1; m <= 50; ++m) {
    const std::int64_t img = fp.perm().apply(2 * m);
    const CoeffVec projected = project_PN(fp, CoeffVec::unit(img, img), 2 * m - 1);
    for (std::int64_t pos = 1; pos <= projected.dim(); ++pos) {
      REQUIRE(projected.at(pos) == (pos == 2 * m - 1 ? -1.0 : 0.0));
    }
  }
}

TEST_CASE("unconditional constant lower bounds") {
  // sign invariance of the standard basis: never above 1
  for (const auto& space : {SpaceSpec::sup_c0(), SpaceSpec::lp(1), SpaceSpec::block_xp(3)}) {
    CHECK(unconditional_constant_lb(BasisMap::standard(8), space, 10, 3) <= 1.0 + 1e-12);
  }
  // summing basis in c0 is conditional: witnesses found already at dim 2
  const double dim2 = unconditional_constant_lb(BasisMap::summing(2), SpaceSpec::sup_c0(), 10, 3);
  CHECK(dim2 > 2.0);
  double prev = 0.0;
  for (std::int64_t d : {2, 4, 8, 16}) {
    const double c = unconditional_constant_lb(BasisMap::summing(d), SpaceSpec::sup_c0(), 10, 3);
    CHECK(c >= prev);
    prev = c;
  }
  // difference basis in l^1 at dim 2: a = (1,1) flipped to (1,-1) gives 3
  CHECK(unconditional_constant_lb(BasisMap::difference(2), SpaceSpec::lp(1), 10, 3) >=
        3.0 - 1e-12);
  CHECK_THROWS_AS(unconditional_constant_lb(BasisMap::standard(4), SpaceSpec::lp(1), 0, 3),
                  std::invalid_argument);
}
