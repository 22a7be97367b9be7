#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "radbasis/compensated.hpp"
#include "radbasis/spaces.hpp"
#include "test_support.hpp"

using namespace radbasis;
using radbasis::testing::random_vec;

TEST_CASE("norm matches hand-computed values in all three spaces") {
  CHECK(norm(CoeffVec({1, -2, 0.5}), SpaceSpec::sup_c0()) == 2.0);
  CHECK(norm(CoeffVec({3, 4, 0}), SpaceSpec::block_xp(2)) == doctest::Approx(5.0).epsilon(1e-14));
  // blocks {1}, {2,3}: 3 + sqrt(16)
  CHECK(norm(CoeffVec({3, 4, 0}), SpaceSpec::block_xp(1)) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(norm(CoeffVec({1, -1, 1}), SpaceSpec::lp(1)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(CoeffVec({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(CoeffVec({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  CHECK_THROWS_AS(CoeffVec(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::lp(0.5), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::block_xp(0.99), std::invalid_argument);
}

TEST_CASE("block bounds") {
  CHECK(block_bounds(1).lo == 1);
  CHECK(block_bounds(1).hi == 1);
  CHECK(block_bounds(3).lo == 4);
  CHECK(block_bounds(3).hi == 6);
  CHECK(block_bounds(4).lo == 7);
  CHECK(block_bounds(4).hi == 10);
  CHECK_THROWS_AS(block_bounds(5'000'000'000), std::overflow_error);
  CHECK_THROWS_AS(block_bounds(0), std::invalid_argument);
}

TEST_CASE("blocks tile the positive integers") {
  std::int64_t expected_lo = 1;
  for (std::int64_t k = 1; k <= 1'000'000; ++k) {
    const auto b = block_bounds(k);
    REQUIRE(b.lo == expected_lo);
    REQUIRE(b.hi - b.lo + 1 == k);
    expected_lo = b.hi + 1;
  }
}

TEST_CASE("block_index inverts block_bounds") {
  SplitMix64 gen(11);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t pos = 1 + static_cast<std::int64_t>(gen.next_below(1'000'000'000));
    const std::int64_t k = block_index(pos);
    const auto b = block_bounds(k);
    CHECK(b.lo <= pos);
    CHECK(pos <= b.hi);
  }
  CHECK(block_index(1) == 1);
  CHECK(block_index(2) == 2);
  CHECK(block_index(7) == 4);
}

TEST_CASE("norm is homogeneous and subadditive") {
  SplitMix64 gen(42);
  const std::vector<SpaceSpec> spaces = {SpaceSpec::sup_c0(), SpaceSpec::lp(1),
                                         SpaceSpec::lp(1.5),  SpaceSpec::lp(3),
                                         SpaceSpec::block_xp(1), SpaceSpec::block_xp(1.5),
                                         SpaceSpec::block_xp(2), SpaceSpec::block_xp(3)};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen.next_below(40);
    const CoeffVec u = random_vec(gen, n);
    const CoeffVec v = random_vec(gen, n);
    const double alpha = 4.0 * gen.next_symmetric();
    std::vector<double> au(n), sum(n);
    for (std::size_t i = 0; i < n; ++i) {
      au[i] = alpha * u.entries()[i];
      sum[i] = u.entries()[i] + v.entries()[i];
    }
    for (const auto& space : spaces) {
      const double nu = norm(u, space);
      const double nv = norm(v, space);
      CHECK(norm(CoeffVec(au), space) ==
            doctest::Approx(std::abs(alpha) * nu).epsilon(1e-12));
      CHECK(norm(CoeffVec(sum), space) <= nu + nv + 1e-12 * (nu + nv + 1));
    }
  }
}

TEST_CASE("X^2 coincides with l^2") {
  SplitMix64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const CoeffVec v = random_vec(gen, 1 + gen.next_below(60));
    const double a = norm(v, SpaceSpec::block_xp(2));
    const double b = norm(v, SpaceSpec::lp(2));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("entrywise sign flips leave every norm exactly unchanged") {
  SplitMix64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen.next_below(50);
    const CoeffVec v = random_vec(gen, n);
    std::vector<double> flipped = v.entries();
    for (auto& x : flipped) {
      if (gen.next() & 1) x = -x;
    }
    const CoeffVec w(flipped);
    for (const auto& space :
         {SpaceSpec::sup_c0(), SpaceSpec::lp(1.7), SpaceSpec::block_xp(2.3)}) {
      CHECK(norm(v, space) == norm(w, space));
    }
  }
}

TEST_CASE("sparse norm is bit-identical to the dense norm") {
  SplitMix64 gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t dim = 1 + static_cast<std::int64_t>(gen.next_below(400));
    std::vector<SparseEntry> entries;
    std::vector<double> dense(static_cast<std::size_t>(dim), 0.0);
    std::int64_t pos = 0;
    while (true) {
      pos += 1 + static_cast<std::int64_t>(gen.next_below(17));
      if (pos > dim) break;
      const double v = gen.next_symmetric();
      entries.push_back({pos, v});
      dense[static_cast<std::size_t>(pos - 1)] = v;
    }
    const CoeffVec dv(dense);
    for (const auto& space :
         {SpaceSpec::sup_c0(), SpaceSpec::lp(1.5), SpaceSpec::block_xp(3), SpaceSpec::block_xp(1)}) {
      CHECK(sparse_norm(entries, space) == norm(dv, space));
    }
  }
  CHECK_THROWS_AS(sparse_norm(std::vector<SparseEntry>{{3, 1.0}, {3, 2.0}}, SpaceSpec::lp(1)),
                  std::invalid_argument);
}

TEST_CASE("witness_lower: values, l^p divergence, X^p convergence") {
  const CoeffVec w1 = witness_lower(1.5, 1);
  CHECK(w1.dim() == 3);
  CHECK(w1.at(1) == 0.0);
  CHECK(w1.at(2) == doctest::Approx(std::exp2(-1.0 / 1.5)).epsilon(1e-15));
  CHECK(w1.at(3) == w1.at(2));

  for (double p : {1.2, 1.5, 1.8}) {
    const int n_max = 8;
    const CoeffVec w = witness_lower(p, n_max);
    // brute-force p-th power summation: each block contributes exactly 1
    CompensatedSum brute;
    for (std::int64_t pos = 1; pos <= w.dim(); ++pos) {
      if (w.at(pos) != 0.0) brute.add(std::pow(w.at(pos), p));
    }
    CHECK(brute.value() == doctest::Approx(n_max).epsilon(1e-12));
    CHECK(norm(w, SpaceSpec::lp(p)) ==
          doctest::Approx(std::pow(static_cast<double>(n_max), 1.0 / p)).epsilon(1e-12));

    // X^p partial sums are a Cauchy sequence matching the geometric closed form
    std::vector<std::int64_t> checkpoints;
    for (int n = 1; n <= n_max; ++n) checkpoints.push_back(block_bounds(std::int64_t{1} << n).hi);
    const auto xs = partial_sum_norms(w, SpaceSpec::block_xp(p), checkpoints);
    CompensatedSum geo;
    for (int n = 1; n <= n_max; ++n) {
      geo.add(std::exp2(static_cast<double>(n) * (p / 2.0 - 1.0)));
      CHECK(xs[static_cast<std::size_t>(n - 1)] ==
            doctest::Approx(std::pow(geo.value(), 1.0 / p)).epsilon(1e-9));
      if (n >= 2) CHECK(xs[static_cast<std::size_t>(n - 1)] >= xs[static_cast<std::size_t>(n - 2)]);
    }
  }

  CHECK_THROWS_AS(witness_lower(2.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(witness_lower(1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(witness_lower(3.0, 3), std::invalid_argument);
}

TEST_CASE("witness_upper: values, l^p convergence, X^p divergence") {
  const CoeffVec w1 = witness_upper(3.0, 1);
  CHECK(w1.at(2) == 1.0);
  CHECK(w1.at(3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  const int n_max = 8;
  const CoeffVec w = witness_upper(3.0, n_max);

  // each block B_{2^n} carries squared l^2 mass >= 1/2
  for (int n = 1; n <= n_max; ++n) {
    const auto b = block_bounds(std::int64_t{1} << n);
    CompensatedSum mass;
    for (std::int64_t pos = b.lo; pos <= b.hi; ++pos) mass.add(w.at(pos) * w.at(pos));
    CHECK(mass.value() >= 0.5);
  }

  // l^3 partial-sum oracle: sum of j^{-3/2} over the filled positions
  std::int64_t filled = 0;
  for (int n = 1; n <= n_max; ++n) filled += std::int64_t{1} << n;
  CompensatedSum zeta;
  for (std::int64_t j = 1; j <= filled; ++j) zeta.add(std::pow(static_cast<double>(j), -1.5));
  CHECK(norm(w, SpaceSpec::lp(3)) == doctest::Approx(std::pow(zeta.value(), 1.0 / 3.0)).epsilon(1e-12));
  CHECK(norm(w, SpaceSpec::lp(3)) < 1.38);

  // X^3 partial norms after n blocks exceed (n 2^{-3/2})^{1/3}
  std::vector<std::int64_t> checkpoints;
  for (int n = 1; n <= n_max; ++n) checkpoints.push_back(block_bounds(std::int64_t{1} << n).hi);
  const auto xs = partial_sum_norms(w, SpaceSpec::block_xp(3), checkpoints);
  for (int n = 1; n <= n_max; ++n) {
    CHECK(xs[static_cast<std::size_t>(n - 1)] >
          std::pow(n * std::exp2(-1.5), 1.0 / 3.0));
  }

  CHECK_THROWS_AS(witness_upper(2.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(witness_upper(1.5, 3), std::invalid_argument);
}

TEST_CASE("insert_zeros") {
  const CoeffVec a({1, 2, 3});
  const CoeffVec b = insert_zeros(a, {1, 3, 5});
  CHECK(b.entries() == std::vector<double>{1, 0, 2, 0, 3});
  CHECK(same_sequence(insert_zeros(a, {1, 2, 3}), a));
  // blocks {1},{2,3},{4,5}: 1 + 2 + 3
  CHECK(norm(b, SpaceSpec::block_xp(1)) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS(insert_zeros(a, {3, 2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(insert_zeros(a, {1, 3}), std::invalid_argument);
}

TEST_CASE("partial_sum_norms") {
  const auto out = partial_sum_norms(CoeffVec({1, 1, 1}), SpaceSpec::lp(1), {1, 2, 3});
  CHECK(out == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(partial_sum_norms(CoeffVec({1, 1}), SpaceSpec::lp(1), {1, 5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_sum_norms(CoeffVec({1, 1}), SpaceSpec::lp(1), {2, 2}),
                  std::invalid_argument);
}
