#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "confdim/martingale.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

using namespace confdim;
using namespace confdim::testing;

namespace {

// block 0 with prescribed depth-1 child masses (as density cells)
std::shared_ptr<const MeasureOracle> four_cells(int a, int b, int c, int d) {
  MeasureSpec spec;
  spec.variant = MeasureVariant::density;
  spec.block_lo = 0;
  spec.block_hi = 0;
  spec.density_base_depth = 1;
  spec.density_cells[0] = {Rational(a), Rational(b), Rational(c), Rational(d)};
  return std::make_shared<MeasureOracle>(std::move(spec));
}

} // namespace

TEST_CASE("step signs") {
  auto rho = default_rho(1);
  auto leb = build_tree(lebesgue_oracle(), 0, 4, rho);
  // outer children are always light
  CHECK(step_sign(leb, {0, 1, 0}) == +1);
  CHECK(step_sign(leb, {0, 1, 3}) == +1);
  // lebesgue ties make I3 heavy
  CHECK(step_sign(leb, {0, 1, 2}) == -1);
  CHECK(step_sign(leb, {0, 2, 10}) == -1);

  // single atom: the spine is all light
  auto atom = build_tree(atoms_oracle({{Rational(1, 3), Rational(1)}}, 0, 0), 0, 16, rho);
  for (int n = 1; n <= 16; ++n) CHECK(step_sign(atom, locate(Rational(1, 3), n)) == +1);
}

TEST_CASE("walk values") {
  auto rho = default_rho(1);
  auto leb = build_tree(lebesgue_oracle(), 0, 4, rho);
  CHECK(s_value(leb, {0, 0, 0}) == 0);
  CHECK(s_value(leb, {0, 2, 10}) == -2); // path (I3, I3)
  auto atom = build_tree(atoms_oracle({{Rational(1, 3), Rational(1)}}, 0, 0), 0, 12, rho);
  CHECK(s_value(atom, locate(Rational(1, 3), 12)) == 12);
}

TEST_CASE("conditional step expectation, hand-built cases") {
  auto rho = default_rho(1);
  {
    // children nu = (1, 0, 2, 0): heavy is I2, numerator = (1+2+0) - 0 = 3
    auto tree = build_tree(four_cells(1, 0, 2, 0), 0, 4, rho);
    auto rep = submartingale_check(tree, 1);
    CHECK(rep.ok);
    CHECK(rep.min_numerator == 3);
  }
  {
    // children nu = (0, 2, 2, 0): tie, heavy is I3, numerator = (0+2+0) - 2 = 0
    auto tree = build_tree(four_cells(0, 2, 2, 0), 0, 4, rho);
    auto rep = submartingale_check(tree, 1);
    CHECK(rep.ok);
    CHECK(rep.min_numerator == 0);
  }
}

TEST_CASE("sub-martingale inequality to depth 8, all families") {
  auto rho = default_rho(1);
  std::vector<std::shared_ptr<const MeasureOracle>> oracles = {
      lebesgue_oracle(), bernoulli_mid_oracle(), five_atoms_oracle(0, 0),
      density_oracle(0, 0, 3, 23)};
  for (const auto& nu : oracles) {
    auto tree = build_tree(nu, 0, 8, rho);
    auto rep = submartingale_check(tree, 8);
    CHECK(rep.ok);
    CHECK(rep.min_numerator >= 0);
  }
}

TEST_CASE("lebesgue: numerator is nu(I)/2 at every node") {
  auto tree = build_tree(lebesgue_oracle(), 0, 6, default_rho(1));
  auto rep = submartingale_check(tree, 6);
  CHECK(rep.ok);
  // the minimum is attained at the deepest level: (1/4^5)/2
  CHECK(rep.min_numerator == Rational(1, 2048));
}

TEST_CASE("bad-threshold decisions are exact") {
  // S >= -n can never beat -2 n^(3/4) for n <= 16
  for (int n = 1; n <= 16; ++n) CHECK_FALSE(below_bad_threshold({0, n}));
  // n = 17, all-heavy: 17 > 2 * 17^(3/4) = 16.75...
  CHECK(below_bad_threshold({0, 17}));
  // n = 25: cutoff at heavy count 24 (S = -23 < -22.36)
  CHECK(below_bad_threshold({1, 24}));
  CHECK_FALSE(below_bad_threshold({2, 23}));
  // boundary: d^4 == 16 n^3 means S == -t, not strictly below
  // n = 16, S = -16: (-16)^4 = 65536 == 16 * 16^3
  CHECK_FALSE(below_bad_threshold({0, 16}));
}

TEST_CASE("light-count premise matches the walk bound") {
  for (int n : {100, 1296, 1297, 2000}) {
    for (int light = 0; light <= n; light += 7) {
      MassExponent e{light, n - light};
      bool premise = light_count_premise(e);
      bool good = !below_bad_threshold(e);
      // good implies premise (S >= -2n^(3/4) forces light >= n/2 - n^(3/4))
      if (good) CHECK(premise);
    }
  }
}

TEST_CASE("azuma envelope values") {
  CHECK(azuma_envelope(10, 0) == 1.0);
  CHECK(azuma_envelope(25, 2 * std::pow(25.0, 0.75)) == doctest::Approx(std::exp(-10.0)));
  CHECK(azuma_envelope(1296, 432) == doctest::Approx(std::exp(-72.0)));
}

TEST_CASE("bad mass: empty for n <= 16, binomial tail for lebesgue") {
  auto tree = build_tree(lebesgue_oracle(), 0, 4, default_rho(1));
  CHECK(bad_mass(tree, 16).nu_bad == 0);

  // n = 25: nu(B^25) = P(heavy >= 24) over Bin(25, 1/4) = 19 * 4^-24
  auto w = bad_mass(tree, 25);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 4, 24);
  Rational expect(19, den);
  expect.canonicalize();
  CHECK(w.nu_bad == expect);

  // independent binomial oracle at several depths
  for (int n : {20, 25, 50, 100}) {
    auto stats = bad_mass(tree, n);
    Rational tail = binomial_upper_tail(n, Rational(1, 4), bad_heavy_cutoff(n));
    CHECK(stats.nu_bad == tail);
    CHECK(stats.nu_bad.get_d() <= stats.paper_env);
  }
}

TEST_CASE("bernoulli mid family: tail with heavy probability 1/2") {
  auto tree = build_tree(bernoulli_mid_oracle(), 0, 4, default_rho(1));
  for (int n : {20, 40, 80}) {
    auto stats = bad_mass(tree, n);
    Rational tail = binomial_upper_tail(n, Rational(1, 2), bad_heavy_cutoff(n));
    CHECK(stats.nu_bad == tail);
  }
}

TEST_CASE("summability witness: partial sums bounded by the envelope sum") {
  auto tree = build_tree(bernoulli_mid_oracle(), 0, 4, default_rho(1));
  double env_sum = 0;
  Rational nu_sum = 0;
  double prev = -1;
  for (int n = 1; n <= 200; ++n) {
    auto w = bad_mass(tree, n);
    nu_sum += w.nu_bad;
    env_sum += w.paper_env;
    double cur = nu_sum.get_d();
    CHECK(cur >= prev); // monotone
    prev = cur;
    CHECK(cur <= env_sum);
  }
}

TEST_CASE("walk CSV schema") {
  auto tree = build_tree(lebesgue_oracle(), 0, 4, default_rho(1));
  auto w = bad_mass(tree, 25);
  auto row = walk_csv_row(w);
  CHECK(std::string(kWalkCsvHeader) == "n,threshold,nu_bad,nu_bad_float,azuma_env,paper_env");
  CHECK(row.rfind("25,", 0) == 0);
  CHECK(row.find("19/") != std::string::npos);
}
