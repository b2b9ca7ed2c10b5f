// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Self-contained (no test framework) so the output reads as a
// checklist.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "confdim/dimension.hpp"
#include "confdim/martingale.hpp"
#include "confdim/qs_map.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

using namespace confdim;
using namespace confdim::testing;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

std::vector<std::shared_ptr<const MeasureOracle>> families(long long lo, long long hi) {
  return {lebesgue_oracle(lo, hi), five_atoms_oracle(lo, hi), bernoulli_mid_oracle(lo, hi)};
}

// 1. Adjacent same-length intervals at depths 1..8 over blocks -1..2 have
//    exact mass ratio inside [rho/(1-3rho), (1-3rho)/rho]; cross-block
//    neighbours carry exactly rho^n each.
void criterion1() {
  auto rho = default_rho(1); // 1/256, window bound 253
  bool ok = rho.one_minus_3rho() / rho.rho == 253;
  std::string detail;
  for (const auto& nu : families(-1, 2)) {
    std::vector<MuTree> trees;
    for (long long k = -1; k <= 2; ++k) trees.push_back(build_tree(nu, k, 8, rho));
    auto rep = doubling_check(trees, 8);
    if (!rep.passed) {
      ok = false;
      if (!rep.violations.empty()) detail = rep.violations.front();
    }
  }
  report(1, "adjacent-mass window [1/253, 253] at depths 1-8, blocks -1..2", ok, detail);
}

// 2. Signed child sum >= 0 at every nu-positive node to depth 12; the
//    minimum is 0 for the (0,1/2,1/2,0) digit family and nu(I)/2 for
//    lebesgue.
void criterion2() {
  auto rho = default_rho(1);
  bool ok = true;
  std::string detail;
  for (const auto& nu : families(0, 0)) {
    auto tree = build_tree(nu, 0, 12, rho);
    auto rep = submartingale_check(tree, 12);
    if (!rep.ok) {
      ok = false;
      detail = "negative numerator at " + to_string(rep.argmin);
    }
  }
  {
    auto rep = submartingale_check(build_tree(bernoulli_mid_oracle(), 0, 12, rho), 12);
    if (!(rep.min_set && rep.min_numerator == 0)) ok = false;
  }
  {
    auto rep = submartingale_check(build_tree(lebesgue_oracle(), 0, 12, rho), 12);
    // deepest checked level is 11: nu(I)/2 = (1/4^11)/2
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 4, 11);
    Rational expect(1, 2 * den);
    expect.canonicalize();
    if (!(rep.min_set && rep.min_numerator == expect)) ok = false;
  }
  report(2, "conditional step expectation >= 0 to depth 12, extremal values exact", ok, detail);
}

// 3. nu(B^n) from the aggregated profile equals the exact binomial tail
//    P(Bin(n,1/4) > n/2 + n^(3/4)) for lebesgue; nu(B^25) = 19/4^24;
//    nu(B^n) <= e^(-sqrt n); nu(B^n) = 0 for n <= 16.
void criterion3() {
  auto tree = build_tree(lebesgue_oracle(), 0, 4, default_rho(1));
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 16; ++n)
    if (bad_mass(tree, n).nu_bad != 0) ok = false;
  for (int n : {20, 25, 50, 100, 400}) {
    auto w = bad_mass(tree, n);
    Rational oracle = binomial_upper_tail(n, Rational(1, 4), bad_heavy_cutoff(n));
    if (w.nu_bad != oracle) {
      ok = false;
      detail = "profile/binomial mismatch at n=" + std::to_string(n);
    }
    if (w.nu_bad.get_d() > w.paper_env) ok = false;
  }
  {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 4, 24);
    Rational expect(19, den);
    expect.canonicalize();
    if (bad_mass(tree, 25).nu_bad != expect) {
      ok = false;
      detail = "nu(B^25) != 19/4^24";
    }
  }
  report(3, "walk-tail mass equals the exact binomial oracle, under e^(-sqrt n)", ok, detail);
}

// 4. At n = 2000 (inside the n^(-1/4) < 1/6 regime), epsilon = 1,
//    rho = 1/256: log C_n(1) <= 2000 ln4 + (2000/3) ln(1/256), and every
//    good (a,b) cell has a >= 1000 - 2000^(3/4) by the exact integer test.
void criterion4() {
  auto rho = default_rho(1);
  bool ok = true;
  std::string detail;
  for (const auto& nu : {lebesgue_oracle(), bernoulli_mid_oracle()}) {
    auto tree = build_tree(nu, 0, 4, rho);
    auto rep = covering_bound_check(tree, 2000, 1.0);
    if (!(rep.in_regime && rep.bound_ok && rep.premise_ok && rep.mass_ok)) {
      ok = false;
      detail = "bound=" + std::to_string(rep.log_bound) + " cover=" + std::to_string(rep.log_cover);
    }
  }
  report(4, "covering bound log C_2000(1) <= -924.1 with the light-count premise", ok, detail);
}

// 5. Aggregated profiles equal full 4^n enumeration for n <= 8, exact
//    counts and nu-masses; covering sums agree to 1e-12 relative.
void criterion5() {
  auto rho = default_rho(1);
  bool ok = true;
  std::string detail;
  std::vector<std::shared_ptr<const MeasureOracle>> oracles = {
      lebesgue_oracle(), bernoulli_mid_oracle(), five_atoms_oracle(0, 0),
      density_oracle(0, 0, 2, 5)};
  for (const auto& nu : oracles) {
    auto tree = build_tree(nu, 0, 8, rho);
    for (int n : {2, 5, 8}) {
      auto profile = level_profile(tree, n);
      std::map<std::pair<int, int>, std::pair<Integer, Rational>> expect;
      std::vector<double> terms;
      for (const auto& leaf : brute_leaves(*nu, 0, n)) {
        auto& cell = expect[{leaf.light, leaf.heavy}];
        cell.first += 1;
        cell.second += leaf.nu;
        terms.push_back(0.7 * log_rational(brute_mass(rho, leaf.light, leaf.heavy)));
      }
      if (profile.cells.size() != expect.size()) ok = false;
      for (const auto& [e, cell] : profile.cells) {
        auto it = expect.find({e.light, e.heavy});
        if (it == expect.end() || cell.count != it->second.first || cell.nu != it->second.second) {
          ok = false;
          detail = "profile mismatch at n=" + std::to_string(n);
        }
      }
      double m = *std::max_element(terms.begin(), terms.end());
      double sum = 0;
      for (double t : terms) sum += std::exp(t - m);
      double direct = m + std::log(sum);
      auto agg = covering_sum_log(profile, rho, 0.7, /*good_only=*/false);
      if (!agg || std::abs(*agg - direct) > 1e-12 * std::max(1.0, std::abs(direct))) {
        ok = false;
        detail = "covering sum mismatch at n=" + std::to_string(n);
      }
    }
  }
  report(5, "aggregated census equals full enumeration for n <= 8", ok, detail);
}

// 6. f is strictly increasing on the depth-10 grid with f(k) = k,
//    |f(I)| = mu(I) and exact inversion; the adjacent symmetric ratio is
//    bounded by (1-3rho)/rho with equality 13 for lebesgue at rho = 1/16.
void criterion6() {
  bool ok = true;
  std::string detail;
  {
    auto rho = default_rho(1);
    for (const auto& nu : families(0, 0)) {
      auto tree = build_tree(nu, 0, 10, rho);
      if (f_eval(tree, Rational(0)) != 0 || f_eval(tree, Rational(1)) != 1) ok = false;
      Rational prev = -1;
      std::uint64_t i = 0;
      tree.walk_grid(10, [&](std::uint64_t index, const Rational& cum, const Rational& mass) {
        if (!(cum > prev)) ok = false;
        prev = cum;
        if (mass != mass_value(tree.mu_mass({0, 10, index}), rho)) ok = false;
        if (i % 1021 == 0) { // sampled exact inversion across the grid
          auto inv = f_inverse(tree, cum, 10);
          if (!inv.exact || inv.t != left_endpoint(FourAryInterval{0, 10, index})) ok = false;
        }
        ++i;
      });
    }
  }
  {
    auto tree = build_tree(lebesgue_oracle(), 0, 10, default_rho(3)); // rho = 1/16
    auto rep = qs_ratio_probe(tree, 2, 1);
    bool witnessed = false;
    for (const auto& [k, v] : rep.stats)
      if (k == "max_adjacent_ratio_exact" && v == "13") witnessed = true;
    if (!rep.passed || !witnessed) {
      ok = false;
      detail = "extremal ratio 13 not witnessed";
    }
  }
  report(6, "f exact on the depth-10 grid; adjacent ratio extremal at 13", ok, detail);
}

// 7. Sum of mu over the depth-n partition is exactly 1 for n <= 10, all
//    families, all covered blocks.
void criterion7() {
  auto rho = default_rho(1);
  bool ok = true;
  for (const auto& nu : families(-1, 2)) {
    for (long long k = -1; k <= 2; ++k) {
      auto tree = build_tree(nu, k, 10, rho);
      for (int n = 0; n <= 10; ++n)
        if (level_profile(tree, n).total_mu(rho) != 1) ok = false;
    }
  }
  report(7, "mu is a probability measure at every level n <= 10", ok);
}

// 8. For the (0,1/2,1/2,0) digit family with epsilon = 0.5: C_n(0.5)
//    strictly decreasing over n in {500, 1000, 2000}, and the nu-mass
//    removed with the bad sets is below the envelope sum.
void criterion8() {
  auto tree = build_tree(bernoulli_mid_oracle(), 0, 4, default_rho(0.5));
  std::vector<int> ns{500, 1000, 2000};
  std::vector<double> ss{0.5};
  auto rep = dim_report(tree, 0.5, ns, ss);
  bool ok = rep.epsilon_decays && rep.rows.size() == 3;
  std::string detail;
  if (ok)
    detail = "log C = " + std::to_string(*rep.rows[0].log_cover) + ", " +
             std::to_string(*rep.rows[1].log_cover) + ", " +
             std::to_string(*rep.rows[2].log_cover);
  Rational defect = 0;
  double env = 0;
  for (int n = 17; n <= 500; ++n) {
    defect += bad_mass(tree, n).nu_bad;
    env += std::exp(-std::sqrt(double(n)));
  }
  if (defect.get_d() > env) ok = false;
  report(8, "C_n(0.5) decreases toward 0 over n in {500,1000,2000}; defect under the tail sum",
         ok, detail);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 8 criteria pass\n");
  return 0;
}
