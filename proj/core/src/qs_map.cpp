#include "confdim/qs_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace confdim {

namespace {

// smallest n with (t in [0,1)) * 4^n integral, or -1 if not a 4-ary rational
int grid_depth(const Rational& frac) {
  const Integer& den = frac.get_den();
  if (den == 1) return 0;
  // denominator must be 2^e with e <= 2*kMaxDepth
  auto e = mpz_scan1(den.get_mpz_t(), 0);
  Integer p2;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, e);
  if (p2 != den) return -1;
  int depth = static_cast<int>((e + 1) / 2);
  return depth <= kMaxDepth ? depth : -1;
}

} // namespace

Rational f_eval(const MuTree& tree, const Rational& t) {
  long k = static_cast<long>(tree.block());
  if (t < k || t > k + 1) throw std::out_of_range("f_eval: t outside block");
  if (t == k + 1) return Rational(k + 1);

  Rational frac = t - k;
  int n = grid_depth(frac);
  if (n < 0) throw std::invalid_argument("f_eval: t is not a 4-ary grid point");

  FourAryInterval target = locate(t, n);
  Rational light = tree.rho().rho, heavy = tree.rho().one_minus_3rho();
  Rational acc = 0, mass = 1;
  PathCursor cur(tree);
  for (int j = 1; j <= n; ++j) {
    int g = path_digit(target, j);
    for (int i = 0; i < g; ++i)
      acc += mass * (cur.child_is_light(i) ? light : heavy);
    mass *= cur.child_is_light(g) ? light : heavy;
    cur = cur.child(g);
  }
  return acc + k;
}

Rational f_eval(std::span<const MuTree> trees, const Rational& t) {
  for (const auto& tree : trees) {
    long k = static_cast<long>(tree.block());
    if (t >= k && t < k + 1) return f_eval(tree, t);
  }
  // right edge of the last block
  if (!trees.empty() && t == static_cast<long>(trees.back().block()) + 1) return t;
  throw std::out_of_range("f_eval: t outside covered blocks");
}

InverseResult f_inverse(const MuTree& tree, const Rational& y, int max_depth) {
  long k = static_cast<long>(tree.block());
  if (y < k || y > k + 1) throw std::out_of_range("f_inverse: y outside block image");
  if (max_depth < 0 || max_depth > kMaxDepth)
    throw std::invalid_argument("f_inverse: bad depth");

  InverseResult res;
  Rational u = y - k;
  if (u == 1) {
    res.exact = true;
    res.t = Rational(k + 1);
    return res;
  }

  Rational light = tree.rho().rho, heavy = tree.rho().one_minus_3rho();
  Rational base = 0, mass = 1;
  PathCursor cur(tree);
  for (int d = 0; d < max_depth; ++d) {
    if (u == base) break;
    int g = 0;
    for (; g < 3; ++g) {
      Rational m = mass * (cur.child_is_light(g) ? light : heavy);
      if (u < base + m) break;
      base += m;
    }
    mass *= cur.child_is_light(g) ? light : heavy;
    cur = cur.child(g);
  }
  FourAryInterval iv{k, cur.depth(), cur.index()};
  if (u == base) {
    res.exact = true;
    res.t = left_endpoint(iv);
  } else {
    res.exact = false;
    res.bracket = iv;
  }
  return res;
}

CheckReport doubling_check(std::span<const MuTree> trees, int depth) {
  CheckReport rep;
  rep.name = "doubling";
  if (trees.empty() || depth < 1) throw std::invalid_argument("doubling_check: bad input");
  for (std::size_t i = 1; i < trees.size(); ++i)
    if (trees[i].block() != trees[i - 1].block() + 1)
      throw std::invalid_argument("doubling_check: trees must cover contiguous blocks");

  const RhoParameter& rho = trees.front().rho();
  Rational light = rho.rho, heavy = rho.one_minus_3rho();
  double log_window = rho.log_heavy() - rho.log_rho(); // ln((1-3rho)/rho)
  double max_log_ratio = 0;
  std::string worst = "-";
  long long pairs = 0;

  for (const auto& tree : trees) {
    for (int n = 1; n <= depth; ++n) {
      bool have_prev = false;
      Rational prev;
      std::uint64_t prev_index = 0;
      tree.walk_grid(n, [&](std::uint64_t index, const Rational&, const Rational& mass) {
        if (have_prev) {
          ++pairs;
          // ratio prev/mass must lie in [rho/(1-3rho), (1-3rho)/rho]
          bool ok = prev * light <= mass * heavy && mass * light <= prev * heavy;
          if (!ok)
            rep.fail("block " + std::to_string(tree.block()) + " depth " + std::to_string(n) +
                     " pair (" + std::to_string(prev_index) + "," + std::to_string(index) + ")");
          double lr = std::abs(log_rational(prev) - log_rational(mass));
          if (lr > max_log_ratio) {
            max_log_ratio = lr;
            worst = "block " + std::to_string(tree.block()) + " depth " + std::to_string(n) +
                    " index " + std::to_string(index);
          }
        }
        prev = mass;
        prev_index = index;
        have_prev = true;
      });
    }
  }

  // cross-block seams: adjacent same-length intervals on both sides have mass rho^n
  for (std::size_t i = 0; i + 1 < trees.size(); ++i) {
    for (int n = 1; n <= depth; ++n) {
      std::uint64_t last = (std::uint64_t{1} << (2 * n)) - 1;
      MassExponent a = trees[i].mu_mass({trees[i].block(), n, last});
      MassExponent b = trees[i + 1].mu_mass({trees[i + 1].block(), n, 0});
      Rational expect = pow_rational(rho.rho, static_cast<unsigned long>(n));
      if (mass_value(a, rho) != expect || mass_value(b, rho) != expect)
        rep.fail("cross-block seam " + std::to_string(trees[i].block()) + "|" +
                 std::to_string(trees[i + 1].block()) + " depth " + std::to_string(n));
    }
  }

  rep.add_stat("pairs_checked", std::to_string(pairs));
  rep.add_stat("max_ratio", shortest_double(std::exp(max_log_ratio)));
  rep.add_stat("window_max", shortest_double(std::exp(log_window)));
  rep.add_stat("worst_pair", worst);
  return rep;
}

CheckReport qs_ratio_probe(const MuTree& tree, int depth, int max_offset) {
  CheckReport rep;
  rep.name = "qs-ratio-probe";
  if (depth < 1 || depth > 10) throw std::invalid_argument("qs_ratio_probe: depth must be 1..10");

  std::size_t cells = std::size_t{1} << (2 * depth);
  std::vector<Rational> cum(cells + 1);
  tree.walk_grid(depth, [&](std::uint64_t index, const Rational& left, const Rational& mass) {
    cum[index] = left;
    if (index + 1 == cells) cum[cells] = left + mass;
  });

  const RhoParameter& rho = tree.rho();
  Rational light = rho.rho, heavy = rho.one_minus_3rho();
  double max_adj = 0, max_far = 0;
  Rational max_adj_exact = 0;
  for (int j = 1; j <= max_offset; ++j) {
    for (std::size_t i = j; i + j <= cells; ++i) {
      Rational up = cum[i + j] - cum[i];
      Rational down = cum[i] - cum[i - j];
      if (j == 1) {
        // adjacent-interval case: asserted inside the doubling window
        bool ok = down * light <= up * heavy && up * light <= down * heavy;
        if (!ok)
          rep.fail("adjacent triple at index " + std::to_string(i) + " depth " +
                   std::to_string(depth));
        Rational r = up / down;
        if (r > max_adj_exact) max_adj_exact = r;
        max_adj = std::max(max_adj, log_rational(up) - log_rational(down));
      } else {
        max_far = std::max(max_far, std::abs(log_rational(up) - log_rational(down)));
      }
    }
  }
  rep.add_stat("max_adjacent_ratio", shortest_double(std::exp(max_adj)));
  rep.add_stat("max_adjacent_ratio_exact", to_fraction_string(max_adj_exact));
  rep.add_stat("max_far_ratio", shortest_double(std::exp(max_far)));
  rep.add_stat("window_max", to_fraction_string(heavy / light));
  return rep;
}

} // namespace confdim
