#ifndef CONFDIM_TESTS_BRUTE_HPP
#define CONFDIM_TESTS_BRUTE_HPP

// Independent oracles: literal re-implementations of the inductive rule and
// the binomial tail, kept free of MuTree / LevelProfile internals.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "confdim/interval.hpp"
#include "confdim/measure.hpp"
#include "confdim/mu_tree.hpp"

namespace confdim::testing {

struct BruteLeaf {
  std::uint64_t index;
  int light;
  int heavy;
  Rational nu;
};

// Depth-n leaves in order, each with its (light, heavy) step counts from a
// direct recursion on the heavy-child rule.
inline std::vector<BruteLeaf> brute_leaves(const MeasureOracle& nu, long long block, int n) {
  std::vector<BruteLeaf> out;
  out.reserve(std::size_t{1} << (2 * n));
  struct Rec {
    const MeasureOracle* nu;
    int n;
    std::vector<BruteLeaf>* out;
    void operator()(const FourAryInterval& iv, int light, int heavy) const {
      if (iv.depth == n) {
        out->push_back({iv.index, light, heavy, nu->mass(iv)});
        return;
      }
      auto kids = children(iv);
      bool heavy_is_I3 = nu->mass(kids[1]) >= nu->mass(kids[2]);
      for (int g = 0; g < 4; ++g) {
        bool is_light = (g == 0 || g == 3) || (g == 1 ? heavy_is_I3 : !heavy_is_I3);
        (*this)(kids[g], light + (is_light ? 1 : 0), heavy + (is_light ? 0 : 1));
      }
    }
  };
  Rec rec{&nu, n, &out};
  rec({block, 0, 0}, 0, 0);
  return out;
}

inline Rational brute_mass(const RhoParameter& rho, int light, int heavy) {
  return pow_rational(rho.rho, static_cast<unsigned long>(light)) *
         pow_rational(1 - 3 * rho.rho, static_cast<unsigned long>(heavy));
}

// P(Bin(n, p) >= k), exact.
inline Rational binomial_upper_tail(int n, const Rational& p, int k) {
  Rational q = 1 - p;
  Rational sum = 0;
  for (int b = std::max(k, 0); b <= n; ++b) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, b);
    sum += Rational(c) * pow_rational(p, b) * pow_rational(q, n - b);
  }
  return sum;
}

// smallest integer b with b > n/2 + n^(3/4), decided in exact integer
// arithmetic: b > n/2 + n^(3/4) <=> 2b > n and (2b - n)^4 > 16 n^3
inline int bad_heavy_cutoff(int n) {
  for (int b = 0; b <= n; ++b) {
    long long u = 2LL * b - n;
    if (u > 0) {
      Integer uu(static_cast<long>(u)), nn(static_cast<long>(n));
      if (uu * uu * uu * uu > 16 * nn * nn * nn) return b;
    }
  }
  return n + 1;
}

} // namespace confdim::testing

#endif
