#ifndef CONFDIM_TESTS_FIXTURES_HPP
#define CONFDIM_TESTS_FIXTURES_HPP

#include <algorithm>
#include <memory>
#include <random>

#include "confdim/measure.hpp"
#include "confdim/mu_tree.hpp"

namespace confdim::testing {

inline std::shared_ptr<const MeasureOracle> lebesgue_oracle(long long lo = 0, long long hi = 0) {
  MeasureSpec spec;
  spec.variant = MeasureVariant::lebesgue;
  spec.block_lo = lo;
  spec.block_hi = hi;
  return std::make_shared<MeasureOracle>(std::move(spec));
}

// zero-drift stress family: digits 2 and 3 equally likely
inline std::shared_ptr<const MeasureOracle> bernoulli_mid_oracle(long long lo = 0,
                                                                 long long hi = 0) {
  MeasureSpec spec;
  spec.variant = MeasureVariant::bernoulli4;
  spec.block_lo = lo;
  spec.block_hi = hi;
  spec.bern_mass = 1;
  spec.bern_p = {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)};
  return std::make_shared<MeasureOracle>(std::move(spec));
}

inline std::shared_ptr<const MeasureOracle> bernoulli_oracle(const std::array<Rational, 4>& p,
                                                             long long lo = 0, long long hi = 0) {
  MeasureSpec spec;
  spec.variant = MeasureVariant::bernoulli4;
  spec.block_lo = lo;
  spec.block_hi = hi;
  spec.bern_mass = 1;
  spec.bern_p = p;
  return std::make_shared<MeasureOracle>(std::move(spec));
}

inline std::shared_ptr<const MeasureOracle> atoms_oracle(std::vector<Atom> atoms, long long lo,
                                                         long long hi) {
  MeasureSpec spec;
  spec.variant = MeasureVariant::atomic;
  spec.block_lo = lo;
  spec.block_hi = hi;
  spec.atoms = std::move(atoms);
  std::sort(spec.atoms.begin(), spec.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  return std::make_shared<MeasureOracle>(std::move(spec));
}

// the 5-atom family used across the acceptance checks
inline std::shared_ptr<const MeasureOracle> five_atoms_oracle(long long lo = -1,
                                                              long long hi = 2) {
  return atoms_oracle({{Rational(1, 2), Rational(2)},
                       {Rational(1, 3), Rational(1)},
                       {Rational(-7, 10), Rational(3, 2)},
                       {Rational(11, 10), Rational(1, 4)},
                       {Rational(9, 4), Rational(5)}},
                      lo, hi);
}

inline std::shared_ptr<const MeasureOracle> density_oracle(long long lo, long long hi,
                                                           int base_depth, std::uint64_t seed) {
  MeasureSpec spec;
  spec.variant = MeasureVariant::density;
  spec.block_lo = lo;
  spec.block_hi = hi;
  spec.density_base_depth = base_depth;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(0, 12);
  for (long long k = lo; k <= hi; ++k) {
    std::vector<Rational> cells;
    for (std::size_t c = 0; c < (std::size_t{1} << (2 * base_depth)); ++c) {
      Rational w(num(rng), 7);
      w.canonicalize();
      cells.push_back(std::move(w));
    }
    spec.density_cells.emplace(k, std::move(cells));
  }
  return std::make_shared<MeasureOracle>(std::move(spec));
}

} // namespace confdim::testing

#endif
