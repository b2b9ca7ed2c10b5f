#ifndef CONFDIM_QS_MAP_HPP
#define CONFDIM_QS_MAP_HPP

#include <optional>
#include <span>
#include <vector>

#include "confdim/mu_tree.hpp"
#include "confdim/report.hpp"

namespace confdim {

/// f_k(t) = k + mu_k([k, t]) for t on the 4-ary grid of block k
/// (t = k+1 allowed and maps to k+1). Exact; O(depth of t).
Rational f_eval(const MuTree& tree, const Rational& t);

/// Multi-block evaluation: picks the tree owning floor(t).
Rational f_eval(std::span<const MuTree> trees, const Rational& t);

struct InverseResult {
  bool exact = false;
  Rational t;               // exact preimage when exact
  FourAryInterval bracket;  // depth-max_depth interval containing f^-1(y) otherwise
};

/// Preimage of y in [k, k+1]: descends choosing the child whose cumulative
/// mu-interval contains y, to at most `max_depth` levels.
InverseResult f_inverse(const MuTree& tree, const Rational& y, int max_depth);

/// Every pair of adjacent same-length 4-ary intervals at depths 1..depth:
/// within-block mass ratios must lie in [rho/(1-3rho), (1-3rho)/rho]
/// (exact comparison); adjacent cross-block pairs must have exactly equal
/// masses rho^n. Trees must be sorted by block and contiguous.
CheckReport doubling_check(std::span<const MuTree> trees, int depth);

/// Symmetric-triple probe at scale 4^-depth: ratios
/// |f(x+t)-f(x)| / |f(x)-f(x-t)| for x on the depth grid. The adjacent
/// case (j = 1) is asserted inside the doubling window; larger aligned
/// offsets j <= max_offset are reported, not asserted.
CheckReport qs_ratio_probe(const MuTree& tree, int depth, int max_offset = 8);

} // namespace confdim

#endif
