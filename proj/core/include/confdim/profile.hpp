#ifndef CONFDIM_PROFILE_HPP
#define CONFDIM_PROFILE_HPP

#include <map>

#include "confdim/mu_tree.hpp"

namespace confdim {

/// Census of depth-n intervals by (light, heavy) step counts, with the
/// interval count and total nu-mass per cell. Exact; the aggregated path
/// makes depths in the thousands feasible.
struct LevelProfile {
  int depth = 0;
  struct Entry {
    Integer count = 0;
    Rational nu = 0;
  };
  std::map<MassExponent, Entry> cells;

  Integer total_count() const;
  Rational total_nu() const;
  /// Sum of count * rho^a (1-3rho)^b — exactly 1 for a full block.
  Rational total_mu(const RhoParameter& rho) const;
};

/// Exact census at depth n. Uses the explicit nodes down to their depth
/// and closed-form / linear-recurrence aggregation under tail markers.
/// Throws when n exceeds the explicit depth over an open frontier.
LevelProfile level_profile(const MuTree& tree, int n);

} // namespace confdim

#endif
