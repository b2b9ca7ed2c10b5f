#ifndef CONFDIM_MARTINGALE_HPP
#define CONFDIM_MARTINGALE_HPP

#include <vector>

#include "confdim/profile.hpp"
#include "confdim/report.hpp"

namespace confdim {

/// +1 for a light child (mass factor rho), -1 for the heavy child
/// (factor 1-3rho). Depth >= 1.
int step_sign(const MuTree& tree, const FourAryInterval& iv);

/// Walk value S = (#light) - (#heavy) along the root-to-iv path.
int s_value(const MuTree& tree, const FourAryInterval& iv);

/// Exact decision of S < -2 n^(3/4) from integer data (compares
/// (heavy-light)^4 against 16 n^3; no floating-point boundary).
bool below_bad_threshold(const MassExponent& e);

/// Exact decision of light >= n/2 - n^(3/4), the mass-premise inequality.
bool light_count_premise(const MassExponent& e);

struct SubmartingaleReport {
  bool ok = true;
  Rational min_numerator;     // min over nodes of sum_i sign(I^i) nu(I^i)
  FourAryInterval argmin;
  long long nodes_checked = 0;
  bool min_set = false;
};

/// Verifies E[X^n | I] >= 0 at every nu-positive node to depths
/// 0..max_depth-1, via the exact signed child sum.
SubmartingaleReport submartingale_check(const MuTree& tree, int max_depth);

struct WalkStatistics {
  int n = 0;
  double threshold = 0;    // 2 n^(3/4)
  Rational nu_bad = 0;     // nu(B^n), exact
  double azuma_env = 0;    // e^(-t^2/(2n)) = e^(-2 sqrt n)
  double paper_env = 0;    // e^(-sqrt n)
};

/// nu(B^n) from the level profile, with both envelopes populated.
WalkStatistics bad_mass(const MuTree& tree, int n);

double azuma_envelope(int n, double t);

/// CSV rows for a batch of WalkStatistics (schema:
/// n,threshold,nu_bad,nu_bad_float,azuma_env,paper_env).
extern const char* const kWalkCsvHeader;
std::string walk_csv_row(const WalkStatistics& w);

} // namespace confdim

#endif
