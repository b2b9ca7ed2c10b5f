#ifndef CONFDIM_DIMENSION_HPP
#define CONFDIM_DIMENSION_HPP

#include <optional>
#include <span>
#include <vector>

#include "confdim/martingale.hpp"
#include "confdim/profile.hpp"

namespace confdim {

/// log of sum over cells of count * (rho^a (1-3rho)^b)^s, log-sum-exp
/// accumulated. `good_only` restricts to cells with S >= -2 n^(3/4).
/// Returns nullopt for an empty sum.
std::optional<double> covering_sum_log(const LevelProfile& profile, const RhoParameter& rho,
                                       double s, bool good_only);

/// Convenience: aggregated profile at depth n, good cells only.
std::optional<double> covering_sum_log(const MuTree& tree, int n, double s);

struct CoveringBoundReport {
  int n = 0;
  bool in_regime = false;    // n > 1296, i.e. n^(-1/4) < 1/6
  double log_cover = 0;      // log C_n(epsilon)
  double log_bound = 0;      // n ln4 + (epsilon n / 3) ln rho
  double log_delta = 0;      // (n/3) ln rho
  bool bound_ok = false;     // asserted only in regime
  bool premise_ok = false;   // every good cell has light >= n/2 - n^(3/4)
  bool mass_ok = false;      // max good mass <= rho^(n/3) (log compare)
};

/// The covering-bound chain at depth n and exponent epsilon.
CoveringBoundReport covering_bound_check(const MuTree& tree, int n, double epsilon);

/// Finite truncation of the good set: intersection of G^n for
/// m <= n <= N, stored through its removed intervals (maximal 4-ary
/// pieces pruned the moment their walk value goes bad).
struct GoodSetApprox {
  long long block = 0;
  int from_depth = 0;
  int to_depth = 0;
  std::vector<FourAryInterval> removed;
  Rational removed_nu = 0;   // nu of the complement within the block
  Rational union_bound = 0;  // sum of nu(B^n), m <= n <= N
};

GoodSetApprox good_set_approx(const MuTree& tree, int m, int N);

struct DimensionRow {
  int n = 0;
  double s = 0;
  std::optional<double> log_cover;
  double log_bound = 0;
  Rational nu_bad = 0;
  double log_delta = 0;
};

struct DimensionReport {
  double epsilon = 0;
  std::vector<DimensionRow> rows;                  // sorted by (n, s)
  std::vector<std::pair<double, bool>> verdicts;   // per s: decays over depths
  bool epsilon_decays = false;

  nlohmann::json to_json() const;
};

extern const char* const kDimCsvHeader;
std::string dim_csv_row(const DimensionRow& row);

/// Covering-sum table over `depths` x `s_grid` with per-s decay verdicts.
/// Empty s_grid selects the default {eps/4, eps/2, 3eps/4, eps, 1}.
DimensionReport dim_report(const MuTree& tree, double epsilon, std::span<const int> depths,
                           std::span<const double> s_grid);

} // namespace confdim

#endif
