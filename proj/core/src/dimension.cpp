#include "confdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace confdim {

namespace {

constexpr double kLn4 = 1.3862943611198906;

double log_sum_exp(const std::vector<double>& terms) {
  double m = *std::max_element(terms.begin(), terms.end());
  double s = 0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

} // namespace

std::optional<double> covering_sum_log(const LevelProfile& profile, const RhoParameter& rho,
                                       double s, bool good_only) {
  if (s < 0) throw std::invalid_argument("covering_sum_log: exponent must be >= 0");
  double lr = rho.log_rho(), lh = rho.log_heavy();
  std::vector<double> terms;
  terms.reserve(profile.cells.size());
  for (const auto& [e, cell] : profile.cells) {
    if (good_only && below_bad_threshold(e)) continue;
    terms.push_back(log_integer(cell.count) + s * (e.light * lr + e.heavy * lh));
  }
  if (terms.empty()) return std::nullopt;
  return log_sum_exp(terms);
}

std::optional<double> covering_sum_log(const MuTree& tree, int n, double s) {
  return covering_sum_log(level_profile(tree, n), tree.rho(), s, /*good_only=*/true);
}

CoveringBoundReport covering_bound_check(const MuTree& tree, int n, double epsilon) {
  if (n < 1) throw std::invalid_argument("covering_bound_check: depth must be >= 1");
  CoveringBoundReport rep;
  rep.n = n;
  rep.in_regime = n > 1296; // n^(-1/4) < 1/6
  const RhoParameter& rho = tree.rho();
  double lr = rho.log_rho();

  LevelProfile profile = level_profile(tree, n);
  auto cover = covering_sum_log(profile, rho, epsilon, /*good_only=*/true);
  rep.log_cover = cover.value_or(-std::numeric_limits<double>::infinity());
  rep.log_bound = n * kLn4 + epsilon * n / 3.0 * lr;
  rep.log_delta = n / 3.0 * lr;

  rep.premise_ok = true;
  double max_good_log_mass = -std::numeric_limits<double>::infinity();
  for (const auto& [e, cell] : profile.cells) {
    if (below_bad_threshold(e)) continue;
    if (!light_count_premise(e)) rep.premise_ok = false;
    max_good_log_mass = std::max(max_good_log_mass, log_mass_value(e, rho));
  }
  rep.mass_ok = max_good_log_mass <= rep.log_delta + 1e-9 * std::abs(rep.log_delta);
  rep.bound_ok = rep.log_cover <= rep.log_bound + 1e-9 * std::abs(rep.log_bound);
  return rep;
}

GoodSetApprox good_set_approx(const MuTree& tree, int m, int N) {
  if (m < 1 || m > N || N > kMaxDepth)
    throw std::invalid_argument("good_set_approx: need 1 <= m <= N <= max depth");
  GoodSetApprox out;
  out.block = tree.block();
  out.from_depth = m;
  out.to_depth = N;

  // subtree at depth d with walk value s can still contain a bad node at
  // depth d' <= N only if the all-heavy continuation goes bad
  auto may_go_bad = [&](int d, int s) {
    for (int dd = std::max(d + 1, m); dd <= N; ++dd) {
      int w = s - (dd - d);
      if (w < 0) {
        MassExponent e{(dd + w) / 2, (dd - w) / 2};
        if (below_bad_threshold(e)) return true;
      }
    }
    return false;
  };

  struct Rec {
    GoodSetApprox* out;
    int m, N;
    const std::function<bool(int, int)>* may_go_bad;

    void operator()(const PathCursor& cur, int a, int b) const {
      int d = a + b;
      if (d >= m && below_bad_threshold(MassExponent{a, b})) {
        out->removed.push_back({out->block, d, cur.index()});
        out->removed_nu += cur.nu();
        return;
      }
      if (d == N) return;
      if (!(*may_go_bad)(d, a - b)) return; // whole subtree stays good
      for (int g = 0; g < 4; ++g) {
        bool light = cur.child_is_light(g);
        (*this)(cur.child(g), a + (light ? 1 : 0), b + (light ? 0 : 1));
      }
    }
  };
  std::function<bool(int, int)> pred = may_go_bad;
  Rec rec{&out, m, N, &pred};
  rec(PathCursor(tree), 0, 0);

  for (int n = m; n <= N; ++n) out.union_bound += bad_mass(tree, n).nu_bad;
  return out;
}

const char* const kDimCsvHeader = "n,s,log_C,paper_log_bound,nu_bad,delta_n";

std::string dim_csv_row(const DimensionRow& row) {
  std::string log_c = row.log_cover ? shortest_double(*row.log_cover) : "-inf";
  return std::to_string(row.n) + "," + shortest_double(row.s) + "," + log_c + "," +
         shortest_double(row.log_bound) + "," + to_fraction_string(row.nu_bad) + "," +
         shortest_double(row.log_delta);
}

nlohmann::json DimensionReport::to_json() const {
  nlohmann::json doc;
  doc["epsilon"] = epsilon;
  auto rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["n"] = r.n;
    row["s"] = r.s;
    if (r.log_cover) row["log_C"] = *r.log_cover;
    row["paper_log_bound"] = r.log_bound;
    row["nu_bad"] = to_fraction_string(r.nu_bad);
    row["delta_n_log"] = r.log_delta;
    rows_json.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows_json);
  auto verdicts_json = nlohmann::json::array();
  for (const auto& [s, decays] : verdicts)
    verdicts_json.push_back({{"s", s}, {"decays", decays}});
  doc["verdicts"] = std::move(verdicts_json);
  doc["epsilon_decays"] = epsilon_decays;
  if (epsilon_decays)
    doc["summary"] = "pushforward upper-dimension estimate < " + shortest_double(epsilon);
  return doc;
}

DimensionReport dim_report(const MuTree& tree, double epsilon, std::span<const int> depths,
                           std::span<const double> s_grid) {
  if (epsilon <= 0) throw std::invalid_argument("dim_report: epsilon must be positive");
  DimensionReport rep;
  rep.epsilon = epsilon;

  std::vector<int> ns(depths.begin(), depths.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<double> ss(s_grid.begin(), s_grid.end());
  if (ss.empty()) ss = {epsilon / 4, epsilon / 2, 3 * epsilon / 4, epsilon, 1.0};
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());

  const RhoParameter& rho = tree.rho();
  double lr = rho.log_rho();
  for (int n : ns) {
    LevelProfile profile = level_profile(tree, n);
    Rational nu_bad = 0;
    for (const auto& [e, cell] : profile.cells)
      if (below_bad_threshold(e)) nu_bad += cell.nu;
    for (double s : ss) {
      DimensionRow row;
      row.n = n;
      row.s = s;
      row.log_cover = covering_sum_log(profile, rho, s, /*good_only=*/true);
      row.log_bound = n * kLn4 + s * n / 3.0 * lr;
      row.nu_bad = nu_bad;
      row.log_delta = n / 3.0 * lr;
      rep.rows.push_back(std::move(row));
    }
  }

  for (double s : ss) {
    bool decays = ns.size() >= 2;
    std::optional<double> prev;
    for (const auto& row : rep.rows) {
      if (row.s != s) continue;
      if (!row.log_cover) {
        decays = false;
        break;
      }
      if (prev && *row.log_cover >= *prev) decays = false;
      prev = row.log_cover;
    }
    rep.verdicts.emplace_back(s, decays);
    if (s == epsilon) rep.epsilon_decays = decays;
  }
  return rep;
}

} // namespace confdim
