#include "confdim/martingale.hpp"

#include <cmath>
#include <stdexcept>

namespace confdim {

int step_sign(const MuTree& tree, const FourAryInterval& iv) {
  if (iv.depth < 1) throw std::invalid_argument("step_sign: root has no step");
  PathCursor cur(tree);
  for (int j = 1; j < iv.depth; ++j) cur = cur.child(path_digit(iv, j));
  return cur.child_is_light(path_digit(iv, iv.depth)) ? +1 : -1;
}

int s_value(const MuTree& tree, const FourAryInterval& iv) {
  return tree.mu_mass(iv).walk();
}

bool below_bad_threshold(const MassExponent& e) {
  // S < -2 n^(3/4)  <=>  (heavy - light)^4 > 16 n^3, for S < 0
  long long s = e.walk();
  if (s >= 0) return false;
  Integer d(static_cast<long>(-s)), n(e.depth());
  Integer lhs = d * d * d * d;
  Integer rhs = 16 * n * n * n;
  return lhs > rhs;
}

bool light_count_premise(const MassExponent& e) {
  // light >= n/2 - n^(3/4)  <=>  n - 2*light <= 2 n^(3/4)
  long long u = e.depth() - 2LL * e.light;
  if (u <= 0) return true;
  Integer uu(static_cast<long>(u)), n(e.depth());
  return uu * uu * uu * uu <= 16 * n * n * n;
}

namespace {

void submartingale_rec(const PathCursor& cur, const Rational& nu, int max_depth, long long block,
                       SubmartingaleReport& rep) {
  if (nu == 0) return;
  std::array<PathCursor, 4> kids{cur.child(0), cur.child(1), cur.child(2), cur.child(3)};
  Rational numerator = 0;
  for (int g = 0; g < 4; ++g) {
    const Rational kid_nu = kids[g].nu();
    if (cur.child_is_light(g))
      numerator += kid_nu;
    else
      numerator -= kid_nu;
  }
  ++rep.nodes_checked;
  if (!rep.min_set || numerator < rep.min_numerator) {
    rep.min_set = true;
    rep.min_numerator = numerator;
    rep.argmin = {block, cur.depth(), cur.index()};
  }
  if (numerator < 0) rep.ok = false;
  if (cur.depth() + 1 < max_depth)
    for (int g = 0; g < 4; ++g) submartingale_rec(kids[g], kids[g].nu(), max_depth, block, rep);
}

} // namespace

SubmartingaleReport submartingale_check(const MuTree& tree, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("submartingale_check: depth must be >= 1");
  SubmartingaleReport rep;
  PathCursor root(tree);
  Rational nu = root.nu();
  submartingale_rec(root, nu, max_depth, tree.block(), rep);
  return rep;
}

double azuma_envelope(int n, double t) {
  if (n < 1 || t < 0) throw std::invalid_argument("azuma_envelope: bad arguments");
  return std::exp(-t * t / (2.0 * n));
}

WalkStatistics bad_mass(const MuTree& tree, int n) {
  if (n < 1) throw std::invalid_argument("bad_mass: depth must be >= 1");
  WalkStatistics w;
  w.n = n;
  w.threshold = 2.0 * std::pow(static_cast<double>(n), 0.75);
  LevelProfile profile = level_profile(tree, n);
  for (const auto& [e, cell] : profile.cells)
    if (below_bad_threshold(e)) w.nu_bad += cell.nu;
  w.azuma_env = azuma_envelope(n, w.threshold); // = e^(-2 sqrt n)
  w.paper_env = std::exp(-std::sqrt(static_cast<double>(n)));
  return w;
}

const char* const kWalkCsvHeader = "n,threshold,nu_bad,nu_bad_float,azuma_env,paper_env";

std::string walk_csv_row(const WalkStatistics& w) {
  return std::to_string(w.n) + "," + shortest_double(w.threshold) + "," +
         to_fraction_string(w.nu_bad) + "," + shortest_double(w.nu_bad.get_d()) + "," +
         shortest_double(w.azuma_env) + "," + shortest_double(w.paper_env);
}

} // namespace confdim
