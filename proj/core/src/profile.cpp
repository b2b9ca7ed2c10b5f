#include "confdim/profile.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace confdim {

Integer LevelProfile::total_count() const {
  Integer n = 0;
  for (const auto& [e, cell] : cells) n += cell.count;
  return n;
}

Rational LevelProfile::total_nu() const {
  Rational q = 0;
  for (const auto& [e, cell] : cells) q += cell.nu;
  return q;
}

Rational LevelProfile::total_mu(const RhoParameter& rho) const {
  Rational q = 0;
  for (const auto& [e, cell] : cells) q += Rational(cell.count) * mass_value(e, rho);
  return q;
}

namespace {

using Key = std::pair<int, int>; // (light, heavy)

struct Census {
  // per-class running maps, all at the same current depth
  std::map<Key, Integer> null_cells;
  std::map<Key, std::pair<Integer, Rational>> uniform_cells;
  std::map<Key, std::pair<Integer, Rational>> bern_cells;

  void step_null() {
    std::map<Key, Integer> next;
    for (const auto& [k, c] : null_cells) {
      next[{k.first + 1, k.second}] += 3 * c;
      next[{k.first, k.second + 1}] += c;
    }
    null_cells = std::move(next);
  }

  void step_uniform() {
    std::map<Key, std::pair<Integer, Rational>> next;
    for (const auto& [k, cell] : uniform_cells) {
      auto& light = next[{k.first + 1, k.second}];
      light.first += 3 * cell.first;
      light.second += 3 * (cell.second / 4);
      auto& heavy = next[{k.first, k.second + 1}];
      heavy.first += cell.first;
      heavy.second += cell.second / 4;
    }
    uniform_cells = std::move(next);
  }

  void step_bern(const std::array<Rational, 4>& p) {
    bool heavy3 = p[1] >= p[2];
    std::map<Key, std::pair<Integer, Rational>> next;
    for (const auto& [k, cell] : bern_cells) {
      for (int g = 0; g < 4; ++g) {
        bool light = (g == 0 || g == 3) || (g == 1 ? heavy3 : !heavy3);
        Key kk = light ? Key{k.first + 1, k.second} : Key{k.first, k.second + 1};
        if (p[g] > 0) {
          auto& tgt = next[kk];
          tgt.first += cell.first;
          tgt.second += cell.second * p[g];
        } else {
          null_cells[kk] += cell.first;
        }
      }
    }
    bern_cells = std::move(next);
  }

};

struct PointCell {
  Integer count;
  Rational nu;
};

} // namespace

LevelProfile level_profile(const MuTree& tree, int n) {
  if (n < 0) throw std::invalid_argument("level_profile: negative depth");
  LevelProfile out;
  out.depth = n;

  // tail sources discovered in the explicit region, bucketed by depth
  struct Source {
    PathCursor::Kind kind;
    int depth;
    Key key;
    Rational nu;
  };
  std::vector<std::vector<Source>> sources(n + 1);

  // explicit walk: emit depth-n nodes directly, everything else becomes a source
  struct Walk {
    int n;
    LevelProfile* out;
    std::vector<std::vector<Source>>* sources;

    void operator()(const PathCursor& cur, int a, int b) const {
      if (cur.depth() == n) {
        auto& cell = out->cells[MassExponent{a, b}];
        cell.count += 1;
        cell.nu += cur.nu();
        return;
      }
      switch (cur.kind()) {
        case PathCursor::Kind::explicit_node:
          for (int g = 0; g < 4; ++g) {
            bool light = cur.child_is_light(g);
            (*this)(cur.child(g), a + (light ? 1 : 0), b + (light ? 0 : 1));
          }
          return;
        case PathCursor::Kind::null_set:
          (*sources)[cur.depth()].push_back({cur.kind(), cur.depth(), {a, b}, Rational(0)});
          return;
        default:
          (*sources)[cur.depth()].push_back({cur.kind(), cur.depth(), {a, b}, cur.nu()});
          return;
      }
    }
  };
  Walk walk{n, &out, &sources};
  walk(PathCursor(tree), 0, 0);

  // advance the class census depth by depth to n
  Census census;
  std::map<Key, PointCell> point_cells; // atom spines, advanced alongside the census
  const auto& p = tree.oracle().spec().bern_p;

  for (int d = 0; d <= n; ++d) {
    if (d > 0) {
      census.step_null();
      census.step_uniform();
      census.step_bern(p);
      // point spines
      std::map<Key, PointCell> next;
      for (const auto& [k, cell] : point_cells) {
        auto& spine = next[{k.first + 1, k.second}];
        spine.count += cell.count;
        spine.nu += cell.nu;
        census.null_cells[{k.first + 1, k.second}] += 2 * cell.count;
        census.null_cells[{k.first, k.second + 1}] += cell.count;
      }
      point_cells = std::move(next);
    }
    for (const auto& src : sources[d]) {
      switch (src.kind) {
        case PathCursor::Kind::null_set:
          census.null_cells[src.key] += 1;
          break;
        case PathCursor::Kind::uniform: {
          auto& cell = census.uniform_cells[src.key];
          cell.first += 1;
          cell.second += src.nu;
          break;
        }
        case PathCursor::Kind::bernoulli: {
          auto& cell = census.bern_cells[src.key];
          cell.first += 1;
          cell.second += src.nu;
          break;
        }
        case PathCursor::Kind::point_mass: {
          auto& cell = point_cells[src.key];
          cell.count += 1;
          cell.nu += src.nu;
          break;
        }
        case PathCursor::Kind::explicit_node:
          throw std::logic_error("explicit node recorded as census source");
      }
    }
  }

  for (const auto& [k, c] : census.null_cells) {
    auto& cell = out.cells[MassExponent{k.first, k.second}];
    cell.count += c;
  }
  for (const auto& [k, cc] : census.uniform_cells) {
    auto& cell = out.cells[MassExponent{k.first, k.second}];
    cell.count += cc.first;
    cell.nu += cc.second;
  }
  for (const auto& [k, cc] : census.bern_cells) {
    auto& cell = out.cells[MassExponent{k.first, k.second}];
    cell.count += cc.first;
    cell.nu += cc.second;
  }
  for (const auto& [k, cc] : point_cells) {
    auto& cell = out.cells[MassExponent{k.first, k.second}];
    cell.count += cc.count;
    cell.nu += cc.nu;
  }

  // drop empty cells
  for (auto it = out.cells.begin(); it != out.cells.end();) {
    if (it->second.count == 0)
      it = out.cells.erase(it);
    else
      ++it;
  }
  return out;
}

} // namespace confdim
