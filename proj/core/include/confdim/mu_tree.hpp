#ifndef CONFDIM_MU_TREE_HPP
#define CONFDIM_MU_TREE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "confdim/measure.hpp"

namespace confdim {

/// The mass-splitting constant rho together with the target dimension
/// bound epsilon it was chosen for. Invariants: 0 < rho < 1/4 and
/// 4 * rho^(epsilon/3) < 1.
struct RhoParameter {
  Rational rho;
  double epsilon = 0;

  Rational one_minus_3rho() const { return 1 - 3 * rho; }
  double log_rho() const;
  double log_heavy() const; // ln(1 - 3 rho)
};

/// rho = 4^-(ceil(3/epsilon)+1); the admissibility inequality is
/// re-checked before returning.
RhoParameter default_rho(double epsilon);

/// Custom rho in (0, 1/4); rejected unless 4 * rho^(epsilon/3) < 1 holds
/// with a certified margin.
RhoParameter make_rho(Rational rho, double epsilon);

/// (light, heavy) step counts along a root-to-interval path.
/// mu mass = rho^light * (1-3rho)^heavy, walk value S = light - heavy.
struct MassExponent {
  int light = 0;
  int heavy = 0;

  int depth() const { return light + heavy; }
  int walk() const { return light - heavy; }
  friend auto operator<=>(const MassExponent&, const MassExponent&) = default;
};

Rational mass_value(const MassExponent& e, const RhoParameter& rho);
double log_mass_value(const MassExponent& e, const RhoParameter& rho);

/// Per-block record of the heavy-child choices defining mu_k.
///
/// Explicit nodes are stored only where the choice genuinely depends on
/// finer nu data; wherever the oracle reports a deterministic tail
/// (null set / uniform / bernoulli / single atom), a tail marker replaces
/// the whole subtree and queries at any depth are resolved from it.
class MuTree {
 public:
  struct NodeRec {
    std::uint64_t index;
    bool heavy_is_I3;
  };
  struct TailRec {
    std::uint64_t index;
    MeasureTail kind;
    Rational atom_offset; // point_mass only
  };

  long long block() const { return block_; }
  int explicit_depth() const { return explicit_depth_; }
  const RhoParameter& rho() const { return rho_; }
  const MeasureOracle& oracle() const { return *oracle_; }
  std::shared_ptr<const MeasureOracle> oracle_ptr() const { return oracle_; }

  std::size_t explicit_node_count() const;
  const std::vector<std::vector<NodeRec>>& explicit_levels() const { return levels_; }
  const std::vector<std::vector<TailRec>>& tail_levels() const { return tails_; }

  /// True when some explicit node at explicit_depth() has children whose
  /// structure is still unresolved (deep queries there are errors).
  bool frontier_open() const { return frontier_open_; }

  /// Heavy-child flag of the node `iv`: true means I3 is heavy. Matches
  /// the nu comparison at explicit nodes and the tie rule elsewhere.
  bool heavy_is_I3_at(const FourAryInterval& iv) const;

  /// (light, heavy) counts along the root-to-iv path. Throws when the
  /// path enters an unresolved region.
  MassExponent mu_mass(const FourAryInterval& iv) const;

  /// Streams the depth-`depth` leaves left to right with their cumulative
  /// left mass and own mu-mass, both exact. O(4^depth).
  void walk_grid(int depth,
                 const std::function<void(std::uint64_t index, const Rational& left_cum,
                                          const Rational& mass)>& visit) const;

  /// Versioned textual dump of explicit nodes and tail markers.
  void dump(std::ostream& os) const;

 private:
  friend class TreeBuilder;
  friend class PathCursor;

  long long block_ = 0;
  int explicit_depth_ = 0;
  RhoParameter rho_;
  std::shared_ptr<const MeasureOracle> oracle_;
  std::vector<std::vector<NodeRec>> levels_; // sorted by index per depth
  std::vector<std::vector<TailRec>> tails_;  // sorted by index per depth
  bool frontier_open_ = false;

  const NodeRec* find_node(int depth, std::uint64_t index) const;
  const TailRec* find_tail(int depth, std::uint64_t index) const;
};

/// Inductive construction of mu_k on block `block`, expanding explicit
/// nodes to at most `depth` levels (tail-covered regions never expand).
/// `node_budget` caps the explicit part.
MuTree build_tree(std::shared_ptr<const MeasureOracle> oracle, long long block, int depth,
                  RhoParameter rho, std::size_t node_budget = 8u << 20);

/// Resolves heavy flags along a root-to-leaf walk without materializing
/// nodes; the traversal engine behind mu_mass, f, and the profiles.
class PathCursor {
 public:
  explicit PathCursor(const MuTree& tree); // at the root

  enum class Kind { explicit_node, null_set, uniform, bernoulli, point_mass };
  Kind kind() const { return kind_; }
  int depth() const { return depth_; }
  std::uint64_t index() const { return index_; }

  bool heavy_is_I3() const;
  /// True when the child at `digit` receives the light factor rho.
  bool child_is_light(int digit) const;
  PathCursor child(int digit) const;

  /// nu of the current interval (exact; no oracle call under tails once
  /// entered with a known mass). May call the oracle at explicit nodes.
  Rational nu() const;

 private:
  const MuTree* tree_;
  Kind kind_;
  int depth_ = 0;
  std::uint64_t index_ = 0;
  bool heavy_flag_ = true;     // explicit nodes
  Rational nu_;                // carried mass of the current interval
  Rational atom_offset_;       // point_mass: offset of the atom in [0,1)
  bool bern_flag_ = true;      // bernoulli: p2 >= p3
  bool nu_known_ = false;

  void classify_from_tail(const MeasureOracle::TailInfo& info);
};

} // namespace confdim

#endif
