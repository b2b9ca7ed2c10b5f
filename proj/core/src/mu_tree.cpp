#include "confdim/mu_tree.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace confdim {

namespace {

constexpr double kLn4 = 1.3862943611198906;

Rational pow4_neg(unsigned long m) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 4, m);
  Rational q(1, d);
  q.canonicalize();
  return q;
}

} // namespace

double RhoParameter::log_rho() const { return log_rational(rho); }
double RhoParameter::log_heavy() const { return log_rational(one_minus_3rho()); }

RhoParameter make_rho(Rational rho, double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (rho <= 0 || 4 * rho >= 1)
    throw std::invalid_argument("rho must lie in (0, 1/4)");
  // 4 rho^(eps/3) < 1  <=>  eps * ln(1/rho) > 3 ln 4
  double lhs = epsilon * (-log_rational(rho));
  double rhs = 3 * kLn4;
  if (lhs <= rhs * (1 + 1e-9))
    throw std::invalid_argument("rho fails (or is uncertifiably close to) 4 rho^(eps/3) < 1");
  return RhoParameter{std::move(rho), epsilon};
}

RhoParameter default_rho(double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  double m_real = std::ceil(3.0 / epsilon) + 1.0;
  if (m_real > (1 << 20)) throw std::invalid_argument("epsilon too small");
  auto m = static_cast<unsigned long>(m_real);
  return make_rho(pow4_neg(m), epsilon);
}

Rational mass_value(const MassExponent& e, const RhoParameter& rho) {
  return pow_rational(rho.rho, static_cast<unsigned long>(e.light)) *
         pow_rational(rho.one_minus_3rho(), static_cast<unsigned long>(e.heavy));
}

double log_mass_value(const MassExponent& e, const RhoParameter& rho) {
  return e.light * rho.log_rho() + e.heavy * rho.log_heavy();
}

std::size_t MuTree::explicit_node_count() const {
  std::size_t n = 0;
  for (const auto& lvl : levels_) n += lvl.size();
  return n;
}

const MuTree::NodeRec* MuTree::find_node(int depth, std::uint64_t index) const {
  if (depth < 0 || depth >= static_cast<int>(levels_.size())) return nullptr;
  const auto& lvl = levels_[depth];
  auto it = std::lower_bound(lvl.begin(), lvl.end(), index,
                             [](const NodeRec& n, std::uint64_t i) { return n.index < i; });
  return (it != lvl.end() && it->index == index) ? &*it : nullptr;
}

const MuTree::TailRec* MuTree::find_tail(int depth, std::uint64_t index) const {
  if (depth < 0 || depth >= static_cast<int>(tails_.size())) return nullptr;
  const auto& lvl = tails_[depth];
  auto it = std::lower_bound(lvl.begin(), lvl.end(), index,
                             [](const TailRec& n, std::uint64_t i) { return n.index < i; });
  return (it != lvl.end() && it->index == index) ? &*it : nullptr;
}

// --- PathCursor -------------------------------------------------------------

PathCursor::PathCursor(const MuTree& tree) : tree_(&tree), kind_(Kind::null_set) {
  if (const auto* n = tree.find_node(0, 0)) {
    kind_ = Kind::explicit_node;
    heavy_flag_ = n->heavy_is_I3;
  } else if (const auto* t = tree.find_tail(0, 0)) {
    MeasureOracle::TailInfo info;
    info.kind = t->kind;
    info.atom_offset = t->atom_offset;
    classify_from_tail(info);
  } else {
    throw std::logic_error("MuTree has no root record");
  }
}

void PathCursor::classify_from_tail(const MeasureOracle::TailInfo& info) {
  switch (info.kind) {
    case MeasureTail::null_set:
      kind_ = Kind::null_set;
      nu_ = 0;
      nu_known_ = true;
      break;
    case MeasureTail::uniform:
      kind_ = Kind::uniform;
      break;
    case MeasureTail::bernoulli:
      kind_ = Kind::bernoulli;
      bern_flag_ = tree_->oracle().spec().bern_p[1] >= tree_->oracle().spec().bern_p[2];
      break;
    case MeasureTail::point_mass:
      kind_ = Kind::point_mass;
      atom_offset_ = info.atom_offset;
      break;
    case MeasureTail::none:
      throw std::logic_error("tail marker with kind none");
  }
}

bool PathCursor::heavy_is_I3() const {
  switch (kind_) {
    case Kind::explicit_node: return heavy_flag_;
    case Kind::null_set:
    case Kind::uniform: return true; // tie rule
    case Kind::bernoulli: return bern_flag_;
    case Kind::point_mass: {
      // the comparison nu(I2) >= nu(I3) sees the atom only
      Rational scaled = atom_offset_ * 4;
      Integer c;
      mpz_fdiv_q(c.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
      return c != 2;
    }
  }
  return true;
}

bool PathCursor::child_is_light(int digit) const {
  if (digit == 0 || digit == 3) return true;
  bool heavy3 = heavy_is_I3();
  return digit == 1 ? heavy3 : !heavy3;
}

PathCursor PathCursor::child(int digit) const {
  PathCursor c(*this);
  c.depth_ = depth_ + 1;
  c.index_ = (index_ << 2) | static_cast<unsigned>(digit);
  switch (kind_) {
    case Kind::explicit_node: {
      if (const auto* n = tree_->find_node(c.depth_, c.index_)) {
        c.kind_ = Kind::explicit_node;
        c.heavy_flag_ = n->heavy_is_I3;
        c.nu_known_ = false;
      } else if (const auto* t = tree_->find_tail(c.depth_, c.index_)) {
        MeasureOracle::TailInfo info;
        info.kind = t->kind;
        info.atom_offset = t->atom_offset;
        c.nu_known_ = false;
        c.classify_from_tail(info);
      } else {
        throw std::runtime_error("descent past the explicit frontier at depth " +
                                 std::to_string(c.depth_) + " (rebuild with a larger depth)");
      }
      break;
    }
    case Kind::null_set:
      break; // stays null with nu 0
    case Kind::uniform:
      if (nu_known_) c.nu_ = nu_ / 4;
      break;
    case Kind::bernoulli: {
      const auto& p = tree_->oracle().spec().bern_p;
      if (p[digit] == 0) {
        c.kind_ = Kind::null_set;
        c.nu_ = 0;
        c.nu_known_ = true;
      } else if (nu_known_) {
        c.nu_ = nu_ * p[digit];
      }
      break;
    }
    case Kind::point_mass: {
      Rational scaled = atom_offset_ * 4;
      Integer c_digit;
      mpz_fdiv_q(c_digit.get_mpz_t(), scaled.get_num().get_mpz_t(),
                 scaled.get_den().get_mpz_t());
      if (c_digit == digit) {
        c.atom_offset_ = scaled - c_digit;
      } else {
        c.kind_ = Kind::null_set;
        c.nu_ = 0;
        c.nu_known_ = true;
      }
      break;
    }
  }
  return c;
}

Rational PathCursor::nu() const {
  if (nu_known_) return nu_;
  auto* self = const_cast<PathCursor*>(this);
  self->nu_ = tree_->oracle().mass({tree_->block(), depth_, index_});
  self->nu_known_ = true;
  return nu_;
}

// --- queries ----------------------------------------------------------------

bool MuTree::heavy_is_I3_at(const FourAryInterval& iv) const {
  if (iv.block != block_) throw std::out_of_range("interval outside tree block");
  PathCursor cur(*this);
  for (int j = 1; j <= iv.depth; ++j) cur = cur.child(path_digit(iv, j));
  return cur.heavy_is_I3();
}

MassExponent MuTree::mu_mass(const FourAryInterval& iv) const {
  if (iv.block != block_) throw std::out_of_range("interval outside tree block");
  MassExponent e;
  PathCursor cur(*this);
  for (int j = 1; j <= iv.depth; ++j) {
    int g = path_digit(iv, j);
    if (cur.child_is_light(g))
      ++e.light;
    else
      ++e.heavy;
    cur = cur.child(g);
  }
  return e;
}

void MuTree::walk_grid(int depth,
                       const std::function<void(std::uint64_t, const Rational&, const Rational&)>&
                           visit) const {
  if (depth < 0 || depth > kMaxDepth) throw std::invalid_argument("walk_grid: bad depth");
  Rational light = rho_.rho, heavy = rho_.one_minus_3rho();
  Rational cum = 0;

  struct Rec {
    const MuTree* tree;
    int depth;
    const Rational* light;
    const Rational* heavy;
    const std::function<void(std::uint64_t, const Rational&, const Rational&)>* visit;
    Rational* cum;

    void operator()(const PathCursor& cur, const Rational& mass) const {
      if (cur.depth() == depth) {
        (*visit)(cur.index(), *cum, mass);
        *cum += mass;
        return;
      }
      for (int g = 0; g < 4; ++g)
        (*this)(cur.child(g), mass * (cur.child_is_light(g) ? *light : *heavy));
    }
  };
  Rec rec{this, depth, &light, &heavy, &visit, &cum};
  rec(PathCursor(*this), Rational(1));
}

void MuTree::dump(std::ostream& os) const {
  os << "confdim-mutree v1\n";
  os << "block " << block_ << " depth " << explicit_depth_ << " rho "
     << to_fraction_string(rho_.rho) << "\n";
  for (int d = 0; d < static_cast<int>(levels_.size()); ++d)
    for (const auto& n : levels_[d])
      os << "node " << d << " " << n.index << " " << (n.heavy_is_I3 ? 1 : 0) << "\n";
  for (int d = 0; d < static_cast<int>(tails_.size()); ++d)
    for (const auto& t : tails_[d]) {
      os << "tail " << d << " " << t.index << " ";
      switch (t.kind) {
        case MeasureTail::null_set: os << "null"; break;
        case MeasureTail::uniform: os << "uniform"; break;
        case MeasureTail::bernoulli: os << "bernoulli"; break;
        case MeasureTail::point_mass:
          os << "atom " << to_fraction_string(t.atom_offset);
          break;
        case MeasureTail::none: os << "?"; break;
      }
      os << "\n";
    }
}

// --- construction -----------------------------------------------------------

class TreeBuilder {
 public:
  TreeBuilder(std::shared_ptr<const MeasureOracle> oracle, long long block, int depth,
              RhoParameter rho, std::size_t budget)
      : budget_(budget) {
    if (depth < 0 || depth > kMaxDepth) throw std::invalid_argument("build_tree: bad depth");
    oracle->require_covered(block);
    tree_.block_ = block;
    tree_.explicit_depth_ = depth;
    tree_.rho_ = std::move(rho);
    tree_.oracle_ = std::move(oracle);
    tree_.levels_.resize(depth + 1);
    tree_.tails_.resize(depth + 2);
  }

  MuTree run() {
    FourAryInterval root{tree_.block_, 0, 0};
    auto info = tree_.oracle_->tail_at(root);
    if (info.kind == MeasureTail::none)
      expand(root);
    else
      record_tail(root, info);
    for (auto& lvl : tree_.levels_)
      std::sort(lvl.begin(), lvl.end(),
                [](const MuTree::NodeRec& a, const MuTree::NodeRec& b) { return a.index < b.index; });
    for (auto& lvl : tree_.tails_)
      std::sort(lvl.begin(), lvl.end(),
                [](const MuTree::TailRec& a, const MuTree::TailRec& b) { return a.index < b.index; });
    return std::move(tree_);
  }

 private:
  void record_tail(const FourAryInterval& iv, const MeasureOracle::TailInfo& info) {
    tree_.tails_[iv.depth].push_back({iv.index, info.kind, info.atom_offset});
  }

  void expand(const FourAryInterval& iv) {
    auto kids = children(iv);
    Rational nu2 = tree_.oracle_->mass(kids[1]);
    Rational nu3 = tree_.oracle_->mass(kids[2]);
    tree_.levels_[iv.depth].push_back({iv.index, nu2 >= nu3});
    if (++node_count_ > budget_)
      throw std::runtime_error("explicit node budget exceeded (" + std::to_string(budget_) +
                               " nodes); reduce depth or raise the budget");
    for (const auto& kid : kids) {
      auto info = tree_.oracle_->tail_at(kid);
      if (info.kind != MeasureTail::none) {
        record_tail(kid, info);
      } else if (iv.depth + 1 <= tree_.explicit_depth_) {
        expand(kid);
      } else {
        tree_.frontier_open_ = true;
      }
    }
  }

  MuTree tree_;
  std::size_t budget_;
  std::size_t node_count_ = 0;
};

MuTree build_tree(std::shared_ptr<const MeasureOracle> oracle, long long block, int depth,
                  RhoParameter rho, std::size_t node_budget) {
  return TreeBuilder(std::move(oracle), block, depth, std::move(rho), node_budget).run();
}

} // namespace confdim
