#ifndef CONFDIM_MEASURE_HPP
#define CONFDIM_MEASURE_HPP

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "confdim/interval.hpp"
#include "confdim/rational.hpp"

#include "json.hpp"

namespace confdim {

enum class MeasureVariant { atomic, density, bernoulli4, lebesgue };

const char* variant_name(MeasureVariant v);

struct Atom {
  Rational position;
  Rational weight; // > 0
};

/// One of the four supported measure families, restricted to the blocks
/// [block_lo, block_hi] (inclusive).
struct MeasureSpec {
  MeasureVariant variant = MeasureVariant::lebesgue;
  long long block_lo = 0;
  long long block_hi = 0;

  // atomic
  std::vector<Atom> atoms; // sorted by position, distinct positions

  // density: piecewise-constant cell weights on the depth-`density_base_depth`
  // grid of each covered block
  int density_base_depth = 0;
  std::map<long long, std::vector<Rational>> density_cells;

  // bernoulli4: per-block total mass and digit probabilities (sum to 1)
  Rational bern_mass = 1;
  std::array<Rational, 4> bern_p{};
};

class MeasureParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Validated parse of the measure-spec JSON document. Unknown fields and
/// every schema violation are distinct diagnostics.
MeasureSpec parse_measure_spec(const nlohmann::json& doc);
MeasureSpec load_measure_spec(const std::string& path);

nlohmann::json measure_spec_to_json(const MeasureSpec& spec);

/// How a measure behaves below a given interval, when that behavior is
/// fully determined without further point queries.
enum class MeasureTail {
  none,      // structure still depends on finer nu comparisons
  null_set,  // nu vanishes on the whole interval
  uniform,   // nu proportional to length below here (every split is a tie)
  bernoulli, // self-similar digit weights (p1..p4) below here
  point_mass // exactly one atom below here
};

/// Exact evaluator of nu on 4-ary intervals. Pure and immutable after
/// construction; safe for concurrent use.
class MeasureOracle {
 public:
  explicit MeasureOracle(MeasureSpec spec);

  const MeasureSpec& spec() const { return spec_; }
  bool covers(long long block) const;
  void require_covered(long long block) const;

  /// Exact nu(iv). Throws std::out_of_range naming the block when the
  /// interval lies outside the covered range.
  Rational mass(const FourAryInterval& iv) const;

  Rational block_mass(long long block) const;

  struct TailInfo {
    MeasureTail kind = MeasureTail::none;
    Rational atom_offset;  // point_mass: atom position minus left endpoint,
                           // divided by the interval width (in [0, 1))
    Rational atom_weight;  // point_mass only
  };

  /// Tail classification of the subtree rooted at iv.
  TailInfo tail_at(const FourAryInterval& iv) const;

 private:
  MeasureSpec spec_;
};

} // namespace confdim

#endif
