#ifndef CONFDIM_INTERVAL_HPP
#define CONFDIM_INTERVAL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "confdim/rational.hpp"

namespace confdim {

/// Deepest addressable 4-ary level; keeps indices inside 64 bits.
inline constexpr int kMaxDepth = 31;

/// A half-open 4-ary interval [k + index*4^-n, k + (index+1)*4^-n)
/// inside the unit block [k, k+1).
struct FourAryInterval {
  long long block = 0;
  int depth = 0;
  std::uint64_t index = 0;

  friend auto operator<=>(const FourAryInterval&, const FourAryInterval&) = default;
};

Rational left_endpoint(const FourAryInterval& iv);
Rational right_endpoint(const FourAryInterval& iv);
Rational width(const FourAryInterval& iv);

/// Position of `iv` among its siblings, 0..3 (left to right). Depth >= 1.
int child_digit(const FourAryInterval& iv);

FourAryInterval parent(const FourAryInterval& iv);

/// The four half-open children, left to right; they partition `iv`.
std::array<FourAryInterval, 4> children(const FourAryInterval& iv);

/// The unique depth-`depth` interval containing t. Total on rationals;
/// block = floor(t).
FourAryInterval locate(const Rational& t, int depth);

/// Base-4 digit of the index at level j (1-based from the root), i.e. the
/// child position taken at step j of the root-to-iv path.
int path_digit(const FourAryInterval& iv, int j);

std::string to_string(const FourAryInterval& iv);

} // namespace confdim

#endif
