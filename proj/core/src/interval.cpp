#include "confdim/interval.hpp"

#include <stdexcept>

namespace confdim {

namespace {

void check_depth(int depth) {
  if (depth < 0 || depth > kMaxDepth)
    throw std::invalid_argument("4-ary depth out of range: " + std::to_string(depth));
}

Integer pow4(int n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 4, static_cast<unsigned long>(n));
  return r;
}

} // namespace

Rational left_endpoint(const FourAryInterval& iv) {
  Rational q(Integer(iv.index), pow4(iv.depth));
  q.canonicalize();
  return q + static_cast<long>(iv.block);
}

Rational right_endpoint(const FourAryInterval& iv) {
  Rational q(Integer(iv.index) + 1, pow4(iv.depth));
  q.canonicalize();
  return q + static_cast<long>(iv.block);
}

Rational width(const FourAryInterval& iv) {
  Rational q(1, pow4(iv.depth));
  q.canonicalize();
  return q;
}

int child_digit(const FourAryInterval& iv) {
  if (iv.depth < 1) throw std::invalid_argument("child_digit: root has no parent");
  return static_cast<int>(iv.index & 3u);
}

FourAryInterval parent(const FourAryInterval& iv) {
  if (iv.depth < 1) throw std::invalid_argument("parent: root has no parent");
  return {iv.block, iv.depth - 1, iv.index >> 2};
}

std::array<FourAryInterval, 4> children(const FourAryInterval& iv) {
  check_depth(iv.depth + 1);
  std::array<FourAryInterval, 4> out;
  for (int i = 0; i < 4; ++i)
    out[i] = {iv.block, iv.depth + 1, (iv.index << 2) | static_cast<unsigned>(i)};
  return out;
}

FourAryInterval locate(const Rational& t, int depth) {
  check_depth(depth);
  Integer block;
  mpz_fdiv_q(block.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  if (!block.fits_slong_p()) throw std::out_of_range("locate: block too large");
  Rational frac = t - Rational(block);
  // index = floor(frac * 4^depth)
  Integer idx;
  Integer scaled_num = frac.get_num() * pow4(depth);
  mpz_fdiv_q(idx.get_mpz_t(), scaled_num.get_mpz_t(), frac.get_den().get_mpz_t());
  return {block.get_si(), depth, idx.get_ui()};
}

int path_digit(const FourAryInterval& iv, int j) {
  if (j < 1 || j > iv.depth) throw std::invalid_argument("path_digit: level out of range");
  return static_cast<int>((iv.index >> (2 * (iv.depth - j))) & 3u);
}

std::string to_string(const FourAryInterval& iv) {
  return "(k=" + std::to_string(iv.block) + ", n=" + std::to_string(iv.depth) +
         ", i=" + std::to_string(iv.index) + ")";
}

} // namespace confdim
