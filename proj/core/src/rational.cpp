#include "confdim/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace confdim {

namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    Integer n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+")
      whole = "0";
    if (!is_integer_token(whole) || frac.empty() || !is_integer_token(frac) ||
        frac[0] == '+' || frac[0] == '-')
      return std::nullopt;
    Integer w(std::string(whole), 10), f(std::string(frac), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer n = abs(w) * scale + f;
    if (neg) n = -n;
    Rational q(n, scale);
    q.canonicalize();
    return q;
  }

  if (!is_integer_token(text)) return std::nullopt;
  return Rational(Integer(std::string(text), 10));
}

Rational parse_rational_or_throw(std::string_view text, std::string_view what_for) {
  auto q = parse_rational(text);
  if (!q)
    throw std::invalid_argument("malformed rational for " + std::string(what_for) + ": '" +
                                std::string(text) + "'");
  return *q;
}

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double log_integer(const Integer& z) {
  if (z <= 0) throw std::domain_error("log_integer: non-positive argument");
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

double log_rational(const Rational& q) {
  if (q <= 0) throw std::domain_error("log_rational: non-positive argument");
  return log_integer(Integer(q.get_num())) - log_integer(Integer(q.get_den()));
}

Rational pow_rational(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()), e);
  r.canonicalize();
  return r;
}

std::string shortest_double(double x) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace confdim
