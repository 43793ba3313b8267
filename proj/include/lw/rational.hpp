#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "lw/errors.hpp"

namespace lw {

// Exact rational scalar; canonical form is maintained by GMP.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

// Reduced fraction num/den (mpq_class's two-argument constructor does not
// canonicalize on its own, and GMP comparisons require canonical form).
inline Rat make_rat(long num, long den = 1) {
  require(den != 0, "make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// 2^k for any integer k, including negative k.
inline Rat pow2(long k) {
  mpz_class num = 1, den = 1;
  if (k >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return Rat(num, den);
}

// Canonical "p/q" (or "p" when q = 1).
inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Accepts "p/q", plain integers, and decimal literals like "-1.25".
inline Rat parse_rat(const std::string& text) {
  require(!text.empty(), "empty rational literal");
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
      throw ConfigError("bad rational literal: " + text);
    q.canonicalize();
    require(q.get_den() > 0, "bad rational literal: " + text);
    return q;
  }
  const std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
  require(!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos,
          "bad decimal literal: " + text);
  Rat intpart = head.empty() || head == "-" || head == "+" ? Rat(0) : parse_rat(head);
  mpz_class den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  Rat frac(mpz_class(tail, 10), den);
  frac.canonicalize();
  const bool negative = !head.empty() && head[0] == '-';
  return negative ? Rat(intpart - frac) : Rat(intpart + frac);
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// Exact floor/ceil as integers.
inline mpz_class rat_floor(const Rat& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline mpz_class rat_ceil(const Rat& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Floor of log2(den) when den is a power of two; -1 otherwise.
inline long dyadic_log2_den(const Rat& q) {
  const mpz_class& den = q.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) return -1;
  return static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
}

}  // namespace lw
