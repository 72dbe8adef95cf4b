#pragma once

#include <gmpxx.h>

#include <string>

namespace koch {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q;
  q.get_num() = num;
  q.get_den() = den;
  q.canonicalize();
  return q;
}

inline Rat make_rat(long long num, long long den) {
  return make_rat(Int(static_cast<long>(num)), Int(static_cast<long>(den)));
}

// 3^-n
inline Rat pow3_neg(unsigned n) {
  Int d;
  mpz_ui_pow_ui(d.get_mpz_t(), 3, n);
  return make_rat(1, d);
}

// 1/(3*4^n), the torus length of one generation-n curve segment
inline Rat level_length(unsigned n) {
  Int d;
  mpz_ui_pow_ui(d.get_mpz_t(), 4, n);
  return make_rat(1, 3 * d);
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// closed rational interval, lo <= hi
struct RatInterval {
  Rat lo;
  Rat hi;
  Rat width() const { return hi - lo; }
  bool contains(const Rat& q) const { return lo <= q && q <= hi; }
};

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// floor(q) as an integer
inline Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

} // namespace koch
