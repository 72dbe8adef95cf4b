#include "kochtrace/alpha.hpp"

#include "kochtrace/error.hpp"

#include <mpfr.h>

namespace koch {

namespace {

// Exact value of an mpfr number as a rational.
Rat mpfr_to_rat(mpfr_srcptr x) {
  if (mpfr_zero_p(x) != 0) return Rat(0);
  Int mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rat out(mant);
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return out;
}

void check_prec(unsigned prec_bits) {
  if (prec_bits < 16 || prec_bits > 4096)
    fail(ErrorCode::InvalidInput, "precision must lie in [16, 4096] bits");
}

struct MpfrVal {
  mpfr_t v;
  explicit MpfrVal(unsigned prec) { mpfr_init2(v, prec); }
  ~MpfrVal() { mpfr_clear(v); }
  MpfrVal(const MpfrVal&) = delete;
  MpfrVal& operator=(const MpfrVal&) = delete;
};

// alpha rounded down (round_up = false) or up (round_up = true).
void alpha_bound(mpfr_ptr out, unsigned prec, bool round_up) {
  MpfrVal l3(prec + 16), l4(prec + 16);
  // log3/log4 with the numerator pushed toward the bound and the
  // denominator pushed the other way.
  mpfr_set_ui(l3.v, 3, MPFR_RNDN);
  mpfr_log(l3.v, l3.v, round_up ? MPFR_RNDU : MPFR_RNDD);
  mpfr_set_ui(l4.v, 4, MPFR_RNDN);
  mpfr_log(l4.v, l4.v, round_up ? MPFR_RNDD : MPFR_RNDU);
  mpfr_div(out, l3.v, l4.v, round_up ? MPFR_RNDU : MPFR_RNDD);
}

} // namespace

RatInterval alpha_enclosure(unsigned prec_bits) {
  check_prec(prec_bits);
  MpfrVal lo(prec_bits), hi(prec_bits);
  alpha_bound(lo.v, prec_bits, false);
  alpha_bound(hi.v, prec_bits, true);
  RatInterval out{mpfr_to_rat(lo.v), mpfr_to_rat(hi.v)};
  if (!(out.lo <= out.hi))
    fail(ErrorCode::ContractViolation, "alpha enclosure inverted");
  return out;
}

RatInterval pow_alpha(const Rat& x, unsigned prec_bits) {
  check_prec(prec_bits);
  if (!(x > 0 && x <= 1))
    fail(ErrorCode::InvalidInput, "pow_alpha requires 0 < x <= 1");
  if (x == 1) return RatInterval{Rat(1), Rat(1)};

  MpfrVal a_lo(prec_bits), a_hi(prec_bits);
  alpha_bound(a_lo.v, prec_bits, false);
  alpha_bound(a_hi.v, prec_bits, true);

  // For 0 < x < 1 the map a -> x^a is decreasing, so the lower bound
  // pairs x rounded down with the exponent rounded up.
  MpfrVal xb(prec_bits), r_lo(prec_bits), r_hi(prec_bits);
  mpfr_set_q(xb.v, x.get_mpq_t(), MPFR_RNDD);
  mpfr_pow(r_lo.v, xb.v, a_hi.v, MPFR_RNDD);
  mpfr_set_q(xb.v, x.get_mpq_t(), MPFR_RNDU);
  mpfr_pow(r_hi.v, xb.v, a_lo.v, MPFR_RNDU);

  RatInterval out{mpfr_to_rat(r_lo.v), mpfr_to_rat(r_hi.v)};
  if (!(out.lo <= out.hi))
    fail(ErrorCode::ContractViolation, "pow_alpha enclosure inverted");
  return out;
}

} // namespace koch
