#pragma once

#include "kochtrace/rational.hpp"

namespace koch {

// Rational enclosure of the snowflaking exponent log_4(3), computed with
// directed rounding at the given working precision.
RatInterval alpha_enclosure(unsigned prec_bits = 192);

// Rational enclosure of x^(log_4 3) for 0 < x <= 1.  Exact inputs with
// exact powers (x = 4^-k) still return an enclosure, but one of width
// comparable to 2^-prec_bits around the true value.
RatInterval pow_alpha(const Rat& x, unsigned prec_bits = 192);

} // namespace koch
