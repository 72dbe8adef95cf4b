#pragma once

#include <optional>
#include <vector>

#include "kochtrace/rational.hpp"

namespace koch {

// Convex piecewise linear function on the real line with rational
// breakpoints.  slopes has one more entry than xs and is nondecreasing;
// slopes[i] is the slope on (xs[i-1], xs[i]), slopes.front() applies left of
// xs.front(), slopes.back() right of xs.back().  y0 is the value at
// xs.front().
class PWLConvex {
 public:
  // w * |t - center|, w >= 0
  static PWLConvex cone(const Rat& center, const Rat& weight);
  static PWLConvex constant(const Rat& value);

  Rat value(const Rat& t) const;

  PWLConvex& operator+=(const PWLConvex& o);

  // Interval [lo, hi] outside of which the w-clip flattens the function:
  // clipping replaces the graph by slope -w left of lo and +w right of hi.
  // An unset bound means the function was already w-Lipschitz on that side.
  struct ClipBounds {
    std::optional<Rat> lo;
    std::optional<Rat> hi;
    Rat clamp(const Rat& t) const {
      if (lo && t < *lo) return *lo;
      if (hi && t > *hi) return *hi;
      return t;
    }
  };

  // Infimal convolution with w|.|: the tightest w-Lipschitz minorant that
  // agrees on [lo, hi].  Pointwise <= the original, == for w large enough.
  PWLConvex clip(const Rat& weight, ClipBounds* bounds = nullptr) const;

  struct Minimum {
    Rat value;
    Rat argmin; // leftmost minimizer
  };
  Minimum minimum() const;

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& slopes() const { return slopes_; }

  void check_invariants() const;

 private:
  std::vector<Rat> xs_;
  std::vector<Rat> slopes_;
  Rat y0_;
};

} // namespace koch
