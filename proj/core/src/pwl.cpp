#include "kochtrace/pwl.hpp"

#include <algorithm>

#include "kochtrace/error.hpp"

namespace koch {

PWLConvex PWLConvex::cone(const Rat& center, const Rat& weight) {
  if (weight < 0) fail(ErrorCode::InvalidInput, "cone weight must be >= 0");
  PWLConvex f;
  f.xs_ = {center};
  f.slopes_ = {-weight, weight};
  f.y0_ = 0;
  return f;
}

PWLConvex PWLConvex::constant(const Rat& value) {
  PWLConvex f;
  f.xs_ = {Rat(0)};
  f.slopes_ = {Rat(0), Rat(0)};
  f.y0_ = value;
  return f;
}

void PWLConvex::check_invariants() const {
  if (xs_.empty() || slopes_.size() != xs_.size() + 1)
    fail(ErrorCode::ContractViolation, "pwl: inconsistent sizes");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i]))
      fail(ErrorCode::ContractViolation, "pwl: breakpoints not increasing");
  for (std::size_t i = 1; i < slopes_.size(); ++i)
    if (slopes_[i] < slopes_[i - 1])
      fail(ErrorCode::ContractViolation, "pwl: slopes not nondecreasing");
}

Rat PWLConvex::value(const Rat& t) const {
  if (t <= xs_[0]) return y0_ + slopes_[0] * (t - xs_[0]);
  Rat y = y0_;
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (t <= xs_[i]) return y + slopes_[i] * (t - xs_[i - 1]);
    y += slopes_[i] * (xs_[i] - xs_[i - 1]);
  }
  return y + slopes_.back() * (t - xs_.back());
}

PWLConvex& PWLConvex::operator+=(const PWLConvex& o) {
  std::vector<Rat> xs;
  xs.reserve(xs_.size() + o.xs_.size());
  std::merge(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(),
             std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Rat> slopes;
  slopes.reserve(xs.size() + 1);
  // slope on the open interval left of xs[i] (and right of everything at the
  // end); index into each summand by walking its breakpoints
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i <= xs.size(); ++i) {
    // advance past breakpoints strictly below the current interval
    while (ia < xs_.size() && i > 0 && xs_[ia] <= xs[i - 1]) ++ia;
    while (ib < o.xs_.size() && i > 0 && o.xs_[ib] <= xs[i - 1]) ++ib;
    slopes.push_back(slopes_[ia] + o.slopes_[ib]);
  }

  Rat y = value(xs[0]) + o.value(xs[0]);
  xs_ = std::move(xs);
  slopes_ = std::move(slopes);
  y0_ = y;
  return *this;
}

PWLConvex PWLConvex::clip(const Rat& weight, ClipBounds* bounds) const {
  if (weight <= 0) fail(ErrorCode::InvalidInput, "clip weight must be > 0");
  const std::size_t n = xs_.size(); // slopes_.size() == n + 1
  // first segment with slope > -w and last segment with slope < w
  std::size_t istar = 0;
  while (istar < slopes_.size() && !(slopes_[istar] > -weight)) ++istar;
  std::size_t jstar = slopes_.size();
  while (jstar > 0 && !(slopes_[jstar - 1] < weight)) --jstar;
  if (istar == slopes_.size() || jstar == 0)
    fail(ErrorCode::ContractViolation, "clip: function not coercive");
  --jstar; // index of the last segment with slope < w

  ClipBounds b;
  if (istar > 0) b.lo = xs_[istar - 1];
  if (jstar < n) b.hi = xs_[jstar];
  if (bounds) *bounds = b;

  PWLConvex out;
  if (istar > jstar) {
    // every segment is steeper than w: the convolution collapses to a cone
    out.xs_ = {xs_[jstar]};
    out.slopes_ = {-weight, weight};
  } else {
    if (b.lo) out.slopes_.push_back(-weight);
    for (std::size_t i = istar; i <= jstar; ++i)
      out.slopes_.push_back(slopes_[i]);
    if (b.hi) out.slopes_.push_back(weight);

    if (b.lo) out.xs_.push_back(*b.lo);
    for (std::size_t i = istar; i < jstar; ++i) out.xs_.push_back(xs_[i]);
    if (b.hi) out.xs_.push_back(*b.hi);
  }

  out.y0_ = value(out.xs_[0]);
  out.check_invariants();
  return out;
}

PWLConvex::Minimum PWLConvex::minimum() const {
  if (slopes_[0] >= 0)
    fail(ErrorCode::ContractViolation, "minimum: not decreasing on the left");
  if (slopes_.back() <= 0)
    fail(ErrorCode::ContractViolation, "minimum: not increasing on the right");
  std::size_t k = 0;
  while (slopes_[k] < 0) ++k;
  // slope turns >= 0 on the segment left-bounded by xs_[k-1]
  Rat arg = xs_[k - 1];
  return Minimum{value(arg), arg};
}

} // namespace koch
