#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kochtrace/rational.hpp"
#include "kochtrace/tree.hpp"

namespace koch {

// One constant piece of a boundary step function, as a non-wrapping circle
// interval [start, end) with 0 <= start < end <= 1.
struct BoundaryPiece {
  Rat start;
  Rat end;
  Rat coeff;
};

// Finite linear combination of arc indicators on the snowflake boundary, in
// canonical form: pieces sorted by start, pairwise disjoint, coefficients
// nonzero, adjacent pieces with equal coefficients merged.  Arcs crossing
// position 0 are stored split.  Every endpoint must be a cylinder endpoint.
class BoundaryData {
 public:
  BoundaryData() = default;

  static BoundaryData from_pieces(std::vector<BoundaryPiece> pieces);
  // (x, y, coeff) arcs by torus position; x > y wraps through 0
  static BoundaryData from_position_arcs(
      const std::vector<std::array<Rat, 3>>& arcs);
  static BoundaryData from_arcs(const std::vector<std::pair<Arc, Rat>>& arcs);
  static BoundaryData indicator(const Rat& x, const Rat& y);

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  // distinct piece endpoints normalized mod 1, sorted
  const std::vector<Rat>& boundaries() const { return boundaries_; }

  // true iff some boundary lies strictly inside (s, e)
  bool straddles(const Rat& s, const Rat& e) const;

  // step function evaluation; positions outside every piece give 0
  Rat value_at(const Rat& pos, Side side = Side::After) const;

  // max generation over the maximal cylinder decompositions of the pieces
  int reduction_depth() const;

  bool operator==(const BoundaryData& o) const { return pieces_raw_eq(o); }
  bool operator!=(const BoundaryData& o) const { return !pieces_raw_eq(o); }

 private:
  bool pieces_raw_eq(const BoundaryData& o) const;

  std::vector<BoundaryPiece> pieces_;
  std::vector<Rat> boundaries_;
};

} // namespace koch
