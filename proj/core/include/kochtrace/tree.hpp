#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kochtrace/rational.hpp"

namespace koch {

// Combinatorial tree of the snowflake Whitney covering.  The root is the
// six pointed star; every other vertex is a pants or a palace region.
// Branching, in boundary order:
//   star   -> 6 x pants
//   pants  -> palace, pants, pants, pants, palace
//   palace -> palace, pants, palace
enum class Kind : uint8_t { Star, Pants, Palace };

const char* kind_name(Kind k);

struct VertexId {
  std::vector<uint8_t> path; // child indices from the root; empty = root

  int generation() const { return static_cast<int>(path.size()); }
  bool is_root() const { return path.empty(); }
  VertexId parent() const;
  VertexId child(uint8_t i) const;
  bool is_ancestor_of(const VertexId& other) const; // proper or equal

  bool operator==(const VertexId& o) const { return path == o.path; }
  bool operator!=(const VertexId& o) const { return path != o.path; }
  bool operator<(const VertexId& o) const { return path < o.path; }

  std::string str() const;                  // "/" for root, else "/0/3/1"
  static VertexId parse(const std::string& s);
};

Kind kind_of(const VertexId& v);
const std::vector<Kind>& child_kinds(Kind k);
std::size_t child_count(Kind k);
std::vector<VertexId> children(const VertexId& v);

// walks the whole tree through generation `depth`, root included
std::vector<VertexId> all_vertices(int depth);

struct GenCount {
  int generation;
  long long pants;
  long long palace;
  long long total() const { return pants + palace; }
};
// counts for generations 1..depth via (p,q) -> (3p+q, 2p+2q) from (6,0)
std::vector<GenCount> generation_counts(int depth);

// Cylinders as half open circle intervals [start, start+length), start in
// [0,1).  The six generation-1 pants partition the circle, so a pants at
// generation n has length 2/(3*4^n) and a palace 1/(3*4^n); children
// partition the parent in boundary order with the (1,2,2,2,1) / (1,2,1)
// length pattern.  Intervals never wrap: start + length <= 1.
struct TorusInterval {
  Rat start;
  Rat length;
  Rat end() const { return start + length; }
  bool contains(const Rat& pos) const { return start <= pos && pos < end(); }
  bool contains_strictly(const Rat& pos) const {
    return start < pos && pos < end();
  }
};

TorusInterval cylinder_interval(const VertexId& v); // error on the root

// A rational boundary point: a finite digit string (first digit in {0,1,2},
// later digits in {0,1,2,3}) naming a vertex of some curve approximant, plus
// a side marker choosing one of the two branches at that point.  Trailing
// zero digits do not change the position.
enum class Side : uint8_t { Before, After };

struct BoundaryPoint {
  std::vector<uint8_t> digits; // nonempty
  Side side = Side::After;

  static BoundaryPoint from_digits(std::vector<uint8_t> digits,
                                   Side side = Side::After);
};

// Partition-normalized position: digit j refines by 1/4, the j-th digit
// block of generation j-1 segments maps onto an interval of length
// 1/(3*4^(j-1)).  Consistent with cylinder_interval endpoints.
Rat torus_position(const BoundaryPoint& p);
Rat torus_position_digits(const std::vector<uint8_t>& digits);

// Raw segment-index position d1/3 + sum_{j>=2} dj/4^j.  Its image leaves
// gaps on the circle; kept for index arithmetic only, the metric side of
// the toolkit uses torus_position throughout.
Rat index_position(const BoundaryPoint& p);

// Inverse of torus_position on the grid {m/(3*4^k)}.  Throws
// UnsupportedInput for positions not on the grid.
BoundaryPoint point_at(const Rat& pos, Side side = Side::After);

// Smallest k such that pos*(3*4^k) is an integer.
int native_depth(const Rat& pos);

// True iff pos is an endpoint of some cylinder (equivalently: the two
// branches through pos diverge).  Digit-grid positions that are not
// cylinder endpoints are the bump apexes; those carry a single branch and
// no finite cylinder decomposition reaches them.
bool is_cylinder_endpoint(const Rat& pos);

// Oriented boundary arc [start, end), counterclockwise.  start == end
// denotes the empty arc.
struct Arc {
  BoundaryPoint start;
  BoundaryPoint end;
};

// Maximal cylinder decomposition of the directed arc [x, y): pairwise
// disjoint cylinders whose union is the arc, each maximal (the parent
// cylinder is not contained in the arc), listed counterclockwise from x.
// Requires both endpoints to be cylinder endpoints.
std::vector<VertexId> decompose_arc(const Rat& x, const Rat& y);
std::vector<VertexId> maximal_cylinder_decomposition(const Arc& a);

// Sum of 3^-generation over decompose_arc(x, y).
Rat arc_weight(const Rat& x, const Rat& y);

// Circle metric of the torus positions.
Rat metric_d(const BoundaryPoint& x, const BoundaryPoint& y);
Rat metric_d_pos(const Rat& x, const Rat& y);

// min(arc_weight(x,y), arc_weight(y,x)).
Rat metric_dK(const BoundaryPoint& x, const BoundaryPoint& y);
Rat metric_dK_pos(const Rat& x, const Rat& y);

// The child of v whose cylinder closure contains pos on the given side.
VertexId child_towards(const VertexId& v, const Rat& pos, Side side);

// Chain of vertices of generations 1..depth whose cylinder closures all
// contain p on the chosen side.
std::vector<VertexId> branch(const BoundaryPoint& p, int depth);

} // namespace koch
