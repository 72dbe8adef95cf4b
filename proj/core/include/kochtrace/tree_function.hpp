#pragma once

#include <map>
#include <vector>

#include "kochtrace/boundary_data.hpp"
#include "kochtrace/rational.hpp"
#include "kochtrace/tree.hpp"

namespace koch {

// Function on the Whitney tree stored in increment form: the value at a
// vertex is baseline plus the sum of the edge coefficients along the path
// from the root.  Stored coefficients are nonzero.
struct TreeFunction {
  Rat baseline = 0;
  std::map<VertexId, Rat> coeffs;

  void set_coeff(const VertexId& v, const Rat& c);
  Rat coeff(const VertexId& v) const;
  int support_depth() const;

  bool operator==(const TreeFunction& o) const {
    return baseline == o.baseline && coeffs == o.coeffs;
  }
  bool operator!=(const TreeFunction& o) const { return !(*this == o); }
};

// gamma^v: 1 on the subtree rooted at v, 0 elsewhere
TreeFunction subtree_indicator(const VertexId& v);

TreeFunction tf_add(const TreeFunction& a, const TreeFunction& b);
TreeFunction tf_scale(const TreeFunction& a, const Rat& s);

// sum over vertices of |increment| * 3^-generation
Rat bv_norm(const TreeFunction& f);

Rat value_at(const TreeFunction& f, const VertexId& v);

// limit of f along the branch through p; well defined because increments
// vanish below the support depth
Rat trace_limit(const TreeFunction& f, const BoundaryPoint& p);

// The boundary trace as a step function covering the whole circle, pieces
// sorted by start, adjacent equal values merged.
struct TracePiece {
  Rat start;
  Rat end;
  Rat value;
};
std::vector<TracePiece> trace_pieces(const TreeFunction& f);

// exact comparison of the trace of f with the step function of g
// (complement of the arcs reads as 0)
bool trace_equals(const TreeFunction& f, const BoundaryData& g);

// Clamp outside the straddling skeleton of g: vertices whose cylinder
// contains an arc endpoint strictly inside keep their value, cylinders
// inside an arc take its coefficient, cylinders disjoint from all arcs take
// 0.  Requires trace_equals(f, g); preserves the trace, never increases the
// norm, and is idempotent.
TreeFunction clamp_W(const TreeFunction& f, const BoundaryData& g);

} // namespace koch
