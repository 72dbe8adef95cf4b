#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "kochtrace/boundary_data.hpp"
#include "kochtrace/tree_function.hpp"

namespace koch {

// Exact trace norm: the minimum of bv_norm(f) over tree functions f whose
// trace equals g.  The minimizer is returned in clamped form (clamp_W fixed
// point); free values are resolved deterministically (leftmost optimum at
// the root, clamping toward the parent below).
struct TraceNormResult {
  Rat norm;
  TreeFunction minimizer;
};

TraceNormResult trace_norm(const BoundaryData& g);

// Exhaustive oracle over the value lattice {0} union arc coefficients.
// Verifies local-move optimality of the winner before returning.  Rejects
// instances with reduction depth > depth_cap.
Rat trace_norm_bruteforce(const BoundaryData& g, int depth_cap = 4);

// Boundary metric: trace norm of the arc indicator.  Both orientations are
// computed and must agree exactly.
Rat tilde_d_pos(const Rat& x, const Rat& y);
Rat tilde_d(const BoundaryPoint& x, const BoundaryPoint& y);

// Memoizing wrapper; safe for concurrent use.
class TildeCache {
 public:
  Rat operator()(const Rat& x, const Rat& y);

 private:
  std::mutex mu_;
  std::map<std::pair<Rat, Rat>, Rat> cache_;
};

} // namespace koch
