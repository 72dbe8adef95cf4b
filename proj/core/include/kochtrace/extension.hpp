#pragma once

#include "kochtrace/boundary_data.hpp"
#include "kochtrace/rational.hpp"
#include "kochtrace/tree_function.hpp"

#include <string>
#include <utility>
#include <vector>

namespace koch {

// Sum of subtree indicators over the maximal cylinder decomposition of
// [x, y).  Its trace is the arc indicator and its tree norm equals
// arc_weight(x, y), which can exceed tilde_d(x, y) when the complementary
// arc is lighter.
TreeFunction indicator_extension_pos(const Rat& x, const Rat& y);

// Monotone step data on a single arc: value `base` at arc_start, then a
// jump of delta at each interior position, all deltas of one sign.
struct StepFunction {
  Rat arc_start;
  Rat arc_end;
  Rat base;
  std::vector<std::pair<Rat, Rat>> jumps; // (position, delta) in arc order
};

struct MonotoneResult {
  TreeFunction h;
  Rat norm;           // bv_norm(h)
  Rat arc_span;       // arc_weight(arc_start, arc_end)
  Rat max_term_ratio; // max over jumps of arc_weight(jump, arc_end) / arc_span
};

// Extends a monotone step function by stacking indicator extensions of the
// jump suffixes on top of the base arc.  Requires the data arc to be the
// lighter of the two sides; every suffix weight is then below twice the
// span, so norm <= 2 (|base| + |total jump|) * arc_span.
MonotoneResult monotone_extension(const StepFunction& f);

struct BoundarySample {
  Rat pos;
  Rat value;
};

struct LipschitzProfile {
  std::vector<BoundarySample> samples; // arc order, endpoints included
  Rat lipschitz_dK; // max consecutive slope against metric_dK
};

// Interpolates between (x, a) and (y, b) along the arc [x, y) by repeated
// weight bisection: each step splits the current arc at a decomposition
// boundary carrying between 1/4 and 3/4 of its weight and assigns the
// value midpoint there.
LipschitzProfile lipschitz_monotone_boundary(const Rat& x, const Rat& y,
                                             const Rat& a, const Rat& b,
                                             int levels);

// Minimal-norm extension: trace is g, tree norm equals the trace norm.
TreeFunction right_inverse_S(const BoundaryData& g);

struct DensityResult {
  BoundaryData g_k;  // level-k piecewise approximation from cylinder minima
  TreeFunction h;    // extension of the residual, supported below level k
  Rat h_norm;
  Rat reference;     // lip_k * (4/9)^k
};

// Approximates a Lipschitz boundary function from samples: g_k takes the
// minimum over each level-k cylinder, h extends the residual using minima
// down to the deepest fully sampled level <= k + 3.
DensityResult density_approximation(const std::vector<BoundarySample>& samples,
                                    const Rat& lip_k, int k);

struct DensityRow {
  int k;
  std::string func;
  Rat h_norm;
  Rat ratio_to_prev; // h_norm(k) / h_norm(k - 1), 0 for the first row
};

// Runs density_approximation for three built-in Lipschitz functions over
// k in [kmin, kmax], sampling at every level-(k+3) cylinder endpoint.
std::vector<DensityRow> density_suite(int kmin, int kmax);

} // namespace koch
