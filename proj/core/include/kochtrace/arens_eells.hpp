#pragma once

#include "kochtrace/boundary_data.hpp"
#include "kochtrace/rational.hpp"
#include "kochtrace/trace_solver.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace koch {

// Finitely supported function on the boundary circle with total weight 0.
struct Molecule {
  std::map<Rat, Rat> atoms; // position -> nonzero weight, positions in [0,1)

  static Molecule from_atoms(const std::vector<std::pair<Rat, Rat>>& atoms);
  bool empty() const { return atoms.empty(); }
};

using MetricFn = std::function<Rat(const Rat&, const Rat&)>;
using MetricIntervalFn = std::function<RatInterval(const Rat&, const Rat&)>;

// Arens-Eells (transport) norm of the molecule under the given metric:
// exact minimum-cost flow from positive to negative atoms.
Rat ae_norm(const Molecule& m, const MetricFn& dist);

// Enclosure of the transport norm when only metric enclosures are known:
// the flow problem is solved once with all lower costs and once with all
// upper costs.
RatInterval ae_norm_interval(const Molecule& m, const MetricIntervalFn& dist);

// Assignment oracle for integer molecules: expands atoms into unit copies
// (at most 7 per side) and minimizes over all unit matchings.
Rat ae_norm_bruteforce(const Molecule& m, const MetricFn& dist);

// Prefix-sum step function of the molecule: on [p_i, p_{i+1}) the value is
// the sum of the weights at p_1..p_i; the wrap piece past the last atom
// carries 0.  Atom positions must be cylinder endpoints.
BoundaryData psi(const Molecule& m);

// Sweep started at the anchor-th atom (0-based, position order) instead of
// the first; differs from psi by the constant added below the anchor, so
// both have the same trace norm.
BoundaryData psi_anchored(const Molecule& m, std::size_t anchor);

struct IsoRow {
  int depth;
  int samples;
  Rat max_ratio;       // max ae_norm / trace_norm(psi), at least 1
  bool contraction_ok; // trace_norm(psi) <= ae_norm held on every sample
};

// Random molecules with atoms on valley positions of generation <= depth:
// checks trace_norm(psi(m)) <= ae_norm under tilde_d and reports the worst
// ratio per depth.
std::vector<IsoRow> verify_isomorphism(int max_depth, int samples_per_depth,
                                       std::uint64_t seed, TildeCache& cache);

struct MetricCompareRow {
  int depth;
  int samples;
  Rat min_ratio_lo; // lower end of the smallest tilde_d / d^alpha enclosure
  Rat max_ratio_hi; // upper end of the largest enclosure
  Rat max_width;    // largest ratio enclosure width
};

// Random valley pairs per depth: encloses tilde_d(x,y) / d(x,y)^alpha with
// exact tilde_d and directed-rounding powers.
std::vector<MetricCompareRow> metric_compare(int max_depth, int samples_per_depth,
                                             std::uint64_t seed, unsigned prec_bits,
                                             TildeCache& cache);

} // namespace koch
