#include "kochtrace/extension.hpp"

#include "kochtrace/error.hpp"
#include "kochtrace/trace_solver.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>

namespace koch {

namespace {

Rat mod1(const Rat& q) { return q - Rat(rat_floor(q)); }

// offset of p along the circle starting at x
Rat arc_offset(const Rat& x, const Rat& p) { return mod1(p - x); }

void check_position(const Rat& p, const char* what) {
  if (!(p >= 0 && p < 1)) fail(ErrorCode::InvalidInput, std::string(what) + " must lie in [0, 1)");
}

} // namespace

TreeFunction indicator_extension_pos(const Rat& x, const Rat& y) {
  TreeFunction f;
  for (const VertexId& v : decompose_arc(x, y)) f.set_coeff(v, Rat(1));
  return f;
}

MonotoneResult monotone_extension(const StepFunction& f) {
  check_position(f.arc_start, "arc_start");
  check_position(f.arc_end, "arc_end");
  if (f.arc_start == f.arc_end)
    fail(ErrorCode::InvalidInput, "monotone extension needs a nonempty arc");

  const Rat span = arc_weight(f.arc_start, f.arc_end);
  const Rat comp = arc_weight(f.arc_end, f.arc_start);
  if (!(span <= comp))
    fail(ErrorCode::InvalidInput, "data arc must be the lighter side");

  const Rat len = arc_offset(f.arc_start, f.arc_end);
  Rat prev_off = 0;
  int sign = 0;
  for (const auto& [pos, delta] : f.jumps) {
    check_position(pos, "jump position");
    const Rat off = arc_offset(f.arc_start, pos);
    if (!(off > prev_off && off < len))
      fail(ErrorCode::InvalidInput, "jumps must be strictly inside the arc, in arc order");
    prev_off = off;
    if (delta == 0) fail(ErrorCode::InvalidInput, "jump deltas must be nonzero");
    const int s = delta > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) fail(ErrorCode::InvalidInput, "jump deltas must share one sign");
  }

  MonotoneResult out;
  out.arc_span = span;
  out.max_term_ratio = 0;
  out.h = tf_scale(indicator_extension_pos(f.arc_start, f.arc_end), f.base);
  Rat total_jump = 0;
  for (const auto& [pos, delta] : f.jumps) {
    const Rat w = arc_weight(pos, f.arc_end);
    // every suffix of the arc weighs less than twice the whole arc: at
    // most four full cylinders per generation trail the cut point
    if (!(w < 2 * span))
      fail(ErrorCode::ContractViolation, "suffix weight reached twice the arc span");
    out.max_term_ratio = std::max(out.max_term_ratio, Rat(w / span));
    out.h = tf_add(out.h, tf_scale(indicator_extension_pos(pos, f.arc_end), delta));
    total_jump += delta;
  }
  out.norm = bv_norm(out.h);
  if (!(out.norm <= 2 * (rat_abs(f.base) + rat_abs(total_jump)) * span))
    fail(ErrorCode::ContractViolation, "monotone extension norm bound failed");
  return out;
}

namespace {

struct WeightedPiece {
  VertexId v;
  TorusInterval iv;
  Rat weight;
};

// Cut position inside (u, v) whose two sides carry at least a quarter of
// the arc weight each, found on cylinder decomposition boundaries and
// refined by splitting the heaviest piece.
Rat balanced_cut(const Rat& u, const Rat& v) {
  std::vector<WeightedPiece> items;
  for (const VertexId& c : decompose_arc(u, v))
    items.push_back({c, cylinder_interval(c), pow3_neg(static_cast<unsigned>(c.generation()))});
  if (items.empty()) fail(ErrorCode::InvalidInput, "cannot cut an empty arc");

  for (int iter = 0; iter < 64; ++iter) {
    Rat total = 0;
    for (const auto& it : items) total += it.weight;
    if (items.size() >= 2) {
      Rat best_gap = -1;
      std::size_t best = 0;
      Rat prefix = 0;
      for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        prefix += items[i].weight;
        const Rat gap = rat_abs(2 * prefix - total);
        if (best_gap < 0 || gap < best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      Rat head = 0;
      for (std::size_t i = 0; i <= best; ++i) head += items[i].weight;
      const Rat side = std::min(head, Rat(total - head));
      if (4 * side >= total) return mod1(items[best].iv.end());
    }
    std::size_t heavy = 0;
    for (std::size_t i = 1; i < items.size(); ++i)
      if (items[i].weight > items[heavy].weight) heavy = i;
    std::vector<WeightedPiece> next;
    next.reserve(items.size() + 4);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i != heavy) {
        next.push_back(items[i]);
        continue;
      }
      for (const VertexId& c : children(items[i].v))
        next.push_back({c, cylinder_interval(c), pow3_neg(static_cast<unsigned>(c.generation()))});
    }
    items = std::move(next);
  }
  fail(ErrorCode::ContractViolation, "balanced cut did not converge");
}

} // namespace

LipschitzProfile lipschitz_monotone_boundary(const Rat& x, const Rat& y,
                                             const Rat& a, const Rat& b,
                                             int levels) {
  check_position(x, "x");
  check_position(y, "y");
  if (x == y) fail(ErrorCode::InvalidInput, "endpoints must differ");
  if (levels < 0) fail(ErrorCode::InvalidInput, "levels must be nonnegative");
  if (levels > 12) fail(ErrorCode::ResourceLimit, "levels above 12 not supported");

  LipschitzProfile out;
  out.samples.push_back({x, a});
  std::function<void(const Rat&, const Rat&, const Rat&, const Rat&, int)> rec =
      [&](const Rat& u, const Rat& v, const Rat& fu, const Rat& fv, int lev) {
        if (lev == 0) return;
        const Rat cut = balanced_cut(u, v);
        const Rat mid = (fu + fv) / 2;
        rec(u, cut, fu, mid, lev - 1);
        out.samples.push_back({cut, mid});
        rec(cut, v, mid, fv, lev - 1);
      };
  rec(x, y, a, b, levels);
  out.samples.push_back({y, b});

  out.lipschitz_dK = 0;
  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    const Rat d = metric_dK_pos(out.samples[i].pos, out.samples[i + 1].pos);
    if (d == 0) fail(ErrorCode::ContractViolation, "bisection produced a duplicate point");
    const Rat slope = rat_abs(out.samples[i + 1].value - out.samples[i].value) / d;
    out.lipschitz_dK = std::max(out.lipschitz_dK, slope);
  }
  return out;
}

TreeFunction right_inverse_S(const BoundaryData& g) { return trace_norm(g).minimizer; }

namespace {

std::vector<VertexId> expand_level(const std::vector<VertexId>& level) {
  std::vector<VertexId> next;
  for (const VertexId& v : level)
    for (const VertexId& c : children(v)) next.push_back(c);
  return next;
}

std::vector<VertexId> level_vertices(int g) {
  std::vector<VertexId> level;
  for (uint8_t i = 0; i < 6; ++i) level.push_back(VertexId{{i}});
  for (int j = 1; j < g; ++j) level = expand_level(level);
  return level;
}

// true iff every cylinder of the level contains a sample position
bool level_covered(const std::vector<VertexId>& level, const std::vector<Rat>& pos) {
  std::size_t idx = 0;
  for (const VertexId& v : level) {
    const TorusInterval iv = cylinder_interval(v);
    while (idx < pos.size() && pos[idx] < iv.start) ++idx;
    if (idx >= pos.size() || !(pos[idx] < iv.end())) return false;
  }
  return true;
}

} // namespace

DensityResult density_approximation(const std::vector<BoundarySample>& samples,
                                    const Rat& lip_k, int k) {
  if (samples.empty()) fail(ErrorCode::InvalidInput, "need at least one sample");
  if (lip_k < 0) fail(ErrorCode::InvalidInput, "Lipschitz constant must be nonnegative");
  if (k < 1) fail(ErrorCode::InvalidInput, "level must be at least 1");
  if (k > 5) fail(ErrorCode::ResourceLimit, "levels above 5 not supported");

  std::vector<Rat> pos, val;
  pos.reserve(samples.size());
  val.reserve(samples.size());
  for (const auto& s : samples) {
    check_position(s.pos, "sample position");
    if (!pos.empty() && !(s.pos > pos.back()))
      fail(ErrorCode::InvalidInput, "sample positions must be strictly increasing");
    pos.push_back(s.pos);
    val.push_back(s.value);
  }

  std::vector<VertexId> level_k = level_vertices(k);
  if (!level_covered(level_k, pos))
    fail(ErrorCode::InvalidInput, "every level-k cylinder needs a sample");
  int sdepth = k;
  {
    std::vector<VertexId> level = level_k;
    for (int g = k + 1; g <= k + 3; ++g) {
      level = expand_level(level);
      if (!level_covered(level, pos)) break;
      sdepth = g;
    }
  }

  DensityResult out;
  out.h.baseline = 0;
  const Rat envelope = 4 * lip_k * pow3_neg(static_cast<unsigned>(sdepth));
  std::vector<BoundaryPiece> gk_pieces;

  std::function<Rat(const VertexId&, std::size_t, std::size_t)> range_min =
      [&](const VertexId&, std::size_t lo, std::size_t hi) {
        Rat m = val[lo];
        for (std::size_t i = lo + 1; i < hi; ++i) m = std::min(m, val[i]);
        return m;
      };

  // val(A) = (min over samples in A) - (min over the level-k ancestor);
  // stored as increments against the parent value
  std::function<void(const VertexId&, std::size_t, std::size_t, const Rat&, const Rat&)> build =
      [&](const VertexId& v, std::size_t lo, std::size_t hi, const Rat& base,
          const Rat& parent_val) {
        const Rat node_val = range_min(v, lo, hi) - base;
        if (v.generation() > k && node_val != parent_val)
          out.h.set_coeff(v, node_val - parent_val);
        if (v.generation() == sdepth) {
          for (std::size_t i = lo; i < hi; ++i) {
            const Rat r = val[i] - base;
            if (!(node_val <= r))
              fail(ErrorCode::ContractViolation, "cylinder minimum above a member sample");
            if (!(r - node_val <= envelope))
              fail(ErrorCode::InvalidInput,
                   "samples violate the stated Lipschitz bound inside a cylinder");
          }
          return;
        }
        std::size_t cur = lo;
        for (const VertexId& c : children(v)) {
          const TorusInterval iv = cylinder_interval(c);
          std::size_t nxt =
              static_cast<std::size_t>(std::lower_bound(pos.begin() + static_cast<std::ptrdiff_t>(cur),
                                                        pos.begin() + static_cast<std::ptrdiff_t>(hi),
                                                        iv.end()) -
                                       pos.begin());
          build(c, cur, nxt, base, node_val);
          cur = nxt;
        }
      };

  std::size_t cur = 0;
  for (const VertexId& v : level_k) {
    const TorusInterval iv = cylinder_interval(v);
    std::size_t nxt =
        static_cast<std::size_t>(std::lower_bound(pos.begin() + static_cast<std::ptrdiff_t>(cur),
                                                  pos.end(), iv.end()) -
                                 pos.begin());
    const Rat m = range_min(v, cur, nxt);
    gk_pieces.push_back({iv.start, iv.end(), m});
    build(v, cur, nxt, m, Rat(0));
    cur = nxt;
  }

  out.g_k = BoundaryData::from_pieces(std::move(gk_pieces));
  out.h_norm = bv_norm(out.h);
  Rat ref = lip_k;
  for (int i = 0; i < k; ++i) ref *= make_rat(4, 9);
  out.reference = ref;
  return out;
}

std::vector<DensityRow> density_suite(int kmin, int kmax) {
  if (kmin < 1 || kmax < kmin) fail(ErrorCode::InvalidInput, "bad level range");
  if (kmax > 5) fail(ErrorCode::ResourceLimit, "levels above 5 not supported");

  struct Func {
    const char* name;
    Rat lip;
    std::function<Rat(const Rat&)> f;
  };
  const Rat half = make_rat(1, 2);
  std::vector<Func> funcs = {
      {"dK_to_origin", Rat(1), [](const Rat& p) { return metric_dK_pos(p, Rat(0)); }},
      {"circle_to_origin", half, [](const Rat& p) { return metric_d_pos(p, Rat(0)); }},
      {"dK_to_pair", Rat(1),
       [&half](const Rat& p) {
         return std::min(metric_dK_pos(p, Rat(0)), metric_dK_pos(p, half));
       }},
  };

  std::vector<DensityRow> rows;
  for (const Func& fn : funcs) {
    Rat prev = 0;
    for (int k = kmin; k <= kmax; ++k) {
      std::vector<BoundarySample> samples;
      for (const VertexId& v : level_vertices(k + 3)) {
        const Rat p = cylinder_interval(v).start;
        samples.push_back({p, fn.f(p)});
      }
      DensityResult res = density_approximation(samples, fn.lip, k);
      DensityRow row;
      row.k = k;
      row.func = fn.name;
      row.h_norm = res.h_norm;
      row.ratio_to_prev = (k == kmin || prev == 0) ? Rat(0) : Rat(res.h_norm / prev);
      prev = res.h_norm;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

} // namespace koch
