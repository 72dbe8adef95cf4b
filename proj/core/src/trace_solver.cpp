#include "kochtrace/trace_solver.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "kochtrace/error.hpp"
#include "kochtrace/pwl.hpp"

namespace koch {

namespace {

// straddling vertex of the boundary data; the root is always node 0
struct SolveNode {
  VertexId id;
  Rat edge_weight;                               // 3^-generation, unused at the root
  std::vector<std::pair<VertexId, Rat>> fixed;   // non-straddling children: clamp values
  std::vector<Rat> fixed_weights;
  std::vector<SolveNode> frees;                  // straddling children
  std::vector<PWLConvex::ClipBounds> free_bounds;
  PWLConvex sum;                                 // sum of child messages
  bool has_sum = false;
};

SolveNode build_node(const BoundaryData& g, const VertexId& v) {
  SolveNode node;
  node.id = v;
  node.edge_weight = pow3_neg(static_cast<unsigned>(v.generation()));
  for (const auto& c : children(v)) {
    auto iv = cylinder_interval(c);
    if (g.straddles(iv.start, iv.end())) {
      node.frees.push_back(build_node(g, c));
    } else {
      node.fixed.emplace_back(c, g.value_at(iv.start, Side::After));
      node.fixed_weights.push_back(
          pow3_neg(static_cast<unsigned>(c.generation())));
    }
  }
  return node;
}

// message to the parent: min over own value of (own cost tree) clipped by
// the edge weight; fills node.sum with the unclipped sum of child messages
PWLConvex solve_up(SolveNode& node) {
  PWLConvex sum;
  bool init = false;
  auto absorb = [&](PWLConvex term) {
    if (init)
      sum += term;
    else {
      sum = std::move(term);
      init = true;
    }
  };
  for (std::size_t i = 0; i < node.fixed.size(); ++i)
    absorb(PWLConvex::cone(node.fixed[i].second, node.fixed_weights[i]));
  node.free_bounds.resize(node.frees.size());
  for (std::size_t i = 0; i < node.frees.size(); ++i) {
    PWLConvex msg = solve_up(node.frees[i]);
    absorb(msg.clip(node.frees[i].edge_weight, &node.free_bounds[i]));
  }
  node.sum = sum;
  node.has_sum = true;
  return sum;
}

void assign_down(const SolveNode& node, const Rat& value, TreeFunction& out) {
  for (const auto& [c, w] : node.fixed) {
    out.set_coeff(c, w - value);
  }
  for (std::size_t i = 0; i < node.frees.size(); ++i) {
    Rat cv = node.free_bounds[i].clamp(value);
    out.set_coeff(node.frees[i].id, cv - value);
    assign_down(node.frees[i], cv, out);
  }
}

} // namespace

TraceNormResult trace_norm(const BoundaryData& g) {
  TraceNormResult res;
  if (!g.straddles(Rat(0), Rat(1))) {
    // no jump anywhere: the trace is a constant
    res.norm = 0;
    res.minimizer.baseline = g.value_at(Rat(0), Side::After);
    return res;
  }
  SolveNode root = build_node(g, VertexId{});
  PWLConvex total = solve_up(root);
  auto m = total.minimum();
  res.norm = m.value;
  res.minimizer.baseline = m.argmin;
  assign_down(root, m.argmin, res.minimizer);

  if (bv_norm(res.minimizer) != res.norm)
    fail(ErrorCode::ContractViolation,
         "trace solver: minimizer norm does not match the optimum");
  if (!trace_equals(res.minimizer, g))
    fail(ErrorCode::ContractViolation,
         "trace solver: minimizer trace does not match the data");
  if (clamp_W(res.minimizer, g) != res.minimizer)
    fail(ErrorCode::ContractViolation,
         "trace solver: minimizer is not in clamped form");
  return res;
}

namespace {

struct FlatNode {
  const SolveNode* node;
  int parent; // index into the flat list, -1 at the root
};

void flatten(const SolveNode& node, int parent, std::vector<FlatNode>& out) {
  int self = static_cast<int>(out.size());
  out.push_back(FlatNode{&node, parent});
  for (const auto& f : node.frees) flatten(f, self, out);
}

Rat fixed_cost(const SolveNode& node, const Rat& value) {
  Rat cost = 0;
  for (std::size_t i = 0; i < node.fixed.size(); ++i)
    cost += node.fixed_weights[i] * rat_abs(node.fixed[i].second - value);
  return cost;
}

// one-sided derivative of the objective under a group shift of the tied
// connected subset; positive direction if up, else negative
Rat group_shift_slope(const std::vector<FlatNode>& flat,
                      const std::vector<std::vector<int>>& kids,
                      const std::vector<Rat>& vals, unsigned mask,
                      const std::vector<int>& members, bool up) {
  Rat slope = 0;
  auto in_set = [&](int idx) {
    for (std::size_t k = 0; k < members.size(); ++k)
      if (members[k] == idx) return (mask >> k & 1u) != 0;
    return false;
  };
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (!(mask >> k & 1u)) continue;
    int i = members[k];
    const SolveNode& n = *flat[i].node;
    const Rat& v = vals[i];
    // fixed children always sit outside the set
    for (std::size_t j = 0; j < n.fixed.size(); ++j) {
      const Rat& fv = n.fixed[j].second;
      int sign = fv == v ? 1 : ((fv < v) == up ? 1 : -1);
      slope += sign * n.fixed_weights[j];
    }
    // tree edges crossing the set boundary
    int p = flat[i].parent;
    if (p >= 0 && !in_set(p)) {
      int sign = vals[p] == v ? 1 : ((vals[p] < v) == up ? 1 : -1);
      slope += sign * n.edge_weight;
    }
    for (int c : kids[i]) {
      if (in_set(c)) continue;
      int sign = vals[c] == v ? 1 : ((vals[c] < v) == up ? 1 : -1);
      slope += sign * flat[c].node->edge_weight;
    }
  }
  return slope;
}

void verify_local_moves(const std::vector<FlatNode>& flat,
                        const std::vector<Rat>& vals) {
  std::size_t n = flat.size();
  std::vector<std::vector<int>> kids(n);
  for (std::size_t i = 1; i < n; ++i)
    kids[flat[i].parent].push_back(static_cast<int>(i));

  // maximal connected components of equal value
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      auto push = [&](int w) {
        if (comp[w] < 0 && vals[w] == vals[i]) {
          comp[w] = ncomp;
          stack.push_back(static_cast<std::size_t>(w));
        }
      };
      if (flat[u].parent >= 0) push(flat[u].parent);
      for (int c : kids[u]) push(c);
    }
    ++ncomp;
  }

  for (int cidx = 0; cidx < ncomp; ++cidx) {
    std::vector<int> members;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == cidx) members.push_back(static_cast<int>(i));
    if (members.size() > 16)
      fail(ErrorCode::ResourceLimit,
           "oracle: tied component too large to certify");
    unsigned total = 1u << members.size();
    for (unsigned mask = 1; mask < total; ++mask) {
      // connectivity of the selected subset inside the component
      std::vector<int> sel;
      for (std::size_t k = 0; k < members.size(); ++k)
        if (mask >> k & 1u) sel.push_back(members[k]);
      std::vector<char> seen(sel.size(), 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      std::size_t reached = 1;
      while (!stack.empty()) {
        int u = sel[static_cast<std::size_t>(stack.back())];
        stack.pop_back();
        for (std::size_t k = 0; k < sel.size(); ++k) {
          if (seen[k]) continue;
          int v = sel[k];
          bool adj = (flat[u].parent == v) || (flat[v].parent == u);
          if (adj) {
            seen[k] = 1;
            stack.push_back(static_cast<int>(k));
            ++reached;
          }
        }
      }
      if (reached != sel.size()) continue;
      Rat upslope = group_shift_slope(flat, kids, vals, mask, members, true);
      Rat downslope = group_shift_slope(flat, kids, vals, mask, members, false);
      if (upslope < 0 || downslope < 0)
        fail(ErrorCode::ContractViolation,
             "oracle: local move certificate failed");
    }
  }
}

} // namespace

Rat trace_norm_bruteforce(const BoundaryData& g, int depth_cap) {
  if (!g.straddles(Rat(0), Rat(1))) return Rat(0);
  if (g.reduction_depth() > depth_cap)
    fail(ErrorCode::ResourceLimit,
         "oracle: reduction depth exceeds the cap");
  SolveNode root = build_node(g, VertexId{});
  std::vector<FlatNode> flat;
  flatten(root, -1, flat);
  if (flat.size() > 24)
    fail(ErrorCode::ResourceLimit, "oracle: too many straddling vertices");

  std::vector<Rat> candidates{Rat(0)};
  for (const auto& p : g.pieces()) candidates.push_back(p.coeff);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<Rat> vals(flat.size());
  std::vector<Rat> best_vals;
  Rat best = -1;

  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t i,
                                                         const Rat& acc) {
    if (best >= 0 && acc >= best) return;
    if (i == flat.size()) {
      best = acc;
      best_vals = vals;
      return;
    }
    const SolveNode& n = *flat[i].node;
    for (const Rat& cand : candidates) {
      Rat cost = fixed_cost(n, cand);
      if (flat[i].parent >= 0)
        cost += n.edge_weight * rat_abs(cand - vals[flat[i].parent]);
      vals[i] = cand;
      rec(i + 1, acc + cost);
    }
  };
  rec(0, Rat(0));

  if (best < 0)
    fail(ErrorCode::ContractViolation, "oracle: search found no assignment");
  verify_local_moves(flat, best_vals);
  return best;
}

Rat tilde_d_pos(const Rat& x, const Rat& y) {
  if (x == y) return Rat(0);
  Rat a = trace_norm(BoundaryData::indicator(x, y)).norm;
  Rat b = trace_norm(BoundaryData::indicator(y, x)).norm;
  if (a != b)
    fail(ErrorCode::ContractViolation,
         "tilde_d: the two arc orientations disagree");
  return a;
}

Rat tilde_d(const BoundaryPoint& x, const BoundaryPoint& y) {
  return tilde_d_pos(torus_position(x), torus_position(y));
}

Rat TildeCache::operator()(const Rat& x, const Rat& y) {
  std::pair<Rat, Rat> key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Rat val = tilde_d_pos(key.first, key.second);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::move(key), val);
  return val;
}

} // namespace koch
