#include "kochtrace/arens_eells.hpp"

#include "kochtrace/alpha.hpp"
#include "kochtrace/error.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>

namespace koch {

Molecule Molecule::from_atoms(const std::vector<std::pair<Rat, Rat>>& atoms) {
  Molecule m;
  Rat total = 0;
  for (const auto& [pos, w] : atoms) {
    if (!(pos >= 0 && pos < 1))
      fail(ErrorCode::InvalidInput, "atom positions must lie in [0, 1)");
    m.atoms[pos] += w;
    total += w;
  }
  if (total != 0) fail(ErrorCode::InvalidInput, "molecule weights must sum to zero");
  for (auto it = m.atoms.begin(); it != m.atoms.end();) {
    if (it->second == 0)
      it = m.atoms.erase(it);
    else
      ++it;
  }
  return m;
}

namespace {

void check_molecule(const Molecule& m) {
  Rat total = 0;
  for (const auto& [pos, w] : m.atoms) {
    if (!(pos >= 0 && pos < 1))
      fail(ErrorCode::InvalidInput, "atom positions must lie in [0, 1)");
    if (w == 0) fail(ErrorCode::InvalidInput, "atom weights must be nonzero");
    total += w;
  }
  if (total != 0) fail(ErrorCode::InvalidInput, "molecule weights must sum to zero");
}

struct FlowSide {
  std::vector<Rat> pos;
  std::vector<Rat> amount; // positive
};

void split_sides(const Molecule& m, FlowSide& src, FlowSide& snk) {
  for (const auto& [pos, w] : m.atoms) {
    if (w > 0) {
      src.pos.push_back(pos);
      src.amount.push_back(w);
    } else {
      snk.pos.push_back(pos);
      snk.amount.push_back(-w);
    }
  }
  if (src.pos.size() + snk.pos.size() > 64)
    fail(ErrorCode::ResourceLimit, "molecules above 64 atoms not supported");
}

struct FlowEdge {
  std::size_t to;
  std::size_t rev;
  Rat cap;
  Rat cost;
};

// Exact min-cost flow by successive shortest augmenting paths; every
// augmentation saturates a supply or demand edge, so the number of rounds
// is at most the atom count.
Rat transport_cost(const FlowSide& src, const FlowSide& snk,
                   const std::vector<std::vector<Rat>>& cost) {
  const std::size_t ns = src.pos.size(), nt = snk.pos.size();
  const std::size_t S = 0, T = ns + nt + 1, N = ns + nt + 2;
  std::vector<std::vector<FlowEdge>> adj(N);
  auto add_edge = [&](std::size_t u, std::size_t v, const Rat& cap, const Rat& cst) {
    adj[u].push_back({v, adj[v].size(), cap, cst});
    adj[v].push_back({u, adj[u].size() - 1, Rat(0), Rat(-cst)});
  };
  Rat total = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    add_edge(S, 1 + i, src.amount[i], Rat(0));
    total += src.amount[i];
  }
  for (std::size_t j = 0; j < nt; ++j) add_edge(1 + ns + j, T, snk.amount[j], Rat(0));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      if (cost[i][j] < 0)
        fail(ErrorCode::InvalidInput, "metric returned a negative distance");
      add_edge(1 + i, 1 + ns + j, total, cost[i][j]);
    }

  Rat result = 0;
  Rat pushed = 0;
  while (pushed < total) {
    std::vector<bool> seen(N, false);
    std::vector<Rat> dist(N, Rat(0));
    std::vector<std::pair<std::size_t, std::size_t>> prev(N, {N, 0});
    seen[S] = true;
    bool changed = true;
    // Bellman-Ford over the residual graph
    for (std::size_t round = 0; round < N && changed; ++round) {
      changed = false;
      for (std::size_t u = 0; u < N; ++u) {
        if (!seen[u]) continue;
        for (std::size_t e = 0; e < adj[u].size(); ++e) {
          const FlowEdge& ed = adj[u][e];
          if (ed.cap == 0) continue;
          const Rat nd = dist[u] + ed.cost;
          if (!seen[ed.to] || nd < dist[ed.to]) {
            seen[ed.to] = true;
            dist[ed.to] = nd;
            prev[ed.to] = {u, e};
            changed = true;
          }
        }
      }
    }
    if (changed || !seen[T])
      fail(ErrorCode::ContractViolation, "transport network disconnected");
    Rat bottleneck = total - pushed;
    for (std::size_t v = T; v != S;) {
      const auto [u, e] = prev[v];
      bottleneck = std::min(bottleneck, adj[u][e].cap);
      v = u;
    }
    for (std::size_t v = T; v != S;) {
      const auto [u, e] = prev[v];
      adj[u][e].cap -= bottleneck;
      adj[adj[u][e].to][adj[u][e].rev].cap += bottleneck;
      v = u;
    }
    pushed += bottleneck;
    result += bottleneck * dist[T];
  }
  return result;
}

} // namespace

Rat ae_norm(const Molecule& m, const MetricFn& dist) {
  check_molecule(m);
  if (m.empty()) return Rat(0);
  FlowSide src, snk;
  split_sides(m, src, snk);
  std::vector<std::vector<Rat>> cost(src.pos.size(), std::vector<Rat>(snk.pos.size()));
  for (std::size_t i = 0; i < src.pos.size(); ++i)
    for (std::size_t j = 0; j < snk.pos.size(); ++j) cost[i][j] = dist(src.pos[i], snk.pos[j]);
  return transport_cost(src, snk, cost);
}

RatInterval ae_norm_interval(const Molecule& m, const MetricIntervalFn& dist) {
  check_molecule(m);
  if (m.empty()) return RatInterval{Rat(0), Rat(0)};
  FlowSide src, snk;
  split_sides(m, src, snk);
  const std::size_t ns = src.pos.size(), nt = snk.pos.size();
  std::vector<std::vector<Rat>> lo(ns, std::vector<Rat>(nt)), hi(ns, std::vector<Rat>(nt));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const RatInterval iv = dist(src.pos[i], snk.pos[j]);
      if (!(iv.lo >= 0 && iv.lo <= iv.hi))
        fail(ErrorCode::InvalidInput, "bad metric enclosure");
      lo[i][j] = iv.lo;
      hi[i][j] = iv.hi;
    }
  RatInterval out{transport_cost(src, snk, lo), transport_cost(src, snk, hi)};
  if (!(out.lo <= out.hi))
    fail(ErrorCode::ContractViolation, "transport enclosure inverted");
  return out;
}

Rat ae_norm_bruteforce(const Molecule& m, const MetricFn& dist) {
  check_molecule(m);
  if (m.empty()) return Rat(0);
  std::vector<Rat> pos_units, neg_units;
  for (const auto& [pos, w] : m.atoms) {
    if (w.get_den() != 1)
      fail(ErrorCode::InvalidInput, "assignment oracle needs integer weights");
    Int n = w.get_num();
    const bool positive = n > 0;
    if (!positive) n = -n;
    if (n > 7) fail(ErrorCode::ResourceLimit, "assignment oracle limited to 7 units");
    for (Int c = 0; c < n; ++c) (positive ? pos_units : neg_units).push_back(pos);
  }
  if (pos_units.size() != neg_units.size())
    fail(ErrorCode::ContractViolation, "unit counts differ on a balanced molecule");
  if (pos_units.size() > 7)
    fail(ErrorCode::ResourceLimit, "assignment oracle limited to 7 units");

  std::vector<std::size_t> idx(neg_units.size());
  std::iota(idx.begin(), idx.end(), 0);
  bool first = true;
  Rat best = 0;
  std::vector<std::size_t> perm = idx;
  do {
    Rat c = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) c += dist(pos_units[i], neg_units[perm[i]]);
    if (first || c < best) {
      best = c;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

BoundaryData psi(const Molecule& m) {
  check_molecule(m);
  if (m.empty()) return BoundaryData();
  std::vector<BoundaryPiece> pieces;
  Rat running = 0;
  auto it = m.atoms.begin();
  while (it != m.atoms.end()) {
    running += it->second;
    auto nxt = std::next(it);
    if (nxt == m.atoms.end()) break; // wrap piece carries the zero total
    if (running != 0) pieces.push_back({it->first, nxt->first, running});
    it = nxt;
  }
  return BoundaryData::from_pieces(std::move(pieces));
}

BoundaryData psi_anchored(const Molecule& m, std::size_t anchor) {
  check_molecule(m);
  if (m.empty()) return BoundaryData();
  std::vector<Rat> pos;
  std::vector<Rat> w;
  for (const auto& [p, wt] : m.atoms) {
    pos.push_back(p);
    w.push_back(wt);
  }
  const std::size_t n = pos.size();
  if (anchor >= n) fail(ErrorCode::InvalidInput, "anchor out of range");
  std::vector<std::array<Rat, 3>> arcs;
  Rat running = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (anchor + k) % n;
    running += w[i];
    if (running != 0) arcs.push_back({pos[i], pos[(i + 1) % n], running});
  }
  return BoundaryData::from_position_arcs(arcs);
}

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, int depth) {
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(depth)};
  return std::mt19937_64(sq);
}

Rat random_valley(std::mt19937_64& rng, int max_gen) {
  std::uniform_int_distribution<int> gd(1, max_gen);
  const int g = gd(rng);
  VertexId v;
  for (int i = 0; i < g; ++i) {
    const int n = static_cast<int>(child_count(i == 0 ? Kind::Star : kind_of(v)));
    std::uniform_int_distribution<int> pick(0, n - 1);
    v.path.push_back(static_cast<uint8_t>(pick(rng)));
  }
  return cylinder_interval(v).start;
}

} // namespace

std::vector<IsoRow> verify_isomorphism(int max_depth, int samples_per_depth,
                                       std::uint64_t seed, TildeCache& cache) {
  if (max_depth < 1 || max_depth > 8) fail(ErrorCode::InvalidInput, "depth must lie in [1, 8]");
  if (samples_per_depth < 1) fail(ErrorCode::InvalidInput, "need at least one sample");

  MetricFn dist = [&cache](const Rat& a, const Rat& b) { return cache(a, b); };
  std::vector<IsoRow> rows;
  for (int depth = 1; depth <= max_depth; ++depth) {
    auto rng = seeded_rng(seed, depth);
    std::uniform_int_distribution<int> pair_count(1, 3), weight(1, 2);
    IsoRow row{depth, samples_per_depth, Rat(0), true};
    for (int s = 0; s < samples_per_depth; ++s) {
      Molecule m;
      do {
        std::vector<std::pair<Rat, Rat>> atoms;
        const int pairs = pair_count(rng);
        for (int p = 0; p < pairs; ++p) {
          const Rat a = random_valley(rng, depth);
          Rat b = a;
          while (b == a) b = random_valley(rng, depth);
          const Rat wt(weight(rng));
          atoms.emplace_back(a, wt);
          atoms.emplace_back(b, -wt);
        }
        m = Molecule::from_atoms(atoms);
      } while (m.empty());
      const Rat a_norm = ae_norm(m, dist);
      const Rat t_norm = trace_norm(psi(m)).norm;
      if (t_norm == 0) fail(ErrorCode::ContractViolation, "nonzero molecule with zero trace norm");
      if (!(t_norm <= a_norm)) row.contraction_ok = false;
      row.max_ratio = std::max(row.max_ratio, Rat(a_norm / t_norm));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricCompareRow> metric_compare(int max_depth, int samples_per_depth,
                                             std::uint64_t seed, unsigned prec_bits,
                                             TildeCache& cache) {
  if (max_depth < 1 || max_depth > 8) fail(ErrorCode::InvalidInput, "depth must lie in [1, 8]");
  if (samples_per_depth < 1) fail(ErrorCode::InvalidInput, "need at least one sample");

  std::vector<MetricCompareRow> rows;
  for (int depth = 1; depth <= max_depth; ++depth) {
    auto rng = seeded_rng(seed ^ 0x9e3779b97f4a7c15ULL, depth);
    MetricCompareRow row{depth, samples_per_depth, Rat(0), Rat(0), Rat(0)};
    bool first = true;
    for (int s = 0; s < samples_per_depth; ++s) {
      const Rat x = random_valley(rng, depth);
      Rat y = x;
      while (y == x) y = random_valley(rng, depth);
      const Rat t = cache(x, y);
      const RatInterval p = pow_alpha(metric_d_pos(x, y), prec_bits);
      if (!(p.lo > 0)) fail(ErrorCode::ContractViolation, "power enclosure hit zero");
      const Rat ratio_lo = t / p.hi;
      const Rat ratio_hi = t / p.lo;
      if (first) {
        row.min_ratio_lo = ratio_lo;
        row.max_ratio_hi = ratio_hi;
        first = false;
      } else {
        row.min_ratio_lo = std::min(row.min_ratio_lo, ratio_lo);
        row.max_ratio_hi = std::max(row.max_ratio_hi, ratio_hi);
      }
      row.max_width = std::max(row.max_width, Rat(ratio_hi - ratio_lo));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace koch
