#include "doctest.h"

#include "kochtrace/error.hpp"
#include "kochtrace/extension.hpp"
#include "kochtrace/trace_solver.hpp"

#include <algorithm>
#include <functional>

using namespace koch;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

} // namespace

TEST_CASE("indicator extension of a cylinder is its subtree indicator") {
  const TreeFunction h = indicator_extension_pos(Rat(0), make_rat(1, 6));
  CHECK(h == subtree_indicator(VertexId::parse("/0")));
  CHECK(bv_norm(h) == make_rat(1, 3));
  CHECK(trace_equals(h, BoundaryData::indicator(Rat(0), make_rat(1, 6))));
}

TEST_CASE("indicator extension follows the maximal decomposition") {
  const TreeFunction h = indicator_extension_pos(make_rat(1, 48), make_rat(1, 6));
  CHECK(h.coeffs.size() == 4);
  for (const char* id : {"/0/1", "/0/2", "/0/3", "/0/4"})
    CHECK(h.coeff(VertexId::parse(id)) == 1);
  CHECK(bv_norm(h) == make_rat(4, 9));
  CHECK(trace_equals(h, BoundaryData::indicator(make_rat(1, 48), make_rat(1, 6))));
}

TEST_CASE("staircase extension: exact norm and term ratios") {
  StepFunction f;
  f.arc_start = 0;
  f.arc_end = make_rat(1, 6);
  f.base = 0;
  for (int j = 1; j <= 7; j += 2) f.jumps.emplace_back(make_rat(j, 48), make_rat(1, 4));

  const MonotoneResult r = monotone_extension(f);
  CHECK(r.arc_span == make_rat(1, 3));
  // suffix weights 4/9, 3/9, 2/9, 1/9, all positive, no cancellation
  CHECK(r.norm == make_rat(5, 18));
  CHECK(r.max_term_ratio == make_rat(4, 3)); // a suffix can outweigh the arc
  CHECK(r.norm <= 2 * Rat(1) * r.arc_span);

  CHECK(trace_limit(r.h, point_at(Rat(0))) == 0);
  CHECK(trace_limit(r.h, point_at(make_rat(1, 24))) == make_rat(1, 4));
  CHECK(trace_limit(r.h, point_at(make_rat(1, 8))) == make_rat(3, 4));
  CHECK(trace_limit(r.h, point_at(make_rat(7, 48))) == 1);
  CHECK(trace_limit(r.h, point_at(make_rat(1, 2))) == 0);
}

TEST_CASE("base-only extension scales the arc indicator") {
  StepFunction f;
  f.arc_start = 0;
  f.arc_end = make_rat(1, 6);
  f.base = make_rat(1, 2);
  const MonotoneResult r = monotone_extension(f);
  CHECK(r.h == tf_scale(subtree_indicator(VertexId::parse("/0")), make_rat(1, 2)));
  CHECK(r.norm == make_rat(1, 6));
  CHECK(r.max_term_ratio == 0);
}

TEST_CASE("decreasing data extends with the same machinery") {
  StepFunction f;
  f.arc_start = 0;
  f.arc_end = make_rat(1, 6);
  f.base = 1;
  f.jumps.emplace_back(make_rat(1, 48), make_rat(-1, 4));
  f.jumps.emplace_back(make_rat(1, 16), make_rat(-1, 4));
  const MonotoneResult r = monotone_extension(f);
  CHECK(r.norm == make_rat(19, 36));
  CHECK(r.norm <= 2 * (Rat(1) + make_rat(1, 2)) * r.arc_span);
  CHECK(trace_limit(r.h, point_at(make_rat(1, 96))) == 1);
  CHECK(trace_limit(r.h, point_at(make_rat(1, 24))) == make_rat(3, 4));
  CHECK(trace_limit(r.h, point_at(make_rat(29, 192))) == make_rat(1, 2));
}

TEST_CASE("monotone extension validates its input") {
  StepFunction f;
  f.arc_start = make_rat(1, 6);
  f.arc_end = 0;
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::InvalidInput); // heavy side

  f.arc_start = 0;
  f.arc_end = make_rat(1, 6);
  f.jumps = {{make_rat(1, 16), Rat(1)}, {make_rat(1, 48), Rat(1)}};
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::InvalidInput); // out of order

  f.jumps = {{make_rat(1, 48), Rat(0)}};
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::InvalidInput);

  f.jumps = {{make_rat(1, 48), Rat(1)}, {make_rat(1, 16), Rat(-1)}};
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::InvalidInput); // mixed signs

  f.jumps = {{Rat(0), Rat(1)}};
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::InvalidInput); // on the endpoint

  f.jumps = {{make_rat(1, 12), Rat(1)}};
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::UnsupportedInput); // apex

  f.jumps.clear();
  f.arc_end = f.arc_start;
  CHECK(code_of([&] { monotone_extension(f); }) == ErrorCode::InvalidInput);
}

TEST_CASE("weight bisection splits a cylinder at a balanced boundary") {
  const LipschitzProfile p = lipschitz_monotone_boundary(Rat(0), make_rat(1, 6), Rat(0), Rat(1), 1);
  REQUIRE(p.samples.size() == 3);
  CHECK(p.samples[0].pos == 0);
  CHECK(p.samples[1].pos == make_rat(1, 16));
  CHECK(p.samples[2].pos == make_rat(1, 6));
  CHECK(p.samples[1].value == make_rat(1, 2));
  // d_K(0, 1/16) = 2/9, so the first gap has slope (1/2) / (2/9)
  CHECK(p.lipschitz_dK == make_rat(9, 4));
}

TEST_CASE("deeper bisection stays monotone on valley points") {
  const LipschitzProfile p =
      lipschitz_monotone_boundary(make_rat(1, 6), make_rat(1, 3), Rat(2), Rat(5), 3);
  CHECK(p.samples.size() == 9);
  for (std::size_t i = 0; i + 1 < p.samples.size(); ++i) {
    CHECK(p.samples[i].pos < p.samples[i + 1].pos);
    CHECK(p.samples[i].value <= p.samples[i + 1].value);
    CHECK(is_cylinder_endpoint(p.samples[i].pos));
  }
  CHECK(p.samples.front().value == 2);
  CHECK(p.samples.back().value == 5);
  CHECK(p.lipschitz_dK > 0);
}

TEST_CASE("bisection profiles reject bad arguments") {
  CHECK(code_of([] { lipschitz_monotone_boundary(Rat(0), Rat(0), Rat(0), Rat(1), 1); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { lipschitz_monotone_boundary(Rat(0), make_rat(1, 6), Rat(0), Rat(1), 13); }) ==
        ErrorCode::ResourceLimit);
}

TEST_CASE("right inverse extends with the exact trace norm") {
  const BoundaryData g = BoundaryData::indicator(Rat(0), make_rat(1, 6));
  const TreeFunction h = right_inverse_S(g);
  CHECK(h == subtree_indicator(VertexId::parse("/0")));
  CHECK(trace_equals(h, g));
  CHECK(bv_norm(h) == trace_norm(g).norm);
}

TEST_CASE("density approximation on circle distance to the origin") {
  std::vector<BoundarySample> samples;
  std::vector<VertexId> level;
  for (uint8_t i = 0; i < 6; ++i) level.push_back(VertexId{{i}});
  for (int g = 1; g < 4; ++g) {
    std::vector<VertexId> next;
    for (const auto& v : level)
      for (const auto& c : children(v)) next.push_back(c);
    level = next;
  }
  for (const auto& v : level) {
    const Rat p = cylinder_interval(v).start;
    samples.push_back({p, metric_d_pos(p, Rat(0))});
  }

  const DensityResult r = density_approximation(samples, make_rat(1, 2), 1);
  CHECK(r.g_k.value_at(Rat(0)) == 0);
  CHECK(r.g_k.value_at(make_rat(1, 6)) == make_rat(1, 6));
  CHECK(r.h_norm > 0);
  CHECK(r.reference == make_rat(1, 2) * make_rat(4, 9));
  CHECK(r.h.support_depth() <= 4);
}

TEST_CASE("density approximation validates samples") {
  CHECK(code_of([] { density_approximation({}, Rat(1), 1); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] {
          density_approximation({{make_rat(1, 6), Rat(0)}, {Rat(0), Rat(0)}}, Rat(1), 1);
        }) == ErrorCode::InvalidInput); // unsorted
  CHECK(code_of([] { density_approximation({{Rat(0), Rat(0)}}, Rat(1), 0); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { density_approximation({{Rat(0), Rat(0)}}, Rat(1), 6); }) ==
        ErrorCode::ResourceLimit);
  CHECK(code_of([] { density_approximation({{Rat(0), Rat(0)}}, Rat(1), 1); }) ==
        ErrorCode::InvalidInput); // only one cylinder covered
  CHECK(code_of([] {
          // two samples in one level-4 cylinder, value gap far above the stated constant
          std::vector<BoundarySample> s;
          for (uint8_t i = 0; i < 6; ++i) {
            const Rat p = cylinder_interval(VertexId{{i}}).start;
            s.push_back({p, Rat(0)});
          }
          s.push_back({make_rat(1, 1000), Rat(5)});
          std::sort(s.begin(), s.end(),
                    [](const BoundarySample& a, const BoundarySample& b) { return a.pos < b.pos; });
          density_approximation(s, make_rat(1, 100), 1);
        }) == ErrorCode::InvalidInput);
}

TEST_CASE("sampling only level-2 starts caps the refinement depth") {
  std::vector<BoundarySample> samples;
  for (uint8_t i = 0; i < 6; ++i)
    for (const auto& c : children(VertexId{{i}})) {
      const Rat p = cylinder_interval(c).start;
      samples.push_back({p, metric_d_pos(p, Rat(0))});
    }
  std::sort(samples.begin(), samples.end(),
            [](const BoundarySample& a, const BoundarySample& b) { return a.pos < b.pos; });
  const DensityResult r = density_approximation(samples, make_rat(1, 2), 1);
  CHECK(r.h.support_depth() <= 2);
}

TEST_CASE("density decay across levels for three Lipschitz functions") {
  const auto rows = density_suite(2, 3);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    CHECK(row.h_norm > 0);
    if (row.k == 3) {
      CHECK(row.ratio_to_prev > 0);
      CHECK(row.ratio_to_prev < 1);
    }
  }
}
