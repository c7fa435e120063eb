#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "semistatic/cycles.hpp"
#include "test_support.hpp"

namespace semistatic {
namespace {

using testsupport::code_of;

Point pt(long x, long y) { return {Scalar(x), Scalar(y)}; }

Cycle rectangle_cycle() { return Cycle{{pt(0, 2), pt(1, 3)}}; }

StateSet rectangle() { return StateSet::from_points({pt(0, 2), pt(0, 3), pt(1, 2), pt(1, 3)}); }

TEST(Cycle, EvaluationPointsAlternate) {
  EXPECT_EQ(rectangle_cycle().evaluation_points(), (std::vector<Point>{pt(0, 2), pt(1, 2), pt(1, 3), pt(0, 3)}));
}

TEST(Cycle, RectangleIsIdentifying) {
  EXPECT_EQ(cycle_determinant(rectangle_cycle()), Scalar(1));
  EXPECT_TRUE(is_identifying(rectangle_cycle()));
}

TEST(Cycle, DegenerateRectangle) {
  const Cycle c{{pt(0, 2), pt(0, 3)}};
  EXPECT_EQ(cycle_determinant(c), Scalar(0));
  EXPECT_FALSE(is_identifying(c));
}

TEST(Cycle, LengthOneNeverIdentifies) {
  testsupport::Rng rng(2);
  for (int i = 0; i < 50; ++i) EXPECT_FALSE(is_identifying(testsupport::random_cycle(rng, 1)));
}

TEST(Cycle, TwoCycleCriterionIsTheRectangleCondition) {
  testsupport::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const Point a{Scalar(testsupport::uniform(rng, 0, 3)), Scalar(testsupport::uniform(rng, 4, 7))};
    const Point b{Scalar(testsupport::uniform(rng, 0, 3)), Scalar(testsupport::uniform(rng, 4, 7))};
    const Cycle c{{a, b}};
    EXPECT_EQ(cycle_determinant(c), (a.x - b.x) * (a.y - b.y));
  }
}

TEST(Cycle, DiagonalEvaluationPointIsInvalid) {
  EXPECT_EQ(code_of([] { validate(Cycle{{pt(0, 1), pt(1, 3)}}); }), ErrorCode::kInvalidCycle);
  EXPECT_EQ(code_of([] { validate(Cycle{}); }), ErrorCode::kInvalidCycle);
}

TEST(CycleMatrix, RectangleLayout) {
  EXPECT_EQ(cycle_matrix(rectangle_cycle()),
            ExactMatrix::from_rows({{2, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 2, 1}, {3, 0, 0, 1}}));
}

TEST(CycleSystem, RectangleSolve) {
  const Strategy v{{2, 8, 2, 9}};
  const CycleSystem sys = assemble_cycle_system(rectangle_cycle(), rectangle(), v);
  EXPECT_EQ(sys.rhs, (std::vector<Scalar>{2, 2, 9, 8}));
  const PortfolioPosition pos = solve_cycle_system(rectangle_cycle(), rectangle(), v);
  EXPECT_EQ(pos.h, (ScalarMap{{0, 1}, {1, 2}}));
  EXPECT_EQ(pos.g, (ScalarMap{{2, 0}, {3, 5}}));
}

TEST(CycleSystem, ZeroValuesGiveZeroPositions) {
  const PortfolioPosition pos = solve_cycle_system(rectangle_cycle(), std::vector<Scalar>(4, Scalar(0)));
  for (const auto& [x, h] : pos.h) EXPECT_EQ(h, Scalar(0));
  for (const auto& [y, g] : pos.g) EXPECT_EQ(g, Scalar(0));
}

TEST(CycleSystem, Errors) {
  const Cycle flat{{pt(0, 2), pt(0, 3)}};
  EXPECT_EQ(code_of([&] { solve_cycle_system(flat, std::vector<Scalar>(4)); }), ErrorCode::kSingularSystem);
  EXPECT_EQ(code_of([] { solve_cycle_system(rectangle_cycle(), std::vector<Scalar>(3)); }),
            ErrorCode::kShapeMismatch);
  const StateSet partial = StateSet::from_points({pt(0, 2), pt(1, 2), pt(1, 3)});
  EXPECT_EQ(code_of([&] { assemble_cycle_system(rectangle_cycle(), partial, Strategy{{1, 2, 3}}); }),
            ErrorCode::kInvalidCycle);
}

TEST(CycleSystem, RepeatedCoordinateWithConflictingValues) {
  // x = 0 appears twice; values not coming from one position pair conflict.
  const Cycle c{{pt(0, 2), pt(1, 3), pt(0, 4), pt(5, 6)}};
  ASSERT_TRUE(is_identifying(c));
  bool conflicted = false;
  testsupport::Rng rng(12);
  for (int i = 0; i < 20 && !conflicted; ++i) {
    std::vector<Scalar> rhs(8);
    for (auto& r : rhs) r = testsupport::rational(rng);
    conflicted = code_of([&] { solve_cycle_system(c, rhs); }) == ErrorCode::kInconsistent;
  }
  EXPECT_TRUE(conflicted);
}

TEST(CycleProperty, DeterminantFormulaMatchesLaplaceAndElimination) {
  testsupport::Rng rng(41);
  for (std::size_t k = 1; k <= 6; ++k) {
    for (int trial = 0; trial < 30; ++trial) {
      const Cycle c = testsupport::random_cycle(rng, k);
      const ExactMatrix m = cycle_matrix(c);
      const Scalar formula = cycle_determinant(c);
      EXPECT_EQ(formula, testsupport::laplace_determinant(m)) << "k = " << k;
      EXPECT_EQ(formula, determinant(m)) << "k = " << k;
    }
  }
}

TEST(CycleProperty, SolveRecoversPositions) {
  testsupport::Rng rng(43);
  for (std::size_t k = 2; k <= 6; ++k) {
    for (int trial = 0; trial < 40; ++trial) {
      const Cycle c = testsupport::random_cycle(rng, k);
      if (!is_identifying(c)) continue;
      ScalarMap h;
      ScalarMap g;
      for (const auto& p : c.interior) {
        h[p.x] = testsupport::rational(rng);
        g[p.y] = testsupport::rational(rng);
      }
      std::vector<Scalar> rhs;
      for (const auto& p : c.evaluation_points()) rhs.push_back(h.at(p.x) * (p.y - p.x) + g.at(p.y));
      const PortfolioPosition pos = solve_cycle_system(c, rhs);
      EXPECT_EQ(pos.h, h);
      EXPECT_EQ(pos.g, g);
      // Same answer as the brute-force system.
      const auto out = solve(cycle_matrix(c), rhs);
      const auto& sol = std::get<Solution>(out);
      for (std::size_t i = 0; i < k; ++i) {
        EXPECT_EQ(sol.particular[2 * i], h.at(c.interior[i].x));
        EXPECT_EQ(sol.particular[2 * i + 1], g.at(c.interior[i].y));
      }
    }
  }
}

TEST(FindIdentifyingCycle, Examples) {
  const auto rect = components(rectangle().points())[0];
  const auto found = find_identifying_cycle(rect);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(is_identifying(*found));
  for (const auto& p : found->evaluation_points()) EXPECT_TRUE(rect.contains(p));

  const auto tree = components(std::vector<Point>{pt(0, 2), pt(0, 3), pt(1, 3)})[0];
  EXPECT_FALSE(find_identifying_cycle(tree).has_value());
  const auto single = components(std::vector<Point>{pt(0, 2)})[0];
  EXPECT_FALSE(find_identifying_cycle(single).has_value());
}

TEST(FundamentalCycle, StaysInsideComponent) {
  testsupport::Rng rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const StateSet e = testsupport::random_states(rng, 25, 5, 100);
    for (const auto& c : components(split(e).off_diagonal)) {
      CoordinateGraph g(c);
      SpanningTree t(g, g.x_node(c.points.front().x));
      for (std::size_t edge : t.non_tree_edges()) {
        const Cycle cyc = fundamental_cycle(c, g, t, edge);
        EXPECT_EQ(cyc.base(), c.points[edge]);
        EXPECT_GE(cyc.length(), 2u);
        for (const auto& p : cyc.evaluation_points()) EXPECT_TRUE(c.contains(p)) << to_string(p);
      }
    }
  }
}

}  // namespace
}  // namespace semistatic
