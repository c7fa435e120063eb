#include <gtest/gtest.h>

#include <numeric>

#include "expect_error.hpp"
#include "semistatic/exact_oracle.hpp"
#include "test_support.hpp"

namespace semistatic {
namespace {

using testsupport::code_of;
using testsupport::laplace_determinant;

ExactMatrix random_matrix(testsupport::Rng& rng, std::size_t rows, std::size_t cols, int zero_every = 3) {
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (testsupport::uniform(rng, 1, zero_every) != 1) m(r, c) = testsupport::rational(rng, 7, 5);
  return m;
}

// Matrix of rank at most k: a product of rows x k and k x cols factors.
ExactMatrix low_rank_matrix(testsupport::Rng& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  const ExactMatrix a = random_matrix(rng, rows, k, 100);
  const ExactMatrix b = random_matrix(rng, k, cols, 100);
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t i = 0; i < k; ++i) m(r, c) += a(r, i) * b(i, c);
  return m;
}

TEST(ExactMatrix, FromRowsRejectsRaggedInput) {
  EXPECT_EQ(code_of([] { ExactMatrix::from_rows({{1, 2}, {3}}); }), ErrorCode::kShapeMismatch);
  const auto m = ExactMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.transposed()(2, 1), Scalar(6));
  EXPECT_EQ(m.multiply({1, 0, -1}), (std::vector<Scalar>{-2, -2}));
}

TEST(ExactOracle, Identity) {
  const auto id = ExactMatrix::identity(3);
  EXPECT_EQ(rank(id), 3u);
  EXPECT_EQ(determinant(id), Scalar(1));
  EXPECT_TRUE(nullspace(id).empty());
}

TEST(ExactOracle, SmallDeterminantByHand) {
  // The single-stock two-date system with x0 = (0, 2), x1 = (1, 3).
  const auto m = ExactMatrix::from_rows({{2, 0, 1, 0}, {3, 0, 0, 1}, {0, 1, 1, 0}, {0, 2, 0, 1}});
  EXPECT_EQ(determinant(m), Scalar(-1));
  EXPECT_EQ(laplace_determinant(m), Scalar(-1));
}

TEST(ExactOracle, EmptyAndNonSquare) {
  EXPECT_EQ(determinant(ExactMatrix(0, 0)), Scalar(1));
  EXPECT_EQ(code_of([] { determinant(ExactMatrix(2, 3)); }), ErrorCode::kNotSquare);
  EXPECT_EQ(rank(ExactMatrix(3, 0)), 0u);
  EXPECT_EQ(nullity(ExactMatrix(0, 4)), 4u);
}

TEST(ExactOracle, SolveChecksShape) {
  EXPECT_EQ(code_of([] { solve(ExactMatrix(2, 2), {1}); }), ErrorCode::kShapeMismatch);
}

TEST(AssembleTwoPeriod, Rectangle) {
  const auto e = StateSet::from_points(
      {{Scalar(0), Scalar(2)}, {Scalar(0), Scalar(3)}, {Scalar(1), Scalar(2)}, {Scalar(1), Scalar(3)}});
  const TwoPeriodSystem sys = assemble_two_period(e);
  ASSERT_EQ(sys.matrix.rows(), 4u);
  ASSERT_EQ(sys.matrix.cols(), 4u);
  EXPECT_EQ(sys.matrix, ExactMatrix::from_rows({{2, 0, 1, 0}, {3, 0, 0, 1}, {0, 1, 1, 0}, {0, 2, 0, 1}}));
  EXPECT_EQ(sys.unknowns[0].label(), "h(0)");
  EXPECT_EQ(sys.unknowns[3].label(), "g(3)");
  EXPECT_NE(determinant(sys.matrix), Scalar(0));
  EXPECT_EQ(determinant(sys.matrix), laplace_determinant(sys.matrix));
}

TEST(AssembleTwoPeriod, SingleDiagonalPoint) {
  const auto e = StateSet::from_points({{Scalar(5), Scalar(5)}});
  const TwoPeriodSystem sys = assemble_two_period(e);
  EXPECT_EQ(sys.matrix, ExactMatrix::from_rows({{0, 1}}));
}

TEST(AssembleTwoPeriod, MixedInstanceHasRankFour) {
  const auto e = StateSet::from_points(
      {{Scalar(0), Scalar(2)}, {Scalar(0), Scalar(3)}, {Scalar(1), Scalar(3)}, {Scalar(5), Scalar(5)}});
  const TwoPeriodSystem sys = assemble_two_period(e);
  EXPECT_EQ(sys.matrix.rows(), 4u);
  EXPECT_EQ(sys.matrix.cols(), 6u);
  EXPECT_EQ(rank(sys.matrix), 4u);
  EXPECT_EQ(nullity(sys.matrix), 2u);
}

TEST(AssembleTwoPeriod, DiagonalCornerCase) {
  const auto e = StateSet::from_points({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}});
  const TwoPeriodSystem sys = assemble_two_period(e);
  EXPECT_EQ(sys.matrix.rows(), 2u);
  EXPECT_EQ(sys.matrix.cols(), 3u);
  EXPECT_EQ(rank(sys.matrix), 2u);
  EXPECT_EQ(nullity(sys.matrix), 1u);
}

TEST(ExactOracleProperty, DeterminantMatchesLaplace) {
  testsupport::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(testsupport::uniform(rng, 1, 8));
    const ExactMatrix m = random_matrix(rng, n, n, testsupport::uniform(rng, 2, 5));
    EXPECT_EQ(determinant(m), laplace_determinant(m)) << "trial " << trial;
  }
}

TEST(ExactOracleProperty, RowPermutationFlipsSignByParity) {
  testsupport::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(testsupport::uniform(rng, 2, 9));
    const ExactMatrix m = random_matrix(rng, n, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ExactMatrix p(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p(r, c) = m(perm[r], c);
    // Parity from the cycle decomposition.
    std::vector<bool> seen(n, false);
    std::size_t transpositions = 0;
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t len = 0;
      for (std::size_t i = s; !seen[i]; i = perm[i], ++len) seen[i] = true;
      if (len > 0) transpositions += len - 1;
    }
    const Scalar expected = transpositions % 2 == 0 ? determinant(m) : Scalar(-determinant(m));
    EXPECT_EQ(determinant(p), expected);
  }
}

TEST(ExactOracleProperty, RankOfLowRankProducts) {
  testsupport::Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const auto rows = static_cast<std::size_t>(testsupport::uniform(rng, 1, 12));
    const auto cols = static_cast<std::size_t>(testsupport::uniform(rng, 1, 12));
    const auto k = static_cast<std::size_t>(testsupport::uniform(rng, 0, 5));
    const ExactMatrix m = low_rank_matrix(rng, rows, cols, k);
    const std::size_t r = rank(m);
    EXPECT_LE(r, std::min({rows, cols, k}));
    EXPECT_EQ(r + nullity(m), cols);
    EXPECT_EQ(rank(m.transposed()), r);
    for (const auto& v : nullspace(m)) {
      for (const auto& entry : m.multiply(v)) EXPECT_EQ(entry, Scalar(0));
    }
  }
}

TEST(ExactOracleProperty, RankInvariantUnderPermutationAndScaling) {
  testsupport::Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(testsupport::uniform(rng, 1, 10));
    const auto cols = static_cast<std::size_t>(testsupport::uniform(rng, 1, 10));
    const ExactMatrix m = low_rank_matrix(rng, rows, cols, static_cast<std::size_t>(testsupport::uniform(rng, 0, 6)));
    std::vector<std::size_t> rp(rows);
    std::vector<std::size_t> cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    ExactMatrix t(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const Scalar scale = testsupport::nonzero_rational(rng);
      for (std::size_t c = 0; c < cols; ++c) t(r, c) = scale * m(rp[r], cp[c]);
    }
    EXPECT_EQ(rank(t), rank(m));
  }
}

TEST(ExactOracleProperty, SolveRoundTrip) {
  testsupport::Rng rng(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t limit = trial < 990 ? 12 : 64;
    const auto rows = static_cast<std::size_t>(testsupport::uniform(rng, 1, static_cast<int>(limit)));
    const auto cols = static_cast<std::size_t>(testsupport::uniform(rng, 1, static_cast<int>(limit)));
    const ExactMatrix m = trial % 2 == 0
                              ? random_matrix(rng, rows, cols)
                              : low_rank_matrix(rng, rows, cols, static_cast<std::size_t>(testsupport::uniform(rng, 0, 6)));
    std::vector<Scalar> p(cols);
    for (auto& v : p) v = testsupport::rational(rng);
    const std::vector<Scalar> rhs = m.multiply(p);
    const SolveOutcome out = solve(m, rhs);
    ASSERT_TRUE(std::holds_alternative<Solution>(out)) << "trial " << trial;
    const Solution& s = std::get<Solution>(out);
    EXPECT_EQ(m.multiply(s.particular), rhs);
    EXPECT_EQ(s.nullspace.size(), nullity(m));
  }
}

TEST(ExactOracleProperty, InconsistencyCertificate) {
  testsupport::Rng rng(77);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(testsupport::uniform(rng, 2, 10));
    const auto cols = static_cast<std::size_t>(testsupport::uniform(rng, 1, 8));
    const ExactMatrix m = low_rank_matrix(rng, rows, cols, std::min<std::size_t>(rows - 1, 3));
    std::vector<Scalar> rhs(rows);
    for (auto& v : rhs) v = testsupport::rational(rng);
    const SolveOutcome out = solve(m, rhs);
    if (const auto* bad = std::get_if<Inconsistency>(&out)) {
      ++found;
      const ExactMatrix yt = ExactMatrix::from_rows({bad->certificate});
      for (const auto& e : m.transposed().multiply(bad->certificate)) EXPECT_EQ(e, Scalar(0));
      Scalar pairing = 0;
      for (std::size_t i = 0; i < rows; ++i) pairing += bad->certificate[i] * rhs[i];
      EXPECT_NE(pairing, Scalar(0));
      EXPECT_EQ(yt.cols(), rows);
    } else {
      EXPECT_EQ(m.multiply(std::get<Solution>(out).particular), rhs);
    }
  }
  EXPECT_GT(found, 100);
}

TEST(ExactOracle, BitLimitIsNotTriggeredByOrdinaryInput) {
  testsupport::Rng rng(5);
  const ExactMatrix m = random_matrix(rng, 30, 30, 100);
  EXPECT_NO_THROW(determinant(m));
}

}  // namespace
}  // namespace semistatic
