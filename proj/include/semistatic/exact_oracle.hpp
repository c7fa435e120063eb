#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "semistatic/model.hpp"
#include "semistatic/scalar.hpp"

namespace semistatic {

/// Dense row-major matrix of exact rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  /// Throws Error(kShapeMismatch) on ragged input.
  static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix transposed() const;
  std::vector<Scalar> multiply(const std::vector<Scalar>& vec) const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Unknown of the two-period position system.
struct PositionUnknown {
  enum class Kind { kStock, kOption } kind;
  Scalar at;  // x for h(x), y for g(y)

  std::string label() const;
  friend bool operator==(const PositionUnknown&, const PositionUnknown&) = default;
};

struct TwoPeriodSystem {
  ExactMatrix matrix;                    // one row per point, canonical order
  std::vector<PositionUnknown> unknowns;  // h(x) for x in E^x, then g(y) for y in E^y
};

/// Row (x, y): coefficient y - x on h(x), 1 on g(y).
TwoPeriodSystem assemble_two_period(const StateSet& states);

std::size_t rank(const ExactMatrix& m);
std::size_t nullity(const ExactMatrix& m);
/// Throws Error(kNotSquare) for non-square input.
Scalar determinant(const ExactMatrix& m);

struct Solution {
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> nullspace;  // basis; empty when the solution is unique
};

/// y with y^T M = 0 and y . rhs != 0.
struct Inconsistency {
  std::vector<Scalar> certificate;
};

using SolveOutcome = std::variant<Solution, Inconsistency>;

/// Throws Error(kShapeMismatch) when rhs.size() != m.rows().
SolveOutcome solve(const ExactMatrix& m, const std::vector<Scalar>& rhs);

/// Basis of {p : M p = 0}.
std::vector<std::vector<Scalar>> nullspace(const ExactMatrix& m);

}  // namespace semistatic
