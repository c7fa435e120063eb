#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semistatic/connectivity.hpp"
#include "semistatic/exact_oracle.hpp"
#include "semistatic/model.hpp"

namespace semistatic {

/// Closed alternating walk (x_1, y_1), (x_2, y_1), (x_2, y_2), ..., (x_k, y_k),
/// (x_1, y_k) with the cyclic convention x_{k+1} = x_1. The base is
/// (x_1, y_1); `interior` holds (x_i, y_i), i = 1..k.
struct Cycle {
  std::vector<Point> interior;

  std::size_t length() const noexcept { return interior.size(); }
  const Point& base() const { return interior.front(); }
  /// x_{i+1} with wrap-around, 0-based.
  const Scalar& next_x(std::size_t i) const { return interior[(i + 1) % interior.size()].x; }

  /// The 2k points in system-row order: (x_i, y_i), (x_{i+1}, y_i), ...
  std::vector<Point> evaluation_points() const;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Throws Error(kInvalidCycle) unless k >= 1 and every evaluation point is
/// off the diagonal.
void validate(const Cycle& cycle);

/// prod (y_i - x_i) - prod (y_i - x_{i+1}).
Scalar cycle_determinant(const Cycle& cycle);

bool is_identifying(const Cycle& cycle);

/// 2k x 2k system in the unknowns h(x_1), g(y_1), ..., h(x_k), g(y_k).
struct CycleSystem {
  ExactMatrix matrix;
  std::vector<Scalar> rhs;
};

ExactMatrix cycle_matrix(const Cycle& cycle);

/// Strategy values at the evaluation points; throws Error(kInvalidCycle)
/// when one of them is not a state.
CycleSystem assemble_cycle_system(const Cycle& cycle, const StateSet& states, const Strategy& v);

/// Unique h(x_i), g(y_i) reproducing the 2k values, obtained by sweeping the
/// cycle once. Throws Error(kSingularSystem) for a non-identifying cycle and
/// Error(kInconsistent) if a repeated coordinate receives two values.
PortfolioPosition solve_cycle_system(const Cycle& cycle, const std::vector<Scalar>& rhs);
PortfolioPosition solve_cycle_system(const Cycle& cycle, const StateSet& states, const Strategy& v);

/// Cycle closed by a non-tree edge: base = that edge's point, then the tree
/// path back to its x-node.
Cycle fundamental_cycle(const Component& component, const CoordinateGraph& graph,
                        const SpanningTree& tree, std::size_t edge);

/// Tests the fundamental cycles of a spanning tree grown from the smallest
/// point; returns the first identifying one.
std::optional<Cycle> find_identifying_cycle(const Component& component);

}  // namespace semistatic
