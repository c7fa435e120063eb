#pragma once

#include <variant>
#include <vector>

#include "semistatic/connectivity.hpp"
#include "semistatic/cycles.hpp"
#include "semistatic/model.hpp"

namespace semistatic {

/// a(x) b(y) = c(x, y) on a component, normalised by a(anchor_x) = 1.
struct Factorization {
  Scalar anchor_x;
  ScalarMap a;  // on C^x, never zero
  ScalarMap b;  // on C^y, never zero

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Cycle on which prod c(x_j, y_j) != prod c(x_{j+1}, y_j).
struct ViolatingCycle {
  Cycle cycle;
  Scalar direct_product;
  Scalar shifted_product;
};

using FactorizationOutcome = std::variant<Factorization, ViolatingCycle>;

/// Multiplicative decomposition of c (values aligned with component.points).
/// Propagates a and b along a breadth-first spanning tree from anchor_x, then
/// checks every remaining point; the first failure yields its fundamental
/// cycle. Throws Error(kZeroValue) if c vanishes and Error(kInvalidInstance)
/// if anchor_x is not in C^x.
FactorizationOutcome borwein_lewis(const Component& component, const std::vector<Scalar>& c,
                                   const Scalar& anchor_x);

/// borwein_lewis with c(x, y) = y - x.
FactorizationOutcome factor_increments(const Component& component, const Scalar& anchor_x);

/// h_alpha(x) = h(x) + alpha / a(x) on C^x, g_alpha(y) = g(y) - alpha b(y) on
/// C^y; values off the component are copied.
PortfolioPosition position_family(const Component& component, const PortfolioPosition& base,
                                  const Factorization& f, const Scalar& alpha);

/// h'_n(x) = h_n(x) - h_n(x0) / a(x), g'_n(y) = g_n(y) + h_n(x0) b(y) with
/// x0 = f.anchor_x, so that h'_n(x0) = 0. Throws Error(kMissingPosition) when
/// a position lacks a value on C^x or C^y.
std::vector<PortfolioPosition> normalize_sequence(const Component& component, const Factorization& f,
                                                  const std::vector<PortfolioPosition>& positions);

}  // namespace semistatic
