#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semistatic/errors.hpp"
#include "semistatic/scalar.hpp"

namespace semistatic {

/// A market state: date-1 price x and date-2 price y.
struct Point {
  Scalar x;
  Scalar y;

  bool on_diagonal() const { return x == y; }
  /// The price increment y - x.
  Scalar increment() const { return y - x; }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (a.x < b.x) return std::strong_ordering::less;
    if (b.x < a.x) return std::strong_ordering::greater;
    if (a.y < b.y) return std::strong_ordering::less;
    if (b.y < a.y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

std::string to_string(const Point& p);

/// Finite, duplicate-free set of states kept in lexicographic (x, y) order.
/// Every report indexes points by this canonical order.
class StateSet {
 public:
  StateSet() = default;

  /// Sorts the input; throws Error(kDuplicatePoint) on repeats.
  static StateSet from_points(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  std::optional<std::size_t> index_of(const Point& p) const;
  bool contains(const Point& p) const { return index_of(p).has_value(); }

  /// Sorted distinct x-values (E^x) and y-values (E^y).
  std::vector<Scalar> xs() const;
  std::vector<Scalar> ys() const;

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::vector<Point> points_;
};

struct DiagonalSplit {
  std::vector<Point> diagonal;      // x == y
  std::vector<Point> off_diagonal;  // x != y
};

DiagonalSplit split(const StateSet& states);

/// Payoff values aligned with the canonical order of a StateSet.
struct Strategy {
  std::vector<Scalar> values;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

using ScalarMap = std::map<Scalar, Scalar>;

/// Stock position h on E^x and option position g on E^y.
struct PortfolioPosition {
  ScalarMap h;
  ScalarMap g;

  friend bool operator==(const PortfolioPosition&, const PortfolioPosition&) = default;
};

/// v(x, y) = h(x) (y - x) + g(y) at every point of the set.
/// Throws Error(kMissingPosition) when h or g lacks a needed value.
Strategy evaluate(const PortfolioPosition& position, const StateSet& states);

/// Value of a single point; same contract as evaluate.
Scalar evaluate_at(const PortfolioPosition& position, const Point& p);

/// Throws Error(kShapeMismatch) unless v has one value per point.
void require_aligned(const StateSet& states, const Strategy& v);

}  // namespace semistatic
