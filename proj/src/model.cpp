#include "semistatic/model.hpp"

#include <algorithm>

namespace semistatic {

std::string to_string(const Point& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

StateSet StateSet::from_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  auto dup = std::adjacent_find(points.begin(), points.end());
  if (dup != points.end()) {
    throw Error(ErrorCode::kDuplicatePoint, "duplicate state " + to_string(*dup));
  }
  StateSet set;
  set.points_ = std::move(points);
  return set;
}

std::optional<std::size_t> StateSet::index_of(const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

namespace {

std::vector<Scalar> sorted_unique(std::vector<Scalar> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

std::vector<Scalar> StateSet::xs() const {
  std::vector<Scalar> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.x);
  return sorted_unique(std::move(out));
}

std::vector<Scalar> StateSet::ys() const {
  std::vector<Scalar> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.y);
  return sorted_unique(std::move(out));
}

DiagonalSplit split(const StateSet& states) {
  DiagonalSplit out;
  for (const auto& p : states) {
    (p.on_diagonal() ? out.diagonal : out.off_diagonal).push_back(p);
  }
  return out;
}

Scalar evaluate_at(const PortfolioPosition& position, const Point& p) {
  auto h = position.h.find(p.x);
  if (h == position.h.end()) {
    throw Error(ErrorCode::kMissingPosition, "no stock position at x = " + to_string(p.x));
  }
  auto g = position.g.find(p.y);
  if (g == position.g.end()) {
    throw Error(ErrorCode::kMissingPosition, "no option position at y = " + to_string(p.y));
  }
  return Scalar(h->second * p.increment() + g->second);
}

Strategy evaluate(const PortfolioPosition& position, const StateSet& states) {
  Strategy v;
  v.values.reserve(states.size());
  for (const auto& p : states) v.values.push_back(evaluate_at(position, p));
  return v;
}

void require_aligned(const StateSet& states, const Strategy& v) {
  if (v.values.size() != states.size()) {
    throw Error(ErrorCode::kShapeMismatch, "strategy has " + std::to_string(v.values.size()) +
                                               " values for " + std::to_string(states.size()) +
                                               " states");
  }
}

}  // namespace semistatic
