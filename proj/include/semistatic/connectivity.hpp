#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semistatic/model.hpp"

namespace semistatic {

/// Connected component of the off-diagonal states. Two states are adjacent
/// when they share a coordinate.
struct Component {
  std::size_t id = 0;
  std::vector<Point> points;   // canonical order
  std::vector<Scalar> proj_x;  // sorted C^x
  std::vector<Scalar> proj_y;  // sorted C^y

  bool contains(const Point& p) const;
  bool has_x(const Scalar& x) const;
  bool has_y(const Scalar& y) const;
  std::optional<std::size_t> index_of(const Point& p) const;
};

/// Path from `from` to `to`. The expanded list
///   from, (x1, from.y), (x1, y1), (x2, y1), ..., (xk, yk), (to.x, yk), to
/// changes one coordinate per step; repeated points are allowed.
struct Path {
  Point from;
  Point to;
  std::vector<Point> interior;

  std::vector<Point> expanded() const;
};

struct Block {
  enum class Kind { kComponent, kSingleton };
  Kind kind = Kind::kComponent;
  std::optional<std::size_t> component;  // set for component blocks
  std::vector<Point> points;             // (C^x x C^y) ∩ E, or one diagonal point
};

struct BlockPartition {
  std::vector<Block> blocks;       // component blocks in id order, then singletons
  std::vector<Point> orphan_set;   // diagonal points outside every C^x x C^y
};

/// Components ordered by their smallest point; ids are 0, 1, ...
/// Throws Error(kInvalidInstance) when given a diagonal point.
std::vector<Component> components(std::span<const Point> off_diagonal);

/// Shortest path by breadth-first search, neighbours visited in canonical
/// order. Throws Error(kNotConnected) unless both points lie in the component.
Path find_path(const Point& from, const Point& to, const Component& component);

BlockPartition block_partition(const StateSet& states, std::span<const Component> comps);

/// The component as a bipartite graph: node i < proj_x.size() is the x-value
/// proj_x[i], node proj_x.size() + j is the y-value proj_y[j]; edge e joins
/// the two coordinates of points[e].
class CoordinateGraph {
 public:
  explicit CoordinateGraph(const Component& component);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t x_node(const Scalar& x) const;
  std::size_t y_node(const Scalar& y) const;
  bool is_x_node(std::size_t node) const noexcept { return node < x_count_; }
  std::pair<std::size_t, std::size_t> endpoints(std::size_t edge) const { return edges_[edge]; }

  struct Incidence {
    std::size_t edge;
    std::size_t neighbour;
  };
  const std::vector<Incidence>& incident(std::size_t node) const { return adjacency_[node]; }

 private:
  std::size_t x_count_;
  std::vector<Scalar> xs_;
  std::vector<Scalar> ys_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  // (x node, y node)
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Breadth-first spanning tree of a connected CoordinateGraph.
class SpanningTree {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  SpanningTree(const CoordinateGraph& graph, std::size_t root);

  std::size_t root() const noexcept { return root_; }
  /// Nodes in discovery order, root first.
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t parent(std::size_t node) const { return parent_[node]; }
  std::size_t parent_edge(std::size_t node) const { return parent_edge_[node]; }
  bool is_tree_edge(std::size_t edge) const { return tree_edge_[edge]; }
  std::vector<std::size_t> non_tree_edges() const;

  /// Node sequence of the tree path from a to b, both ends included.
  std::vector<std::size_t> path(std::size_t a, std::size_t b) const;

 private:
  std::size_t root_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::size_t> depth_;
  std::vector<bool> tree_edge_;
};

}  // namespace semistatic
