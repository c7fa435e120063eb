#include "semistatic/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace semistatic {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::size_t sorted_index(const std::vector<Scalar>& sorted, const Scalar& v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) return SpanningTree::kNone;
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

bool Component::contains(const Point& p) const { return index_of(p).has_value(); }

bool Component::has_x(const Scalar& x) const { return std::binary_search(proj_x.begin(), proj_x.end(), x); }

bool Component::has_y(const Scalar& y) const { return std::binary_search(proj_y.begin(), proj_y.end(), y); }

std::optional<std::size_t> Component::index_of(const Point& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points.begin());
}

std::vector<Point> Path::expanded() const {
  std::vector<Point> out;
  out.reserve(2 * interior.size() + 3);
  out.push_back(from);
  Scalar y = from.y;
  for (const auto& p : interior) {
    out.push_back({p.x, y});
    out.push_back(p);
    y = p.y;
  }
  out.push_back({to.x, y});
  out.push_back(to);
  return out;
}

std::vector<Component> components(std::span<const Point> off_diagonal) {
  std::vector<Point> pts(off_diagonal.begin(), off_diagonal.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<Scalar> xs;
  std::vector<Scalar> ys;
  for (const auto& p : pts) {
    if (p.on_diagonal()) {
      throw Error(ErrorCode::kInvalidInstance, "diagonal point " + to_string(p) + " passed to components");
    }
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  // Bipartite incidence: x-values first, then y-values.
  UnionFind uf(xs.size() + ys.size());
  for (const auto& p : pts) uf.unite(sorted_index(xs, p.x), xs.size() + sorted_index(ys, p.y));

  std::map<std::size_t, std::size_t> root_to_id;
  std::vector<Component> out;
  for (const auto& p : pts) {
    std::size_t root = uf.find(sorted_index(xs, p.x));
    auto [it, inserted] = root_to_id.try_emplace(root, out.size());
    if (inserted) {
      out.emplace_back();
      out.back().id = it->second;
    }
    out[it->second].points.push_back(p);
  }
  for (auto& c : out) {
    for (const auto& p : c.points) {
      c.proj_x.push_back(p.x);
      c.proj_y.push_back(p.y);
    }
    std::sort(c.proj_x.begin(), c.proj_x.end());
    c.proj_x.erase(std::unique(c.proj_x.begin(), c.proj_x.end()), c.proj_x.end());
    std::sort(c.proj_y.begin(), c.proj_y.end());
    c.proj_y.erase(std::unique(c.proj_y.begin(), c.proj_y.end()), c.proj_y.end());
  }
  return out;
}

Path find_path(const Point& from, const Point& to, const Component& component) {
  auto start = component.index_of(from);
  auto goal = component.index_of(to);
  if (!start || !goal) {
    throw Error(ErrorCode::kNotConnected,
                to_string(from) + " and " + to_string(to) + " are not both in component " +
                    std::to_string(component.id));
  }
  const auto& pts = component.points;
  const std::size_t n = pts.size();
  std::vector<std::size_t> prev(n, SpanningTree::kNone);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{*start};
  seen[*start] = true;
  while (!queue.empty() && !seen[*goal]) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t nb = 0; nb < n; ++nb) {
      if (seen[nb]) continue;
      if (pts[nb].x != pts[cur].x && pts[nb].y != pts[cur].y) continue;
      seen[nb] = true;
      prev[nb] = cur;
      queue.push_back(nb);
    }
  }
  if (!seen[*goal]) {
    throw Error(ErrorCode::kNotConnected, to_string(from) + " and " + to_string(to) + " are not connected");
  }
  std::vector<Point> chain;
  for (std::size_t cur = *goal; cur != SpanningTree::kNone; cur = prev[cur]) chain.push_back(pts[cur]);
  std::reverse(chain.begin(), chain.end());

  // Re-time the chain so that x-moves and y-moves alternate, starting with an
  // x-move and ending with a y-move; a skipped move repeats the current point.
  std::vector<Point> walk{chain.front()};
  bool expect_x_move = true;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const bool x_move = chain[i].x != chain[i - 1].x;
    if (x_move != expect_x_move) {
      walk.push_back(walk.back());
      expect_x_move = !expect_x_move;
    }
    walk.push_back(chain[i]);
    expect_x_move = !expect_x_move;
  }
  while (walk.size() < 3 || !expect_x_move) {
    walk.push_back(walk.back());
    expect_x_move = !expect_x_move;
  }
  // walk = from, (x1, y), (x1, y1), ..., (xk, yk), (x', yk), to
  Path path{from, to, {}};
  for (std::size_t i = 2; i + 2 < walk.size(); i += 2) path.interior.push_back(walk[i]);
  return path;
}

BlockPartition block_partition(const StateSet& states, std::span<const Component> comps) {
  BlockPartition out;
  std::vector<bool> covered(states.size(), false);
  for (const auto& c : comps) {
    Block block{Block::Kind::kComponent, c.id, {}};
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Point& p = states[i];
      if (c.has_x(p.x) && c.has_y(p.y)) {
        block.points.push_back(p);
        covered[i] = true;
      }
    }
    out.blocks.push_back(std::move(block));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (covered[i]) continue;
    out.orphan_set.push_back(states[i]);
    out.blocks.push_back({Block::Kind::kSingleton, std::nullopt, {states[i]}});
  }
  return out;
}

CoordinateGraph::CoordinateGraph(const Component& component)
    : x_count_(component.proj_x.size()), xs_(component.proj_x), ys_(component.proj_y) {
  adjacency_.resize(xs_.size() + ys_.size());
  edges_.reserve(component.points.size());
  for (std::size_t e = 0; e < component.points.size(); ++e) {
    const Point& p = component.points[e];
    std::size_t a = x_node(p.x);
    std::size_t b = y_node(p.y);
    edges_.emplace_back(a, b);
    adjacency_[a].push_back({e, b});
    adjacency_[b].push_back({e, a});
  }
}

std::size_t CoordinateGraph::x_node(const Scalar& x) const {
  std::size_t i = sorted_index(xs_, x);
  if (i == SpanningTree::kNone) throw std::out_of_range("x-value " + to_string(x) + " not in component");
  return i;
}

std::size_t CoordinateGraph::y_node(const Scalar& y) const {
  std::size_t i = sorted_index(ys_, y);
  if (i == SpanningTree::kNone) throw std::out_of_range("y-value " + to_string(y) + " not in component");
  return x_count_ + i;
}

SpanningTree::SpanningTree(const CoordinateGraph& graph, std::size_t root)
    : root_(root),
      parent_(graph.node_count(), kNone),
      parent_edge_(graph.node_count(), kNone),
      depth_(graph.node_count(), 0),
      tree_edge_(graph.edge_count(), false) {
  std::vector<bool> seen(graph.node_count(), false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    order_.push_back(node);
    for (const auto& [edge, nb] : graph.incident(node)) {
      if (seen[nb]) continue;
      seen[nb] = true;
      parent_[nb] = node;
      parent_edge_[nb] = edge;
      depth_[nb] = depth_[node] + 1;
      tree_edge_[edge] = true;
      queue.push_back(nb);
    }
  }
  if (order_.size() != graph.node_count()) throw std::logic_error("coordinate graph is not connected");
}

std::vector<std::size_t> SpanningTree::non_tree_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < tree_edge_.size(); ++e)
    if (!tree_edge_[e]) out.push_back(e);
  return out;
}

std::vector<std::size_t> SpanningTree::path(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> up_a{a};
  std::vector<std::size_t> up_b{b};
  while (depth_[up_a.back()] > depth_[up_b.back()]) up_a.push_back(parent_[up_a.back()]);
  while (depth_[up_b.back()] > depth_[up_a.back()]) up_b.push_back(parent_[up_b.back()]);
  while (up_a.back() != up_b.back()) {
    up_a.push_back(parent_[up_a.back()]);
    up_b.push_back(parent_[up_b.back()]);
  }
  up_b.pop_back();
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

}  // namespace semistatic
