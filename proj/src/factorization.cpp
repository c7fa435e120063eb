#include "semistatic/factorization.hpp"

namespace semistatic {

FactorizationOutcome borwein_lewis(const Component& component, const std::vector<Scalar>& c,
                                   const Scalar& anchor_x) {
  if (c.size() != component.points.size()) {
    throw Error(ErrorCode::kShapeMismatch, "factor values must align with the component points");
  }
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (c[e] == 0) throw Error(ErrorCode::kZeroValue, "c vanishes at " + to_string(component.points[e]));
  }
  if (!component.has_x(anchor_x)) {
    throw Error(ErrorCode::kInvalidInstance, "anchor x = " + to_string(anchor_x) + " is not in C^x");
  }

  CoordinateGraph graph(component);
  SpanningTree tree(graph, graph.x_node(anchor_x));
  std::vector<Scalar> value(graph.node_count());
  value[tree.root()] = 1;
  for (std::size_t node : tree.order()) {
    if (node == tree.root()) continue;
    const std::size_t edge = tree.parent_edge(node);
    value[node] = c[edge] / value[tree.parent(node)];
  }

  for (std::size_t edge : tree.non_tree_edges()) {
    const auto [xn, yn] = graph.endpoints(edge);
    if (value[xn] * value[yn] == c[edge]) continue;
    Cycle cycle = fundamental_cycle(component, graph, tree, edge);
    ViolatingCycle witness{cycle, 1, 1};
    for (std::size_t i = 0; i < cycle.length(); ++i) {
      const Point& p = cycle.interior[i];
      const Point q{cycle.next_x(i), p.y};
      witness.direct_product *= c[*component.index_of(p)];
      witness.shifted_product *= c[*component.index_of(q)];
    }
    return witness;
  }

  Factorization f;
  f.anchor_x = anchor_x;
  for (const auto& x : component.proj_x) f.a.emplace(x, value[graph.x_node(x)]);
  for (const auto& y : component.proj_y) f.b.emplace(y, value[graph.y_node(y)]);
  return f;
}

FactorizationOutcome factor_increments(const Component& component, const Scalar& anchor_x) {
  std::vector<Scalar> c;
  c.reserve(component.points.size());
  for (const auto& p : component.points) c.push_back(p.increment());
  return borwein_lewis(component, c, anchor_x);
}

PortfolioPosition position_family(const Component& component, const PortfolioPosition& base,
                                  const Factorization& f, const Scalar& alpha) {
  PortfolioPosition out = base;
  if (alpha == 0) return out;
  for (const auto& x : component.proj_x) {
    auto it = out.h.find(x);
    if (it == out.h.end()) throw Error(ErrorCode::kMissingPosition, "no stock position at x = " + to_string(x));
    it->second += alpha / f.a.at(x);
  }
  for (const auto& y : component.proj_y) {
    auto it = out.g.find(y);
    if (it == out.g.end()) throw Error(ErrorCode::kMissingPosition, "no option position at y = " + to_string(y));
    it->second -= alpha * f.b.at(y);
  }
  return out;
}

std::vector<PortfolioPosition> normalize_sequence(const Component& component, const Factorization& f,
                                                  const std::vector<PortfolioPosition>& positions) {
  std::vector<PortfolioPosition> out;
  out.reserve(positions.size());
  for (const auto& pos : positions) {
    auto anchor = pos.h.find(f.anchor_x);
    if (anchor == pos.h.end()) {
      throw Error(ErrorCode::kMissingPosition, "no stock position at anchor x = " + to_string(f.anchor_x));
    }
    // Shifting by alpha = -h_n(x0) is the family member with h'(x0) = 0.
    out.push_back(position_family(component, pos, f, Scalar(-anchor->second)));
  }
  return out;
}

}  // namespace semistatic
