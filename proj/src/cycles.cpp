#include "semistatic/cycles.hpp"

#include <stdexcept>

namespace semistatic {

std::vector<Point> Cycle::evaluation_points() const {
  std::vector<Point> out;
  out.reserve(2 * interior.size());
  for (std::size_t i = 0; i < interior.size(); ++i) {
    out.push_back(interior[i]);
    out.push_back({next_x(i), interior[i].y});
  }
  return out;
}

void validate(const Cycle& cycle) {
  if (cycle.interior.empty()) throw Error(ErrorCode::kInvalidCycle, "cycle needs at least one point");
  for (const auto& p : cycle.evaluation_points()) {
    if (p.on_diagonal()) {
      throw Error(ErrorCode::kInvalidCycle, "cycle passes through diagonal point " + to_string(p));
    }
  }
}

Scalar cycle_determinant(const Cycle& cycle) {
  validate(cycle);
  Scalar direct = 1;
  Scalar shifted = 1;
  for (std::size_t i = 0; i < cycle.length(); ++i) {
    direct *= cycle.interior[i].y - cycle.interior[i].x;
    shifted *= cycle.interior[i].y - cycle.next_x(i);
  }
  return direct - shifted;
}

bool is_identifying(const Cycle& cycle) { return cycle_determinant(cycle) != 0; }

ExactMatrix cycle_matrix(const Cycle& cycle) {
  validate(cycle);
  const std::size_t k = cycle.length();
  ExactMatrix m(2 * k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    const Point& p = cycle.interior[i];
    m(2 * i, 2 * i) = p.y - p.x;
    m(2 * i, 2 * i + 1) = 1;
    m(2 * i + 1, 2 * i + 1) = 1;
    m(2 * i + 1, 2 * ((i + 1) % k)) = p.y - cycle.next_x(i);
  }
  return m;
}

CycleSystem assemble_cycle_system(const Cycle& cycle, const StateSet& states, const Strategy& v) {
  require_aligned(states, v);
  CycleSystem sys{cycle_matrix(cycle), {}};
  for (const auto& p : cycle.evaluation_points()) {
    auto idx = states.index_of(p);
    if (!idx) throw Error(ErrorCode::kInvalidCycle, "cycle point " + to_string(p) + " is not a state");
    sys.rhs.push_back(v.values[*idx]);
  }
  return sys;
}

namespace {

void assign(ScalarMap& map, const Scalar& key, const Scalar& value, const char* what) {
  auto [it, inserted] = map.try_emplace(key, value);
  if (!inserted && it->second != value) {
    throw Error(ErrorCode::kInconsistent, std::string("cycle assigns two values to ") + what + "(" +
                                              to_string(key) + ")");
  }
}

}  // namespace

PortfolioPosition solve_cycle_system(const Cycle& cycle, const std::vector<Scalar>& rhs) {
  const Scalar det = cycle_determinant(cycle);
  const std::size_t k = cycle.length();
  if (rhs.size() != 2 * k) {
    throw Error(ErrorCode::kShapeMismatch, "cycle system needs " + std::to_string(2 * k) + " values");
  }
  if (det == 0) throw Error(ErrorCode::kSingularSystem, "cycle is not identifying");

  // Row pair i gives h_{i+1} = slope_i * h_i + offset_i. Composing once around
  // the cycle yields h_1 = slope * h_1 + offset with slope != 1.
  Scalar slope = 1;
  Scalar offset = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Point& p = cycle.interior[i];
    const Scalar step = p.y - cycle.next_x(i);
    const Scalar a = (p.y - p.x) / step;
    const Scalar b = (rhs[2 * i + 1] - rhs[2 * i]) / step;
    slope *= a;
    offset = a * offset + b;
  }
  std::vector<Scalar> h(k);
  h[0] = offset / (Scalar(1) - slope);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Point& p = cycle.interior[i];
    h[i + 1] = (rhs[2 * i + 1] - rhs[2 * i] + (p.y - p.x) * h[i]) / (p.y - cycle.next_x(i));
  }

  PortfolioPosition out;
  for (std::size_t i = 0; i < k; ++i) {
    const Point& p = cycle.interior[i];
    assign(out.h, p.x, h[i], "h");
    assign(out.g, p.y, Scalar(rhs[2 * i] - (p.y - p.x) * h[i]), "g");
  }
  return out;
}

PortfolioPosition solve_cycle_system(const Cycle& cycle, const StateSet& states, const Strategy& v) {
  validate(cycle);
  return solve_cycle_system(cycle, assemble_cycle_system(cycle, states, v).rhs);
}

Cycle fundamental_cycle(const Component& component, const CoordinateGraph& graph,
                        const SpanningTree& tree, std::size_t edge) {
  if (tree.is_tree_edge(edge)) throw std::invalid_argument("tree edge does not close a cycle");
  const auto [x_node, y_node] = graph.endpoints(edge);
  // y_node -> ... -> x_node through the tree; nodes alternate y, x, y, ..., x.
  const std::vector<std::size_t> back = tree.path(y_node, x_node);
  Cycle cycle;
  cycle.interior.push_back(component.points[edge]);
  for (std::size_t i = 1; i + 1 < back.size(); i += 2) {
    // back[i] is an x-node, back[i + 1] the following y-node.
    const std::size_t x = back[i];
    const std::size_t y = back[i + 1];
    for (const auto& inc : graph.incident(x)) {
      if (inc.neighbour == y) {
        cycle.interior.push_back(component.points[inc.edge]);
        break;
      }
    }
  }
  return cycle;
}

std::optional<Cycle> find_identifying_cycle(const Component& component) {
  if (component.points.size() < 4) return std::nullopt;
  CoordinateGraph graph(component);
  SpanningTree tree(graph, graph.x_node(component.points.front().x));
  for (std::size_t edge : tree.non_tree_edges()) {
    Cycle cycle = fundamental_cycle(component, graph, tree, edge);
    if (is_identifying(cycle)) return cycle;
  }
  return std::nullopt;
}

}  // namespace semistatic
