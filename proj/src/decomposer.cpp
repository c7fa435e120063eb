#include "semistatic/decomposer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <variant>

#include "semistatic/exact_oracle.hpp"

namespace semistatic {

std::string_view block_kind_name(BlockKind kind) noexcept {
  switch (kind) {
    case BlockKind::kIdentifying: return "identifying";
    case BlockKind::kOneParameter: return "one_parameter";
    case BlockKind::kSingleton: return "singleton";
  }
  return "unknown";
}

NotSemistaticError::NotSemistaticError(InfeasibilityWitness witness, std::optional<std::size_t> term)
    : Error(ErrorCode::kNotSemistatic,
            (term ? "term " + std::to_string(*term) + ": " : std::string()) + "not semistatic: " + witness.reason),
      witness_(std::move(witness)),
      term_(term) {}

namespace {

struct Built {
  PortfolioPosition position;
  std::vector<BlockSummary> blocks;
  std::vector<FreeParameter> free_parameters;
};

struct Failure {
  std::vector<Point> points;
  std::string reason;
};

using Attempt = std::variant<Built, Failure>;

const Scalar& value_at(const StateSet& states, const Strategy& v, const Point& p) {
  return v.values[*states.index_of(p)];
}

// Determines h on C^x and g on C^y from h(root_x) by walking a spanning tree:
// each state fixes g(y) from h(x), or h(x) from g(y), since y - x != 0.
void propagate(const Component& c, const StateSet& states, const Strategy& v, const Scalar& root_x,
               const Scalar& root_h, PortfolioPosition& out) {
  CoordinateGraph graph(c);
  SpanningTree tree(graph, graph.x_node(root_x));
  std::vector<Scalar> value(graph.node_count());
  value[tree.root()] = root_h;
  for (std::size_t node : tree.order()) {
    if (node == tree.root()) continue;
    const Point& p = c.points[tree.parent_edge(node)];
    const Scalar& vp = value_at(states, v, p);
    const Scalar& known = value[tree.parent(node)];
    value[node] = graph.is_x_node(node) ? Scalar((vp - known) / p.increment()) : Scalar(vp - known * p.increment());
  }
  for (const auto& x : c.proj_x) out.h[x] = value[graph.x_node(x)];
  for (const auto& y : c.proj_y) out.g[y] = value[graph.y_node(y)];
}

std::optional<Point> first_mismatch(const Component& c, const StateSet& states, const Strategy& v,
                                    const PortfolioPosition& pos) {
  for (const auto& p : c.points) {
    if (evaluate_at(pos, p) != value_at(states, v, p)) return p;
  }
  return std::nullopt;
}

Attempt attempt(const StateSet& states, const Strategy& v) {
  const DiagonalSplit parts = split(states);
  const std::vector<Component> comps = components(parts.off_diagonal);
  const BlockPartition partition = block_partition(states, comps);

  Built built;
  std::vector<BlockSummary> comp_summary(comps.size());
  std::map<Scalar, std::size_t> comp_of_x;
  std::map<Scalar, std::size_t> comp_of_y;

  for (const auto& c : comps) {
    for (const auto& x : c.proj_x) comp_of_x.emplace(x, c.id);
    for (const auto& y : c.proj_y) comp_of_y.emplace(y, c.id);
    BlockSummary& s = comp_summary[c.id];
    s.component = c.id;

    if (auto cycle = find_identifying_cycle(c)) {
      s.kind = BlockKind::kIdentifying;
      const PortfolioPosition on_cycle = solve_cycle_system(*cycle, states, v);
      propagate(c, states, v, cycle->base().x, on_cycle.h.at(cycle->base().x), built.position);
      s.cycle = std::move(*cycle);
    } else {
      s.kind = BlockKind::kOneParameter;
      auto outcome = factor_increments(c, c.proj_x.front());
      auto* f = std::get_if<Factorization>(&outcome);
      if (f == nullptr) throw std::logic_error("component without identifying cycle failed to factor");
      propagate(c, states, v, f->anchor_x, Scalar(0), built.position);
      s.factorization = std::move(*f);
    }
    if (auto bad = first_mismatch(c, states, v, built.position)) {
      return Failure{c.points, "component " + std::to_string(c.id) + " cannot reproduce the value at " +
                                   to_string(*bad)};
    }
  }

  for (const auto& d : parts.diagonal) {
    const Scalar& w = value_at(states, v, d);
    if (auto it = comp_of_y.find(d.y); it != comp_of_y.end()) {
      const Component& c = comps[it->second];
      BlockSummary& s = comp_summary[c.id];
      const Scalar current = built.position.g.at(d.y);
      if (s.kind == BlockKind::kOneParameter && !s.pinned) {
        const Scalar alpha = (current - w) / s.factorization->b.at(d.y);
        built.position = position_family(c, built.position, *s.factorization, alpha);
        s.pinned = true;
        s.pinned_by = d;
      } else if (current != w) {
        std::vector<Point> witness = c.points;
        witness.push_back(d);
        if (s.pinned_by) witness.push_back(*s.pinned_by);
        return Failure{witness, "diagonal state " + to_string(d) + " conflicts with component " +
                                    std::to_string(c.id)};
      }
    } else {
      built.position.g[d.y] = w;
    }
    if (!comp_of_x.contains(d.x)) {
      built.position.h[d.x] = 0;
      built.free_parameters.push_back({FreeParameter::Kind::kDiagonalStock, std::nullopt, d.x});
    }
  }

  for (const auto& s : comp_summary) {
    if (s.kind == BlockKind::kOneParameter && !s.pinned) {
      built.free_parameters.push_back({FreeParameter::Kind::kFamily, s.component, std::nullopt});
    }
  }
  std::sort(built.free_parameters.begin(), built.free_parameters.end(),
            [](const FreeParameter& a, const FreeParameter& b) {
              if (a.kind != b.kind) return a.kind < b.kind;
              if (a.component != b.component) return a.component < b.component;
              return a.x < b.x;
            });

  for (const auto& block : partition.blocks) {
    if (block.kind == Block::Kind::kComponent) {
      BlockSummary s = comp_summary[*block.component];
      s.points = block.points;
      built.blocks.push_back(std::move(s));
    } else {
      BlockSummary s;
      s.kind = BlockKind::kSingleton;
      s.points = block.points;
      built.blocks.push_back(std::move(s));
    }
  }
  return built;
}

StateSet subset(const StateSet& states, const std::vector<std::size_t>& idx, const Strategy& v, Strategy& sub_v) {
  std::vector<Point> pts;
  sub_v.values.clear();
  for (std::size_t i : idx) {
    pts.push_back(states[i]);
    sub_v.values.push_back(v.values[i]);
  }
  return StateSet::from_points(std::move(pts));
}

// Deletion filter: drop each point whose removal keeps the subset inconsistent.
InfeasibilityWitness minimize(const StateSet& states, const Strategy& v, const Failure& failure) {
  std::vector<std::size_t> idx;
  for (const auto& p : failure.points) idx.push_back(*states.index_of(p));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

  for (std::size_t pos = 0; pos < idx.size();) {
    std::vector<std::size_t> trial = idx;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
    Strategy sub_v;
    StateSet sub = subset(states, trial, v, sub_v);
    if (std::holds_alternative<Failure>(attempt(sub, sub_v))) {
      idx = std::move(trial);
    } else {
      ++pos;
    }
  }
  return {idx, failure.reason};
}

}  // namespace

std::size_t dof_oracle(const StateSet& states) { return nullity(assemble_two_period(states).matrix); }

std::size_t dof_formula(const StateSet& states) {
  const DiagonalSplit parts = split(states);
  const std::vector<Component> comps = components(parts.off_diagonal);
  std::size_t count = block_partition(states, comps).orphan_set.size();
  for (const auto& c : comps) {
    if (!find_identifying_cycle(c)) ++count;
  }
  return count;
}

DecompositionReport decompose(const StateSet& states, const Strategy& v) {
  require_aligned(states, v);
  Attempt result = attempt(states, v);
  if (auto* failure = std::get_if<Failure>(&result)) {
    throw NotSemistaticError(minimize(states, v, *failure));
  }
  Built& built = std::get<Built>(result);
  DecompositionReport report;
  report.position = std::move(built.position);
  report.blocks = std::move(built.blocks);
  report.free_parameters = std::move(built.free_parameters);
  report.dof_oracle = dof_oracle(states);
  report.dof_formula = dof_formula(states);
  report.discrepancy_flag = report.dof_oracle != report.dof_formula;
  return report;
}

SemistaticVerdict is_semistatic(const StateSet& states, const Strategy& v) {
  SemistaticVerdict verdict;
  try {
    verdict.report = decompose(states, v);
    verdict.semistatic = true;
  } catch (const NotSemistaticError& e) {
    verdict.witness = e.witness();
  }
  return verdict;
}

DegreesOfFreedom degrees_of_freedom(const StateSet& states, const Strategy& v) {
  DecompositionReport report = decompose(states, v);
  return {report.dof_oracle, report.dof_formula, report.discrepancy_flag};
}

LimitReport analyze_limit(const StateSet& states, const std::vector<Strategy>& sequence) {
  if (sequence.empty()) throw Error(ErrorCode::kShapeMismatch, "empty strategy sequence");

  std::vector<DecompositionReport> reports;
  reports.reserve(sequence.size());
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    try {
      reports.push_back(decompose(states, sequence[n]));
    } catch (const NotSemistaticError& e) {
      throw NotSemistaticError(e.witness(), n);
    }
  }

  LimitReport out;
  std::vector<PortfolioPosition> positions;
  for (const auto& r : reports) positions.push_back(r.position);

  const std::vector<Component> comps = components(split(states).off_diagonal);
  const auto& free_parameters = reports.back().free_parameters;
  auto stock_is_free = [&](const Scalar& x) {
    return std::any_of(free_parameters.begin(), free_parameters.end(), [&](const FreeParameter& fp) {
      return fp.kind == FreeParameter::Kind::kDiagonalStock && *fp.x == x;
    });
  };
  for (const auto& block : reports.back().blocks) {
    BlockLimit limit{block.kind, block.component, block.points, true};
    if (block.kind == BlockKind::kOneParameter && !block.pinned) {
      positions = normalize_sequence(comps[*block.component], *block.factorization, positions);
      limit.unique = false;
    } else if (block.kind == BlockKind::kSingleton) {
      limit.unique = !stock_is_free(block.points.front().x);
    }
    out.blocks.push_back(std::move(limit));
  }
  for (const auto& fp : free_parameters) {
    if (fp.kind != FreeParameter::Kind::kDiagonalStock) continue;
    for (auto& pos : positions) pos.h[*fp.x] = 0;
  }
  out.normalized = std::move(positions);
  out.final_term = std::move(reports.back());

  const std::size_t n = sequence.size();
  out.values_stable_from = n - 1;
  while (out.values_stable_from > 0 && sequence[out.values_stable_from - 1] == sequence[n - 1]) {
    --out.values_stable_from;
  }
  out.positions_stable_from = n - 1;
  while (out.positions_stable_from > 0 && out.normalized[out.positions_stable_from - 1] == out.normalized[n - 1]) {
    --out.positions_stable_from;
  }
  out.values_constant = out.values_stable_from == 0;
  out.positions_constant = out.positions_stable_from == 0;
  if (out.positions_stable_from > out.values_stable_from) {
    throw std::logic_error("normalized positions differ for identical strategy values");
  }
  return out;
}

}  // namespace semistatic
