#include "semistatic/json_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace semistatic::json {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParse, path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& path = "") {
  const Json& a = field(j, key, path);
  if (!a.is_array()) fail(path.empty() ? key : path + "." + key, "expected an array");
  return a;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::size_t to_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<Scalar> to_scalar_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<Scalar> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_scalar(j[i], at(path, i)));
  return out;
}

std::vector<std::vector<Scalar>> to_scalar_grid(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of arrays");
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_scalar_list(j[i], at(path, i)));
  return out;
}

std::size_t index_in(const StateSet& states, const Point& p) {
  auto idx = states.index_of(p);
  if (!idx) throw std::logic_error("point " + to_string(p) + " is not a state");
  return *idx;
}

Json indices(const std::vector<Point>& points, const StateSet& states) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(index_in(states, p));
  return out;
}

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::kParse, source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                       ": invalid JSON (" + e.what() + ")");
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path.string());
}

Scalar to_scalar(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return parse_scalar(j.dump());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
  fail(path, "expected a scalar string or an integer (floats are not exact)");
}

StateSet to_state_set(const Json& j) {
  const Json& pts = array_field(j, "points");
  std::vector<Point> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string path = at("points", i);
    if (!pts[i].is_array() || pts[i].size() != 2) fail(path, "expected a pair [x, y]");
    points.push_back({to_scalar(pts[i][0], path + "[0]"), to_scalar(pts[i][1], path + "[1]")});
  }
  return StateSet::from_points(std::move(points));
}

Strategy to_strategy(const Json& j) { return {to_scalar_list(array_field(j, "values"), "values")}; }

std::vector<Strategy> to_sequence(const Json& j) {
  const Json& seq = array_field(j, "sequence");
  std::vector<Strategy> out;
  for (std::size_t n = 0; n < seq.size(); ++n) out.push_back({to_scalar_list(seq[n], at("sequence", n))});
  return out;
}

mp::Instance to_instance(const Json& j) {
  const std::size_t dates = to_count(field(j, "T", ""), "T");
  const std::size_t stocks = to_count(field(j, "d", ""), "d");
  return mp::Instance(dates, stocks, to_scalar_grid(field(j, "x0", ""), "x0"),
                      to_scalar_grid(field(j, "x1", ""), "x1"));
}

std::vector<Scalar> to_mp_values(const Json& j, const mp::Instance& inst) {
  const Json& values = field(j, "values", "");
  if (!values.is_object()) fail("values", "expected an object keyed by bitstrings");
  const std::size_t rows = std::size_t{1} << inst.bits();
  std::vector<std::optional<Scalar>> slots(rows);
  for (const auto& [key, value] : values.items()) {
    const std::string path = "values." + key;
    if (key.size() != inst.bits()) fail(path, "key must have " + std::to_string(inst.bits()) + " bits");
    mp::MultiIndex idx;
    try {
      idx = mp::MultiIndex::parse(key);
    } catch (const Error& e) {
      fail(path, e.what());
    }
    slots[idx.bits] = to_scalar(value, path);
  }
  std::vector<Scalar> out;
  out.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!slots[r]) fail("values", "missing key " + mp::MultiIndex{inst.bits(), r}.to_string());
    out.push_back(*slots[r]);
  }
  return out;
}

MeasureInput to_measure_input(const Json& j) {
  MeasureInput in;
  const Json& factors = array_field(j, "factors");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string path = at("factors", i);
    mp::FiniteProductMeasure::Factor f;
    f.atoms = to_scalar_list(field(factors[i], "atoms", path), path + ".atoms");
    f.weights = to_scalar_list(field(factors[i], "weights", path), path + ".weights");
    in.measure.factors.push_back(std::move(f));
  }
  in.set = to_scalar_grid(field(j, "set", ""), "set");
  return in;
}

Json from_scalar(const Scalar& s) { return to_string(s); }

Json from_scalars(const std::vector<Scalar>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json from_map(const ScalarMap& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[to_string(k)] = to_string(v);
  return out;
}

Json from_point(const Point& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

Json points_json(const StateSet& states) {
  Json out = Json::array();
  for (const auto& p : states) out.push_back(from_point(p));
  return out;
}

Json position_json(const PortfolioPosition& position) {
  return Json{{"h", from_map(position.h)}, {"g", from_map(position.g)}};
}

Json cycle_json(const Cycle& cycle, const StateSet& states) {
  return Json{{"base", index_in(states, cycle.base())},
              {"interior", indices(cycle.interior, states)},
              {"determinant", to_string(cycle_determinant(cycle))}};
}

Json factorization_json(const Factorization& f) {
  return Json{{"anchor_x", to_string(f.anchor_x)}, {"a", from_map(f.a)}, {"b", from_map(f.b)}};
}

Json components_json(const std::vector<Component>& comps, const StateSet& states) {
  Json out = Json::array();
  for (const auto& c : comps) {
    out.push_back(Json{{"id", c.id},
                       {"points", indices(c.points, states)},
                       {"proj_x", from_scalars(c.proj_x)},
                       {"proj_y", from_scalars(c.proj_y)}});
  }
  return out;
}

Json report_json(const DecompositionReport& report, const StateSet& states) {
  Json blocks = Json::array();
  for (const auto& b : report.blocks) {
    Json block{{"kind", std::string(block_kind_name(b.kind))}};
    if (b.component) block["component"] = *b.component;
    block["points"] = indices(b.points, states);
    if (b.cycle) block["cycle"] = cycle_json(*b.cycle, states);
    if (b.factorization) block["factorization"] = factorization_json(*b.factorization);
    if (b.kind == BlockKind::kOneParameter) {
      block["pinned"] = b.pinned;
      if (b.pinned_by) block["pinned_by"] = index_in(states, *b.pinned_by);
    }
    blocks.push_back(std::move(block));
  }
  Json free = Json::array();
  for (const auto& fp : report.free_parameters) {
    if (fp.kind == FreeParameter::Kind::kFamily) {
      free.push_back(Json{{"kind", "family"}, {"component", *fp.component}});
    } else {
      free.push_back(Json{{"kind", "diagonal_stock"}, {"x", to_string(*fp.x)}});
    }
  }
  return Json{{"points", points_json(states)},
              {"position", position_json(report.position)},
              {"blocks", std::move(blocks)},
              {"free_parameters", std::move(free)},
              {"dof", Json{{"oracle", report.dof_oracle}, {"formula", report.dof_formula}}},
              {"discrepancy_flag", report.discrepancy_flag}};
}

Json witness_json(const InfeasibilityWitness& witness, const StateSet& states) {
  Json pts = Json::array();
  for (std::size_t i : witness.points) pts.push_back(from_point(states[i]));
  return Json{{"points", witness.points}, {"states", std::move(pts)}, {"reason", witness.reason}};
}

Json limit_json(const LimitReport& report, const StateSet& states) {
  Json blocks = Json::array();
  for (const auto& b : report.blocks) {
    Json block{{"kind", std::string(block_kind_name(b.kind))}};
    if (b.component) block["component"] = *b.component;
    block["points"] = indices(b.points, states);
    block["unique"] = b.unique;
    blocks.push_back(std::move(block));
  }
  Json normalized = Json::array();
  for (const auto& p : report.normalized) normalized.push_back(position_json(p));
  return Json{{"points", points_json(states)},
              {"blocks", std::move(blocks)},
              {"normalized", std::move(normalized)},
              {"values_constant", report.values_constant},
              {"positions_constant", report.positions_constant},
              {"values_stable_from", report.values_stable_from},
              {"positions_stable_from", report.positions_stable_from},
              {"final_term", report_json(report.final_term, states)}};
}

Json matrix_json(const ExactMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace semistatic::json
