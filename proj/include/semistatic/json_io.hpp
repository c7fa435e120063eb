#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semistatic/decomposer.hpp"
#include "semistatic/exact_oracle.hpp"
#include "semistatic/multi_period.hpp"

namespace semistatic::json {

using Json = nlohmann::ordered_json;

/// Parses a file; syntax errors become Error(kParse) with line and column.
Json read_file(const std::filesystem::path& path);
Json parse_text(const std::string& text, const std::string& source = "<input>");

// Readers. Error messages start with the offending field path, e.g.
// "points[3][1]: ...". Scalars are strings or JSON integers.
Scalar to_scalar(const Json& j, const std::string& path);
StateSet to_state_set(const Json& j);
Strategy to_strategy(const Json& j);
std::vector<Strategy> to_sequence(const Json& j);
mp::Instance to_instance(const Json& j);
/// Values keyed by bitstrings of length d*T, returned in row order.
std::vector<Scalar> to_mp_values(const Json& j, const mp::Instance& inst);

struct MeasureInput {
  mp::FiniteProductMeasure measure;
  std::vector<std::vector<Scalar>> set;
};
MeasureInput to_measure_input(const Json& j);

// Writers.
Json from_scalar(const Scalar& s);
Json from_scalars(const std::vector<Scalar>& values);
Json from_map(const ScalarMap& m);
Json from_point(const Point& p);
Json points_json(const StateSet& states);
Json position_json(const PortfolioPosition& position);
Json cycle_json(const Cycle& cycle, const StateSet& states);
Json factorization_json(const Factorization& f);
Json components_json(const std::vector<Component>& comps, const StateSet& states);
Json report_json(const DecompositionReport& report, const StateSet& states);
Json witness_json(const InfeasibilityWitness& witness, const StateSet& states);
Json limit_json(const LimitReport& report, const StateSet& states);
Json matrix_json(const ExactMatrix& m);

}  // namespace semistatic::json
