#include "semistatic/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "semistatic/json_io.hpp"

namespace semistatic::cli {

namespace {

using json::Json;

struct Result {
  Json report;
  int status = kExitOk;
  std::string csv;  // filled when a table was requested
};

using Handler = std::function<Result(const std::vector<std::string>& files, bool csv)>;

struct Command {
  std::size_t min_inputs;
  std::size_t max_inputs;
  bool per_file;  // one input per report; several inputs run as a batch
  bool csv;
  Handler handler;
};

std::string csv_table(const std::string& prefix, const PortfolioPosition& p) {
  std::string out;
  for (const auto& [x, v] : p.h) out += prefix + "h," + to_string(x) + "," + to_string(v) + "\n";
  for (const auto& [y, v] : p.g) out += prefix + "g," + to_string(y) + "," + to_string(v) + "\n";
  return out;
}

Json labelled(const std::vector<PositionUnknown>& unknowns, const std::vector<Scalar>& values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < unknowns.size(); ++i) out[unknowns[i].label()] = to_string(values[i]);
  return out;
}

Result decompose_cmd(const std::vector<std::string>& files, bool csv) {
  const StateSet states = json::to_state_set(json::read_file(files[0]));
  const Strategy v = json::to_strategy(json::read_file(files[1]));
  require_aligned(states, v);
  Result r;
  try {
    const DecompositionReport report = decompose(states, v);
    r.report = json::report_json(report, states);
    r.report["semistatic"] = true;
    if (csv) r.csv = "function,at,value\n" + csv_table("", report.position);
  } catch (const NotSemistaticError& e) {
    r.report = Json{{"points", json::points_json(states)},
                    {"semistatic", false},
                    {"witness", json::witness_json(e.witness(), states)}};
    r.status = kExitNegative;
    if (csv) r.csv = "function,at,value\n";
  }
  return r;
}

Result check_cmd(const std::vector<std::string>& files, bool) {
  const StateSet states = json::to_state_set(json::read_file(files[0]));
  const Strategy v = json::to_strategy(json::read_file(files[1]));
  require_aligned(states, v);
  const SemistaticVerdict verdict = is_semistatic(states, v);
  const SolveOutcome oracle = solve(assemble_two_period(states).matrix, v.values);
  const bool consistent = std::holds_alternative<Solution>(oracle);
  if (consistent != verdict.semistatic) {
    throw std::logic_error("decomposer and brute-force system disagree on this instance");
  }
  Result r;
  r.report = Json{{"points", json::points_json(states)}, {"semistatic", verdict.semistatic}};
  if (verdict.semistatic) {
    r.report["position"] = json::position_json(verdict.report->position);
  } else {
    r.report["witness"] = json::witness_json(*verdict.witness, states);
    r.report["certificate"] = json::from_scalars(std::get<Inconsistency>(oracle).certificate);
    r.status = kExitNegative;
  }
  return r;
}

Result dof_cmd(const std::vector<std::string>& files, bool) {
  const StateSet states = json::to_state_set(json::read_file(files[0]));
  const std::size_t oracle = dof_oracle(states);
  const std::size_t formula = dof_formula(states);
  Result r;
  r.report = Json{{"points", json::points_json(states)},
                  {"dof", Json{{"oracle", oracle}, {"formula", formula}}},
                  {"discrepancy_flag", oracle != formula}};
  return r;
}

Result limits_cmd(const std::vector<std::string>& files, bool csv) {
  const StateSet states = json::to_state_set(json::read_file(files[0]));
  const std::vector<Strategy> sequence = json::to_sequence(json::read_file(files[1]));
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    if (sequence[n].values.size() != states.size()) {
      throw Error(ErrorCode::kParse, "sequence[" + std::to_string(n) + "]: expected " +
                                         std::to_string(states.size()) + " values");
    }
  }
  Result r;
  if (csv) r.csv = "term,function,at,value\n";
  try {
    const LimitReport report = analyze_limit(states, sequence);
    r.report = json::limit_json(report, states);
    r.report["semistatic"] = true;
    for (std::size_t n = 0; csv && n < report.normalized.size(); ++n) {
      r.csv += csv_table(std::to_string(n) + ",", report.normalized[n]);
    }
  } catch (const NotSemistaticError& e) {
    r.report = Json{{"points", json::points_json(states)},
                    {"semistatic", false},
                    {"term", *e.term()},
                    {"witness", json::witness_json(e.witness(), states)}};
    r.status = kExitNegative;
  }
  return r;
}

Json instance_header(const mp::Instance& inst) {
  const mp::Counts c = mp::counts(inst.dates(), inst.stocks());
  return Json{{"T", inst.dates()}, {"d", inst.stocks()}, {"rows", c.rows.get_str()}, {"cols", c.cols.get_str()}};
}

Result mp_build_cmd(const std::vector<std::string>& files, bool) {
  const mp::Instance inst = json::to_instance(json::read_file(files[0]));
  const mp::SystemMatrix sys = mp::build_system(inst);
  Result r;
  r.report = instance_header(inst);
  Json rows = Json::array();
  for (const auto& label : sys.row_labels) rows.push_back(label.to_string());
  Json cols = Json::array();
  for (const auto& label : sys.col_labels) cols.push_back(label.label());
  Json cube = Json::array();
  for (const auto& point : mp::cuboid(inst)) cube.push_back(json::from_scalars(point));
  r.report["row_labels"] = std::move(rows);
  r.report["col_labels"] = std::move(cols);
  r.report["cuboid"] = std::move(cube);
  r.report["matrix"] = json::matrix_json(sys.matrix);
  return r;
}

Result mp_rank_cmd(const std::vector<std::string>& files, bool) {
  const mp::Instance inst = json::to_instance(json::read_file(files[0]));
  const mp::RankReport rank = mp::verify_full_rank(inst);
  Result r;
  r.report = instance_header(inst);
  r.report["rank"] = rank.rank;
  r.report["full_column_rank"] = rank.full;
  if (!rank.full) r.status = kExitNegative;
  return r;
}

Result mp_det_cmd(const std::vector<std::string>& files, bool) {
  const mp::Instance inst = json::to_instance(json::read_file(files[0]));
  const Scalar formula = mp::det_formula_d1(inst);
  const Scalar exact = determinant(mp::build_system(inst).matrix);
  Result r;
  r.report = instance_header(inst);
  r.report["formula"] = to_string(formula);
  r.report["determinant"] = to_string(exact);
  r.report["equal"] = formula == exact;
  if (formula != exact) r.status = kExitNegative;
  return r;
}

Result mp_recover_cmd(const std::vector<std::string>& files, bool csv) {
  const mp::Instance inst = json::to_instance(json::read_file(files[0]));
  const std::vector<Scalar> values = json::to_mp_values(json::read_file(files[1]), inst);
  const std::vector<mp::Variable> vars = mp::variables(inst);
  Result r;
  r.report = instance_header(inst);
  const mp::RecoveryOutcome outcome = mp::recover_positions(inst, values);
  if (const auto* p = std::get_if<mp::Positions>(&outcome)) {
    Json positions = Json::object();
    if (csv) r.csv = "variable,value\n";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      positions[vars[i].label()] = to_string(p->values[i]);
      if (csv) r.csv += "\"" + vars[i].label() + "\"," + to_string(p->values[i]) + "\n";
    }
    r.report["consistent"] = true;
    r.report["positions"] = std::move(positions);
  } else {
    const auto& cert = std::get<mp::Inconsistent>(outcome).certificate;
    Json weights = Json::object();
    for (std::size_t row = 0; row < cert.size(); ++row) {
      if (cert[row] != 0) weights[mp::MultiIndex{inst.bits(), row}.to_string()] = to_string(cert[row]);
    }
    r.report["consistent"] = false;
    r.report["certificate"] = std::move(weights);
    r.status = kExitNegative;
    if (csv) r.csv = "variable,value\n";
  }
  return r;
}

Result mp_anchor_cmd(const std::vector<std::string>& files, bool) {
  const json::MeasureInput in = json::to_measure_input(json::read_file(files[0]));
  const auto anchors = mp::anchor_search(in.measure, in.set);
  Json list = Json::array();
  for (const auto& a : anchors) list.push_back(json::from_scalars(a));
  Result r;
  r.report = Json{{"set_measure", to_string(in.measure.measure(in.set))},
                  {"anchors", std::move(list)},
                  {"anchor_measure", to_string(in.measure.measure(anchors))}};
  return r;
}

Result oracle_cmd(const std::vector<std::string>& files, bool) {
  const StateSet states = json::to_state_set(json::read_file(files[0]));
  const TwoPeriodSystem sys = assemble_two_period(states);
  Json unknowns = Json::array();
  for (const auto& u : sys.unknowns) unknowns.push_back(u.label());
  Result r;
  r.report = Json{{"points", json::points_json(states)},
                  {"unknowns", std::move(unknowns)},
                  {"matrix", json::matrix_json(sys.matrix)},
                  {"rank", rank(sys.matrix)},
                  {"nullity", nullity(sys.matrix)}};
  if (files.size() < 2) return r;

  const Strategy v = json::to_strategy(json::read_file(files[1]));
  require_aligned(states, v);
  const SolveOutcome outcome = solve(sys.matrix, v.values);
  if (const auto* sol = std::get_if<Solution>(&outcome)) {
    Json basis = Json::array();
    for (const auto& vec : sol->nullspace) basis.push_back(labelled(sys.unknowns, vec));
    r.report["consistent"] = true;
    r.report["particular"] = labelled(sys.unknowns, sol->particular);
    r.report["nullspace"] = std::move(basis);
  } else {
    r.report["consistent"] = false;
    r.report["certificate"] = json::from_scalars(std::get<Inconsistency>(outcome).certificate);
    r.status = kExitNegative;
  }
  return r;
}

const std::map<std::string, Command, std::less<>>& commands() {
  static const std::map<std::string, Command, std::less<>> table{
      {"decompose", {2, 2, false, true, decompose_cmd}},
      {"check", {2, 2, false, false, check_cmd}},
      {"dof", {1, 1, true, false, dof_cmd}},
      {"limits", {2, 2, false, true, limits_cmd}},
      {"mp-build", {1, 1, true, false, mp_build_cmd}},
      {"mp-rank", {1, 1, true, false, mp_rank_cmd}},
      {"mp-det", {1, 1, true, false, mp_det_cmd}},
      {"mp-recover", {2, 2, false, true, mp_recover_cmd}},
      {"mp-anchor", {1, 1, true, false, mp_anchor_cmd}},
      {"oracle", {1, 2, false, false, oracle_cmd}},
  };
  return table;
}

Json error_json(ErrorCode code, const std::string& message) {
  return Json{{"error", Json{{"code", std::string(error_code_name(code))}, {"message", message}}}};
}

// Runs one invocation of a handler, turning library errors into exit 2.
Result guarded(const Command& cmd, const std::vector<std::string>& files, bool csv, std::ostream& err,
               std::mutex& err_lock) {
  auto report_error = [&](const std::string& text, Json body) {
    std::lock_guard<std::mutex> lock(err_lock);
    err << "error: " << text << "\n";
    return Result{std::move(body), kExitError, {}};
  };
  try {
    return cmd.handler(files, csv);
  } catch (const Error& e) {
    return report_error(std::string(error_code_name(e.code())) + ": " + e.what(), error_json(e.code(), e.what()));
  } catch (const std::exception& e) {
    return report_error(std::string("internal: ") + e.what(), Json{{"error", Json{{"code", "internal"},
                                                                                  {"message", e.what()}}}});
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& [name, cmd] : commands()) out.push_back(name);
    return out;
  }();
  return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto it = commands().find(config.command);
  if (it == commands().end()) {
    err << "usage: unknown command '" << config.command << "'\n";
    return kExitError;
  }
  const Command& cmd = it->second;
  const std::size_t n = config.inputs.size();
  const bool batch = cmd.per_file && n > 1;
  if (n < cmd.min_inputs || (!batch && n > cmd.max_inputs)) {
    err << "usage: " << config.command << " takes " << cmd.min_inputs
        << (cmd.max_inputs > cmd.min_inputs ? "-" + std::to_string(cmd.max_inputs) : std::string()) << " input file"
        << (cmd.max_inputs > 1 ? "s" : "") << (cmd.per_file ? " (or several, one report each)" : "") << ", got " << n
        << "\n";
    return kExitError;
  }
  if (config.csv && !cmd.csv) {
    err << "usage: --csv is only available for decompose, limits and mp-recover\n";
    return kExitError;
  }
  if (config.jobs == 0) {
    err << "usage: --jobs must be at least 1\n";
    return kExitError;
  }

  std::mutex err_lock;
  std::vector<Result> results(batch ? n : 1);
  if (batch) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < n; i = next++) {
        results[i] = guarded(cmd, {config.inputs[i]}, false, err, err_lock);
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(config.jobs, n); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  } else {
    results[0] = guarded(cmd, config.inputs, config.csv, err, err_lock);
  }

  int status = kExitOk;
  for (const auto& r : results) status = std::max(status, r.status);

  std::string text;
  if (config.csv) {
    if (config.meta) text = "# generated_at " + utc_timestamp() + "\n";
    text += results[0].csv;
  } else {
    Json report;
    if (batch) {
      report = Json::array();
      for (std::size_t i = 0; i < n; ++i) {
        report.push_back(Json{{"input", config.inputs[i]}, {"report", std::move(results[i].report)}});
      }
    } else {
      report = std::move(results[0].report);
    }
    if (config.meta) {
      report = Json{{"meta", Json{{"command", config.command},
                                  {"inputs", config.inputs},
                                  {"generated_at", utc_timestamp()}}},
                    {"report", std::move(report)}};
    }
    text = report.dump(2) + "\n";
  }

  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write " << config.output << "\n";
      return kExitError;
    }
  }
  return status;
}

}  // namespace semistatic::cli
