#include "semistatic/multi_period.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "semistatic/errors.hpp"

namespace semistatic::mp {

namespace {

std::size_t pow2(std::size_t e) { return std::size_t{1} << e; }

// Number of stock columns for dates t+1..T-1 (1-based t).
std::size_t stock_offset(const Instance& inst, std::size_t date) {
  std::size_t offset = 0;
  for (std::size_t s = date + 1; s <= inst.dates() - 1; ++s) offset += inst.stocks() * pow2(inst.stocks() * s);
  return offset;
}

std::size_t stock_column_count(const Instance& inst) { return stock_offset(inst, 0); }

Scalar power(const Scalar& base, unsigned long exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Scalar out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

Instance::Instance(std::size_t dates, std::size_t stocks, std::vector<std::vector<Scalar>> x0,
                   std::vector<std::vector<Scalar>> x1)
    : dates_(dates), stocks_(stocks), x0_(std::move(x0)), x1_(std::move(x1)) {
  if (dates_ < 2) throw Error(ErrorCode::kInvalidInstance, "need T >= 2 dates");
  if (stocks_ < 1) throw Error(ErrorCode::kInvalidInstance, "need d >= 1 stocks");
  if (dates_ * stocks_ > kMaxBits) {
    throw Error(ErrorCode::kSizeLimit, "d*T = " + std::to_string(dates_ * stocks_) + " exceeds " +
                                           std::to_string(kMaxBits) + " (2^" + std::to_string(kMaxBits) +
                                           " rows)");
  }
  auto check_shape = [&](const std::vector<std::vector<Scalar>>& m, const char* name) {
    if (m.size() != dates_) {
      throw Error(ErrorCode::kInvalidInstance, std::string(name) + " must have " + std::to_string(dates_) + " rows");
    }
    for (std::size_t t = 0; t < dates_; ++t) {
      if (m[t].size() != stocks_) {
        throw Error(ErrorCode::kInvalidInstance, std::string(name) + "[" + std::to_string(t) + "] must have " +
                                                     std::to_string(stocks_) + " entries");
      }
    }
  };
  check_shape(x0_, "x0");
  check_shape(x1_, "x1");
  for (std::size_t t = 0; t < dates_; ++t) {
    for (std::size_t j = 0; j < stocks_; ++j) {
      if (x0_[t][j] == x1_[t][j]) {
        throw Error(ErrorCode::kInvalidInstance, "x0 and x1 coincide at date " + std::to_string(t + 1) +
                                                     ", stock " + std::to_string(j + 1));
      }
    }
  }
}

Scalar Instance::increment(std::size_t t, std::size_t j, unsigned k, unsigned l) const {
  return price(t + 1, j, k) - price(t, j, l);
}

Scalar Instance::gap(std::size_t t, std::size_t j) const { return x0_[t][j] - x1_[t][j]; }

std::string MultiIndex::to_string() const {
  std::string out(length, '0');
  for (std::size_t i = 0; i < length; ++i) out[i] = bit(i) ? '1' : '0';
  return out;
}

MultiIndex MultiIndex::parse(const std::string& text) {
  if (text.size() > 63) throw Error(ErrorCode::kParse, "multi-index '" + text + "' is too long");
  MultiIndex out{text.size(), 0};
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorCode::kParse, "multi-index '" + text + "' is not a bitstring");
    out.bits = (out.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return out;
}

Counts counts(std::size_t dates, std::size_t stocks) {
  if (dates < 2 || stocks < 1) throw Error(ErrorCode::kInvalidInstance, "need T >= 2 and d >= 1");
  Counts c;
  mpz_ui_pow_ui(c.rows.get_mpz_t(), 2, static_cast<unsigned long>(dates * stocks));
  Integer block;
  mpz_ui_pow_ui(block.get_mpz_t(), 2, static_cast<unsigned long>(stocks));
  c.cols = Integer(stocks) * (c.rows - 1) / (block - 1) + 1;
  return c;
}

std::string Variable::label() const {
  if (kind == Kind::kStock) {
    return "h_" + std::to_string(date) + "," + std::to_string(stock) + "(" + history.to_string() + ")";
  }
  return "g_" + std::to_string(stock) + "(x" + std::to_string(corner) + ")";
}

std::size_t stock_column(const Instance& inst, std::size_t date, const MultiIndex& history, std::size_t stock) {
  return stock_offset(inst, date) + static_cast<std::size_t>(history.bits) * inst.stocks() + (stock - 1);
}

std::size_t option_column(const Instance& inst, std::size_t stock, unsigned corner) {
  const std::size_t base = stock_column_count(inst);
  if (stock == 1) return base + corner;
  if (corner != 1) throw std::invalid_argument("g_j(x0) is normalised to zero for j >= 2");
  return base + stock;
}

std::vector<Variable> variables(const Instance& inst) {
  const std::size_t d = inst.stocks();
  std::vector<Variable> out;
  for (std::size_t t = inst.dates() - 1; t >= 1; --t) {
    for (std::uint64_t eps = 0; eps < pow2(d * t); ++eps) {
      for (std::size_t j = 1; j <= d; ++j) {
        out.push_back({Variable::Kind::kStock, t, j, MultiIndex{d * t, eps}, 0});
      }
    }
  }
  out.push_back({Variable::Kind::kOption, inst.dates(), 1, {}, 0});
  for (std::size_t j = 1; j <= d; ++j) out.push_back({Variable::Kind::kOption, inst.dates(), j, {}, 1});
  return out;
}

std::vector<std::vector<Scalar>> cuboid(const Instance& inst) {
  const std::size_t n = inst.bits();
  std::vector<std::vector<Scalar>> out;
  out.reserve(pow2(n));
  for (std::uint64_t r = 0; r < pow2(n); ++r) {
    MultiIndex eps{n, r};
    std::vector<Scalar> point;
    point.reserve(n);
    for (std::size_t t = 0; t < inst.dates(); ++t)
      for (std::size_t j = 0; j < inst.stocks(); ++j) point.push_back(inst.price(t, j, eps.bit(t * inst.stocks() + j)));
    out.push_back(std::move(point));
  }
  return out;
}

SystemMatrix build_system(const Instance& inst) {
  const std::size_t d = inst.stocks();
  const std::size_t T = inst.dates();
  SystemMatrix sys;
  sys.col_labels = variables(inst);
  sys.matrix = ExactMatrix(pow2(inst.bits()), sys.col_labels.size());
  for (std::uint64_t r = 0; r < pow2(inst.bits()); ++r) {
    const MultiIndex eps{inst.bits(), r};
    sys.row_labels.push_back(eps);
    for (std::size_t t = 1; t < T; ++t) {
      const MultiIndex history = eps.prefix(d * t);
      for (std::size_t j = 1; j <= d; ++j) {
        const unsigned now = eps.bit((t - 1) * d + (j - 1));
        const unsigned next = eps.bit(t * d + (j - 1));
        sys.matrix(r, stock_column(inst, t, history, j)) = inst.increment(t - 1, j - 1, next, now);
      }
    }
    sys.matrix(r, option_column(inst, 1, eps.bit((T - 1) * d))) = 1;
    for (std::size_t j = 2; j <= d; ++j) {
      if (eps.bit((T - 1) * d + (j - 1))) sys.matrix(r, option_column(inst, j, 1)) = 1;
    }
  }
  return sys;
}

RankReport verify_full_rank(const Instance& inst) {
  const SystemMatrix sys = build_system(inst);
  RankReport out;
  out.rank = rank(sys.matrix);
  out.columns = sys.matrix.cols();
  out.full = out.rank == out.columns;
  return out;
}

Scalar det_formula_d1(const Instance& inst) {
  if (inst.stocks() != 1) {
    throw Error(ErrorCode::kNotSquare, "closed-form determinant needs d = 1, got d = " + std::to_string(inst.stocks()));
  }
  const std::size_t T = inst.dates();
  // Sign is -1 for every T under the row/column order used here; the
  // alternating (-1)^{T-1} disagrees with elimination for odd T.
  Scalar det = -1;
  for (std::size_t t = 1; t <= T - 1; ++t) det *= power(inst.gap(t - 1, 0), pow2(t - 1));
  det *= power(inst.gap(T - 1, 0), pow2(T - 1) - 1);
  return det;
}

std::vector<Scalar> forward_evaluate(const Instance& inst, const Positions& positions) {
  const std::size_t d = inst.stocks();
  const std::size_t T = inst.dates();
  const std::size_t expected = variables(inst).size();
  if (positions.values.size() != expected) {
    throw Error(ErrorCode::kShapeMismatch, "positions need " + std::to_string(expected) + " values");
  }
  std::vector<Scalar> out;
  out.reserve(pow2(inst.bits()));
  for (std::uint64_t r = 0; r < pow2(inst.bits()); ++r) {
    const MultiIndex eps{inst.bits(), r};
    Scalar value = 0;
    for (std::size_t t = 1; t < T; ++t) {
      for (std::size_t j = 1; j <= d; ++j) {
        const Scalar& hold = positions.values[stock_column(inst, t, eps.prefix(d * t), j)];
        const Scalar& from = inst.price(t - 1, j - 1, eps.bit((t - 1) * d + (j - 1)));
        const Scalar& to = inst.price(t, j - 1, eps.bit(t * d + (j - 1)));
        value += hold * (to - from);
      }
    }
    value += positions.values[option_column(inst, 1, eps.bit((T - 1) * d))];
    for (std::size_t j = 2; j <= d; ++j) {
      if (eps.bit((T - 1) * d + (j - 1))) value += positions.values[option_column(inst, j, 1)];
    }
    out.push_back(value);
  }
  return out;
}

RecoveryOutcome recover_positions(const Instance& inst, const std::vector<Scalar>& values) {
  const SystemMatrix sys = build_system(inst);
  if (values.size() != sys.matrix.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "V needs " + std::to_string(sys.matrix.rows()) + " values, got " +
                                               std::to_string(values.size()));
  }
  SolveOutcome outcome = solve(sys.matrix, values);
  if (auto* bad = std::get_if<Inconsistency>(&outcome)) return Inconsistent{std::move(bad->certificate)};
  auto& sol = std::get<Solution>(outcome);
  if (!sol.nullspace.empty()) throw std::logic_error("system matrix is rank deficient");
  return Positions{std::move(sol.particular)};
}

void FiniteProductMeasure::validate() const {
  if (factors.empty()) throw Error(ErrorCode::kInvalidInstance, "product measure needs at least one factor");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Factor& f = factors[i];
    const std::string where = "factor " + std::to_string(i);
    if (f.atoms.size() != f.weights.size() || f.atoms.empty()) {
      throw Error(ErrorCode::kInvalidInstance, where + ": atoms and weights must be nonempty and aligned");
    }
    std::set<Scalar> seen(f.atoms.begin(), f.atoms.end());
    if (seen.size() != f.atoms.size()) throw Error(ErrorCode::kInvalidInstance, where + ": duplicate atom");
    Scalar total = 0;
    for (const auto& w : f.weights) {
      if (w < 0) throw Error(ErrorCode::kInvalidInstance, where + ": negative weight");
      total += w;
    }
    if (total != 1) throw Error(ErrorCode::kInvalidInstance, where + ": weights sum to " + semistatic::to_string(total));
  }
}

Scalar FiniteProductMeasure::weight(const std::vector<Scalar>& point) const {
  if (point.size() != factors.size()) return 0;
  Scalar w = 1;
  for (std::size_t i = 0; i < factors.size() && w != 0; ++i) {
    const Factor& f = factors[i];
    Scalar wi = 0;
    for (std::size_t a = 0; a < f.atoms.size(); ++a) {
      if (f.atoms[a] == point[i]) wi = f.weights[a];
    }
    w *= wi;
  }
  return w;
}

Scalar FiniteProductMeasure::measure(const std::vector<std::vector<Scalar>>& set) const {
  std::set<std::vector<Scalar>> distinct(set.begin(), set.end());
  Scalar total = 0;
  for (const auto& p : distinct) total += weight(p);
  return total;
}

std::vector<std::vector<Scalar>> anchor_search(const FiniteProductMeasure& mu,
                                               const std::vector<std::vector<Scalar>>& set) {
  mu.validate();
  const std::size_t n = mu.factors.size();
  std::set<std::vector<Scalar>> members;
  for (const auto& p : set) {
    if (p.size() != n) throw Error(ErrorCode::kInvalidInstance, "point has wrong dimension");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& atoms = mu.factors[i].atoms;
      if (std::find(atoms.begin(), atoms.end(), p[i]) == atoms.end()) {
        throw Error(ErrorCode::kInvalidInstance, "coordinate " + semistatic::to_string(p[i]) +
                                                     " is not an atom of factor " + std::to_string(i));
      }
    }
    members.insert(p);
  }
  const Scalar total = mu.measure(set);
  if (total != 1) {
    throw Error(ErrorCode::kNotFullMeasure, "mu(A) = " + semistatic::to_string(total) + " < 1");
  }

  auto corners_inside = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> corner(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) corner[i] = (mask >> i) & 1U ? b[i] : a[i];
      if (!members.contains(corner)) return false;
    }
    return true;
  };

  std::vector<std::vector<Scalar>> anchors;
  for (const auto& anchor : members) {
    Scalar good = 0;
    for (const auto& x : members) {
      if (corners_inside(anchor, x)) good += mu.weight(x);
    }
    if (good == 1) anchors.push_back(anchor);
  }
  return anchors;
}

}  // namespace semistatic::mp
