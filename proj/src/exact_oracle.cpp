#include "semistatic/exact_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "semistatic/errors.hpp"

namespace semistatic {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::kShapeMismatch, "ragged matrix: row " + std::to_string(r) + " has " +
                                                 std::to_string(rows[r].size()) + " entries, expected " +
                                                 std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<Scalar> ExactMatrix::multiply(const std::vector<Scalar>& vec) const {
  if (vec.size() != cols_) {
    throw Error(ErrorCode::kShapeMismatch, "vector length " + std::to_string(vec.size()) +
                                               " does not match " + std::to_string(cols_) + " columns");
  }
  std::vector<Scalar> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (a != 0) acc += a * vec[c];
    }
    out[r] = acc;
  }
  return out;
}

std::string PositionUnknown::label() const {
  return (kind == Kind::kStock ? "h(" : "g(") + to_string(at) + ")";
}

TwoPeriodSystem assemble_two_period(const StateSet& states) {
  const auto xs = states.xs();
  const auto ys = states.ys();
  TwoPeriodSystem sys;
  sys.matrix = ExactMatrix(states.size(), xs.size() + ys.size());
  for (const auto& x : xs) sys.unknowns.push_back({PositionUnknown::Kind::kStock, x});
  for (const auto& y : ys) sys.unknowns.push_back({PositionUnknown::Kind::kOption, y});
  for (std::size_t r = 0; r < states.size(); ++r) {
    const Point& p = states[r];
    auto hx = std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin();
    auto gy = std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin();
    sys.matrix(r, static_cast<std::size_t>(hx)) = p.increment();
    sys.matrix(r, xs.size() + static_cast<std::size_t>(gy)) = 1;
  }
  return sys;
}

namespace {

using IntRow = std::vector<Integer>;

// Multiplies a rational row by the lcm of its denominators. Returns the factor.
Integer to_integer_row(const ExactMatrix& m, std::size_t r, const std::vector<Scalar>* extra,
                       IntRow& out) {
  Integer lcm = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
  if (extra) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), (*extra)[r].get_den_mpz_t());
  out.assign(m.cols() + (extra ? 1 : 0), Integer(0));
  for (std::size_t c = 0; c < m.cols(); ++c) out[c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
  if (extra) out[m.cols()] = (*extra)[r].get_num() * (lcm / (*extra)[r].get_den());
  return lcm;
}

struct Echelon {
  std::vector<IntRow> rows;
  std::vector<std::size_t> pivot_cols;  // pivot of row i is at pivot_cols[i]
  Integer scale = 1;                    // product of the row scaling factors
  bool odd_permutation = false;
};

// Fraction-free (Bareiss) row echelon form. Pivots are searched only in the
// first pivot_limit columns; every column is updated. Among the nonzero
// candidates of a column the entry with the fewest bits is chosen.
Echelon fraction_free_echelon(const ExactMatrix& m, const std::vector<Scalar>* rhs,
                              std::size_t pivot_limit) {
  Echelon e;
  e.rows.resize(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) e.scale *= to_integer_row(m, r, rhs, e.rows[r]);

  const std::size_t width = m.cols() + (rhs ? 1 : 0);
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_limit && row < e.rows.size(); ++col) {
    std::size_t best = e.rows.size();
    std::size_t best_bits = 0;
    for (std::size_t r = row; r < e.rows.size(); ++r) {
      if (e.rows[r][col] == 0) continue;
      std::size_t bits = bit_length(e.rows[r][col]);
      if (best == e.rows.size() || bits < best_bits) {
        best = r;
        best_bits = bits;
      }
    }
    if (best == e.rows.size()) continue;
    if (best != row) {
      std::swap(e.rows[best], e.rows[row]);
      e.odd_permutation = !e.odd_permutation;
    }
    const IntRow& pivot_row = e.rows[row];
    const Integer& pivot = pivot_row[col];
    for (std::size_t r = row + 1; r < e.rows.size(); ++r) {
      IntRow& target = e.rows[r];
      const Integer factor = target[col];
      for (std::size_t c = col + 1; c < width; ++c) {
        Integer value = pivot * target[c] - factor * pivot_row[c];
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), prev.get_mpz_t());
        check_bits(value);
        target[c] = std::move(value);
      }
      target[col] = 0;
    }
    prev = pivot;
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

// Solves the echelon system for the given values of the free unknowns.
std::vector<Scalar> back_substitute(const Echelon& e, std::size_t cols, bool with_rhs,
                                    const std::vector<Scalar>& free_values) {
  std::vector<Scalar> x = free_values;
  for (std::size_t i = e.pivot_cols.size(); i-- > 0;) {
    const IntRow& row = e.rows[i];
    const std::size_t pc = e.pivot_cols[i];
    Scalar acc = with_rhs ? Scalar(row[cols]) : Scalar(0);
    for (std::size_t c = pc + 1; c < cols; ++c) {
      if (row[c] != 0 && x[c] != 0) acc -= Scalar(row[c]) * x[c];
    }
    x[pc] = acc / Scalar(row[pc]);
  }
  return x;
}

std::vector<std::vector<Scalar>> nullspace_from(const Echelon& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto pc : e.pivot_cols) is_pivot[pc] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> seed(cols, Scalar(0));
    seed[f] = 1;
    basis.push_back(back_substitute(e, cols, false, seed));
  }
  return basis;
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
  return fraction_free_echelon(m, nullptr, m.cols()).pivot_cols.size();
}

std::size_t nullity(const ExactMatrix& m) { return m.cols() - rank(m); }

Scalar determinant(const ExactMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNotSquare, "determinant of a " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()) + " matrix");
  }
  if (m.rows() == 0) return Scalar(1);
  Echelon e = fraction_free_echelon(m, nullptr, m.cols());
  if (e.pivot_cols.size() < m.rows()) return Scalar(0);
  // The last Bareiss pivot is the determinant of the scaled matrix.
  Scalar det(e.rows.back().back(), e.scale);
  det.canonicalize();
  return e.odd_permutation ? Scalar(-det) : det;
}

std::vector<std::vector<Scalar>> nullspace(const ExactMatrix& m) {
  return nullspace_from(fraction_free_echelon(m, nullptr, m.cols()), m.cols());
}

SolveOutcome solve(const ExactMatrix& m, const std::vector<Scalar>& rhs) {
  if (rhs.size() != m.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "right-hand side has " + std::to_string(rhs.size()) +
                                               " entries for " + std::to_string(m.rows()) + " rows");
  }
  Echelon e = fraction_free_echelon(m, &rhs, m.cols());
  for (std::size_t r = e.pivot_cols.size(); r < e.rows.size(); ++r) {
    if (e.rows[r][m.cols()] != 0) {
      // Some y in the left nullspace of M pairs nontrivially with rhs.
      for (auto& y : nullspace(m.transposed())) {
        Scalar pairing = 0;
        for (std::size_t i = 0; i < y.size(); ++i) pairing += y[i] * rhs[i];
        if (pairing != 0) return Inconsistency{std::move(y)};
      }
      throw std::logic_error("inconsistent system without a left-nullspace certificate");
    }
  }
  Solution s;
  s.particular = back_substitute(e, m.cols(), true, std::vector<Scalar>(m.cols(), Scalar(0)));
  s.nullspace = nullspace_from(e, m.cols());
  return s;
}

}  // namespace semistatic
