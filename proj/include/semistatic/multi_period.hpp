#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "semistatic/exact_oracle.hpp"
#include "semistatic/scalar.hpp"

namespace semistatic::mp {

/// Largest supported d * T; the system then has 2^14 rows.
inline constexpr std::size_t kMaxBits = 14;

/// T dates, d stocks, and the two price matrices spanning the cuboid D.
/// x0[t][j] != x1[t][j] for every date t and stock j (0-based here).
class Instance {
 public:
  /// Throws Error(kInvalidInstance) on bad shapes, T < 2, d < 1 or equal
  /// coordinates, Error(kSizeLimit) when d * T > kMaxBits.
  Instance(std::size_t dates, std::size_t stocks, std::vector<std::vector<Scalar>> x0,
           std::vector<std::vector<Scalar>> x1);

  std::size_t dates() const noexcept { return dates_; }
  std::size_t stocks() const noexcept { return stocks_; }
  std::size_t bits() const noexcept { return dates_ * stocks_; }
  const std::vector<std::vector<Scalar>>& x0() const noexcept { return x0_; }
  const std::vector<std::vector<Scalar>>& x1() const noexcept { return x1_; }

  /// x^eps_{t,j}: the corner price selected by `which` (0 or 1).
  const Scalar& price(std::size_t t, std::size_t j, unsigned which) const {
    return which == 0 ? x0_[t][j] : x1_[t][j];
  }

  /// Increment x^k_{t+1,j} - x^l_{t,j}, for t = 0..T-2.
  Scalar increment(std::size_t t, std::size_t j, unsigned k, unsigned l) const;
  /// Gap x^0_{t,j} - x^1_{t,j}.
  Scalar gap(std::size_t t, std::size_t j) const;

 private:
  std::size_t dates_;
  std::size_t stocks_;
  std::vector<std::vector<Scalar>> x0_;
  std::vector<std::vector<Scalar>> x1_;
};

/// Binary multi-index eps_{1,1} ... eps_{t,d}; the first bit is the most
/// significant, so numeric order is lexicographic order.
struct MultiIndex {
  std::size_t length = 0;
  std::uint64_t bits = 0;

  unsigned bit(std::size_t i) const { return static_cast<unsigned>((bits >> (length - 1 - i)) & 1U); }
  /// Leading `n` bits as a multi-index of length n.
  MultiIndex prefix(std::size_t n) const { return {n, bits >> (length - n)}; }
  std::string to_string() const;
  /// Throws Error(kParse) for characters other than '0' and '1'.
  static MultiIndex parse(const std::string& text);

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

struct Counts {
  Integer rows;  // 2^{dT}
  Integer cols;  // d (2^{dT} - 1) / (2^d - 1) + 1
};

/// Throws Error(kInvalidInstance) unless T >= 2 and d >= 1.
Counts counts(std::size_t dates, std::size_t stocks);

/// A column of the system.
struct Variable {
  enum class Kind { kStock, kOption } kind = Kind::kStock;
  std::size_t date = 0;   // t (1-based) for stock variables
  std::size_t stock = 0;  // j (1-based)
  MultiIndex history;     // eps_t for stock variables
  unsigned corner = 1;    // option variables: g_j(x^corner_{T,j})

  std::string label() const;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Stock variables h_{t,j}(x^{eps_t}) ordered by descending t, then
/// ascending eps_t, then ascending j; then g_1(x^0_{T,1}), g_1(x^1_{T,1}),
/// g_2(x^1_{T,2}), ..., g_d(x^1_{T,d}). g_j(x^0_{T,j}) = 0 for j >= 2.
std::vector<Variable> variables(const Instance& inst);

/// Column of h_{t,j}(x^{eps_t}), t and j 1-based.
std::size_t stock_column(const Instance& inst, std::size_t date, const MultiIndex& history, std::size_t stock);
std::size_t option_column(const Instance& inst, std::size_t stock, unsigned corner);

/// Cuboid points in lexicographic multi-index order; each point is the T x d
/// price matrix flattened date-major.
std::vector<std::vector<Scalar>> cuboid(const Instance& inst);

struct SystemMatrix {
  ExactMatrix matrix;
  std::vector<MultiIndex> row_labels;
  std::vector<Variable> col_labels;
};

SystemMatrix build_system(const Instance& inst);

struct RankReport {
  std::size_t rank = 0;
  std::size_t columns = 0;
  bool full = false;
};

RankReport verify_full_rank(const Instance& inst);

/// -prod_{t<T} (x^0_t - x^1_t)^{2^{t-1}} (x^0_T - x^1_T)^{2^{T-1}-1}.
/// Throws Error(kNotSquare) unless d = 1.
Scalar det_formula_d1(const Instance& inst);

/// Values of all system variables, aligned with variables(inst).
struct Positions {
  std::vector<Scalar> values;
  friend bool operator==(const Positions&, const Positions&) = default;
};

/// V on D computed from the defining sum (not via the matrix), in row order.
std::vector<Scalar> forward_evaluate(const Instance& inst, const Positions& positions);

struct Inconsistent {
  std::vector<Scalar> certificate;  // y with y^T L = 0, y . V != 0
};

using RecoveryOutcome = std::variant<Positions, Inconsistent>;

/// Unique positions with L p = V (full column rank makes them unique).
/// Throws Error(kShapeMismatch) unless V has 2^{dT} values in row order.
RecoveryOutcome recover_positions(const Instance& inst, const std::vector<Scalar>& values);

/// Product of finite probability spaces with rational weights.
struct FiniteProductMeasure {
  struct Factor {
    std::vector<Scalar> atoms;
    std::vector<Scalar> weights;
  };
  std::vector<Factor> factors;

  /// Throws Error(kInvalidInstance) for negative weights, weights not summing
  /// to one, duplicate atoms or length mismatches.
  void validate() const;
  /// Weight of one point; zero for points outside the product.
  Scalar weight(const std::vector<Scalar>& point) const;
  Scalar measure(const std::vector<std::vector<Scalar>>& set) const;
};

/// All x0 in A whose set {x in A : prod_i {x0_i, x_i} ⊆ A} has full measure.
/// Throws Error(kNotFullMeasure) when mu(A) < 1.
std::vector<std::vector<Scalar>> anchor_search(const FiniteProductMeasure& mu,
                                               const std::vector<std::vector<Scalar>>& set);

}  // namespace semistatic::mp
