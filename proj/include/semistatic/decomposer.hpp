#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semistatic/connectivity.hpp"
#include "semistatic/cycles.hpp"
#include "semistatic/factorization.hpp"
#include "semistatic/model.hpp"

namespace semistatic {

enum class BlockKind { kIdentifying, kOneParameter, kSingleton };

std::string_view block_kind_name(BlockKind kind) noexcept;

struct BlockSummary {
  BlockKind kind = BlockKind::kSingleton;
  std::optional<std::size_t> component;
  std::vector<Point> points;
  std::optional<Cycle> cycle;                  // identifying components
  std::optional<Factorization> factorization;  // one-parameter components
  /// A diagonal state (c, c) with c in C^y fixed the family parameter.
  bool pinned = false;
  std::optional<Point> pinned_by;
};

/// A direction in which the positions may move without changing v.
struct FreeParameter {
  enum class Kind {
    kFamily,         // alpha of an unpinned one-parameter component
    kDiagonalStock,  // h(c) at a diagonal x-value outside every C^x
  };
  Kind kind;
  std::optional<std::size_t> component;
  std::optional<Scalar> x;
};

struct DecompositionReport {
  PortfolioPosition position;
  std::vector<BlockSummary> blocks;
  std::vector<FreeParameter> free_parameters;  // all set to zero in `position`
  std::size_t dof_oracle = 0;   // nullity of the brute-force position system
  std::size_t dof_formula = 0;  // card(N ∪ {components without identifying cycle})
  bool discrepancy_flag = false;
};

/// Inconsistent subset of the states, irreducible: dropping any one point
/// makes the remaining values semistatic.
struct InfeasibilityWitness {
  std::vector<std::size_t> points;  // indices into the canonical order
  std::string reason;
};

class NotSemistaticError : public Error {
 public:
  NotSemistaticError(InfeasibilityWitness witness, std::optional<std::size_t> term = std::nullopt);

  const InfeasibilityWitness& witness() const noexcept { return witness_; }
  /// Offending term of a sequence, when raised by analyze_limit.
  std::optional<std::size_t> term() const noexcept { return term_; }

 private:
  InfeasibilityWitness witness_;
  std::optional<std::size_t> term_;
};

/// Positions with evaluate(position) == v, built block by block: identifying
/// components from one cycle solve plus propagation, the others from a
/// family member, diagonal states through g(y) = v(y, y), pinning a family
/// parameter where a diagonal y lies in C^y. Free parameters are set to 0.
/// Throws NotSemistaticError.
DecompositionReport decompose(const StateSet& states, const Strategy& v);

struct SemistaticVerdict {
  bool semistatic = false;
  std::optional<DecompositionReport> report;
  std::optional<InfeasibilityWitness> witness;
};

SemistaticVerdict is_semistatic(const StateSet& states, const Strategy& v);

struct DegreesOfFreedom {
  std::size_t oracle = 0;
  std::size_t formula = 0;
  bool flag = false;
};

/// Throws NotSemistaticError when v is not semistatic.
DegreesOfFreedom degrees_of_freedom(const StateSet& states, const Strategy& v);

/// Structural counts; they do not depend on the strategy.
std::size_t dof_oracle(const StateSet& states);
std::size_t dof_formula(const StateSet& states);

struct BlockLimit {
  BlockKind kind;
  std::optional<std::size_t> component;
  std::vector<Point> points;
  bool unique = false;  // positions on the block are determined by v
};

struct LimitReport {
  std::vector<BlockLimit> blocks;
  /// Per term: family parameters fixed by h(anchor) = 0, free diagonal stock
  /// positions set to 0; determined positions unchanged.
  std::vector<PortfolioPosition> normalized;
  DecompositionReport final_term;
  bool values_constant = false;
  bool positions_constant = false;
  /// First term index from which all later values (positions) coincide.
  std::size_t values_stable_from = 0;
  std::size_t positions_stable_from = 0;
};

/// Throws NotSemistaticError naming the offending term, and
/// Error(kShapeMismatch) for an empty sequence.
LimitReport analyze_limit(const StateSet& states, const std::vector<Strategy>& sequence);

}  // namespace semistatic
