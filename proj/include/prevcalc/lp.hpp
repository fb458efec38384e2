#ifndef PREVCALC_LP_HPP
#define PREVCALC_LP_HPP

#include "prevcalc/rational.hpp"

#include <variant>
#include <vector>

namespace prevcalc {

/// Affine form coeffs . x + constant over unconstrained variables.
struct LinExpr {
  Vec coeffs;
  Rat constant{0};

  Rat operator()(const Vec& x) const { return dot(coeffs, x) + constant; }
};

enum class Relation { LE, EQ, GE };
enum class Sense { Max, Min };

/// expr (relation) 0, e.g. {x - 3, LE} encodes x <= 3.
struct Constraint {
  LinExpr expr;
  Relation rel;
};

Constraint make_constraint(Vec coeffs, Relation rel, Rat rhs);

struct LpOptimal {
  Rat value;
  Vec witness;
};
struct LpInfeasible {};
struct LpUnbounded {};

using LpResult = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

struct LpOptions {
  /// Variables are free unless listed here as nonnegative. An empty vector
  /// means all free; `all_nonneg` overrides.
  std::vector<bool> nonneg;
  bool all_nonneg = false;
  /// Among optimal solutions return the lexicographically smallest one
  /// (skipping coordinates that are unbounded below on the optimal face).
  bool lexicographic = true;
};

/// Exact two-phase simplex with Bland's rule.
LpResult lp_solve(Sense sense, const LinExpr& objective, const std::vector<Constraint>& constraints,
                  const LpOptions& options = {});

/// Feasibility only; returns a feasible point when one exists.
bool lp_feasible(std::size_t num_vars, const std::vector<Constraint>& constraints, Vec* point,
                 const LpOptions& options = {});

inline bool is_optimal(const LpResult& r) { return std::holds_alternative<LpOptimal>(r); }

}  // namespace prevcalc

#endif  // PREVCALC_LP_HPP
