#include "prevcalc/lp.hpp"

#include <optional>

namespace prevcalc {

Constraint make_constraint(Vec coeffs, Relation rel, Rat rhs) {
  return Constraint{LinExpr{std::move(coeffs), -rhs}, rel};
}

namespace {

// Dense tableau for: minimize c.x subject to A x = b, x >= 0, b >= 0.
class Tableau {
 public:
  Tableau(std::vector<Vec> a, Vec b, std::vector<std::size_t> basis)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)) {}

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return a_.empty() ? 0 : a_[0].size(); }

  void set_objective(const Vec& c) {
    cost_ = c;
    value_ = 0;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rat& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols(); ++j) cost_[j] -= cb * a_[i][j];
      value_ += cb * b_[i];
    }
  }

  // Returns false when unbounded. Columns with index >= limit never enter.
  bool optimize(std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a_[i][*enter] <= 0) continue;
        Rat ratio = b_[i] / a_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / a_[r][c];
    for (auto& v : a_[r]) v *= inv;
    b_[r] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || a_[i][c] == 0) continue;
      Rat f = a_[i][c];
      for (std::size_t j = 0; j < cols(); ++j) {
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      }
      b_[i] -= f * b_[r];
    }
    if (!cost_.empty() && cost_[c] != 0) {
      Rat f = cost_[c];
      for (std::size_t j = 0; j < cols(); ++j) {
        if (a_[r][j] != 0) cost_[j] -= f * a_[r][j];
      }
      value_ += f * b_[r];
    }
    basis_[r] = c;
  }

  // After phase one: pivot artificial columns (index >= first_art) out of the
  // basis, dropping redundant rows, then delete artificial columns.
  void drop_artificials(std::size_t first_art) {
    for (std::size_t i = 0; i < rows();) {
      if (basis_[i] < first_art) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (a_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (auto& row : a_) row.resize(first_art);
    cost_.clear();
  }

  const Rat& value() const { return value_; }

  Vec solution(std::size_t n) const {
    Vec x(n, Rat(0));
    for (std::size_t i = 0; i < rows(); ++i) {
      if (basis_[i] < n) x[basis_[i]] = b_[i];
    }
    return x;
  }

 private:
  std::vector<Vec> a_;
  Vec b_;
  std::vector<std::size_t> basis_;
  Vec cost_;
  Rat value_{0};
};

struct Standardized {
  std::size_t num_vars = 0;
  // original variable j -> (positive column, optional negative column)
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> columns;
  std::size_t structural = 0;  // split columns + slacks
};

enum class Phase1 { Feasible, Infeasible };

class Solver {
 public:
  Solver(std::size_t n, const std::vector<Constraint>& constraints, const LpOptions& options) {
    for (const auto& c : constraints) require_dim(n, c.expr.coeffs.size(), "lp constraint");
    std_.num_vars = n;
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      bool nonneg = options.all_nonneg || (j < options.nonneg.size() && options.nonneg[j]);
      if (nonneg) {
        std_.columns.emplace_back(col++, std::nullopt);
      } else {
        std_.columns.emplace_back(col, col + 1);
        col += 2;
      }
    }
    std::size_t slacks = 0;
    for (const auto& c : constraints) {
      if (c.rel != Relation::EQ) ++slacks;
    }
    std_.structural = col + slacks;
    const std::size_t m = constraints.size();
    const std::size_t total = std_.structural + m;
    std::vector<Vec> a(m, Vec(total, Rat(0)));
    Vec b(m);
    std::vector<std::size_t> basis(m);
    std::size_t slack = col;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = constraints[i];
      Rat sign = 1;
      Rat rhs = -c.expr.constant;
      Relation rel = c.rel;
      if (rhs < 0) {
        sign = -1;
        rhs = -rhs;
        if (rel == Relation::LE) {
          rel = Relation::GE;
        } else if (rel == Relation::GE) {
          rel = Relation::LE;
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        const Rat& v = c.expr.coeffs[j];
        if (v == 0) continue;
        a[i][std_.columns[j].first] = sign * v;
        if (std_.columns[j].second) a[i][*std_.columns[j].second] = -sign * v;
      }
      if (rel == Relation::LE) {
        a[i][slack++] = 1;
      } else if (rel == Relation::GE) {
        a[i][slack++] = -1;
      }
      a[i][std_.structural + i] = 1;
      b[i] = rhs;
      basis[i] = std_.structural + i;
    }
    tableau_.emplace(std::move(a), std::move(b), std::move(basis));
    Vec phase1(total, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[std_.structural + i] = 1;
    tableau_->set_objective(phase1);
    tableau_->optimize(total);
    feasible_ = tableau_->value() == 0;
    if (feasible_) tableau_->drop_artificials(std_.structural);
  }

  bool feasible() const { return feasible_; }

  Vec point() const {
    Vec col = tableau_->solution(std_.structural);
    Vec x(std_.num_vars);
    for (std::size_t j = 0; j < std_.num_vars; ++j) {
      x[j] = col[std_.columns[j].first];
      if (std_.columns[j].second) x[j] -= col[*std_.columns[j].second];
    }
    return x;
  }

  // Minimizes coeffs . x from the current feasible basis; false when unbounded.
  bool minimize(const Vec& coeffs) {
    Vec c(std_.structural, Rat(0));
    for (std::size_t j = 0; j < std_.num_vars; ++j) {
      c[std_.columns[j].first] = coeffs[j];
      if (std_.columns[j].second) c[*std_.columns[j].second] = -coeffs[j];
    }
    tableau_->set_objective(c);
    return tableau_->optimize(std_.structural);
  }

  Rat current_value() const { return tableau_->value(); }

 private:
  Standardized std_;
  std::optional<Tableau> tableau_;
  bool feasible_ = false;
};

}  // namespace

LpResult lp_solve(Sense sense, const LinExpr& objective, const std::vector<Constraint>& constraints,
                  const LpOptions& options) {
  const std::size_t n = objective.coeffs.size();
  Solver solver(n, constraints, options);
  if (!solver.feasible()) return LpInfeasible{};
  Vec c = objective.coeffs;
  if (sense == Sense::Max) {
    for (auto& v : c) v = -v;
  }
  if (!solver.minimize(c)) return LpUnbounded{};
  Rat value = solver.current_value();
  if (sense == Sense::Max) value = -value;
  Vec witness = solver.point();
  if (options.lexicographic && n > 0) {
    std::vector<Constraint> face = constraints;
    face.push_back(Constraint{LinExpr{objective.coeffs, -value}, Relation::EQ});
    for (std::size_t j = 0; j < n; ++j) {
      Vec e(n, Rat(0));
      e[j] = 1;
      Solver sub(n, face, options);
      if (!sub.minimize(e)) continue;
      Rat xj = sub.current_value();
      witness = sub.point();
      face.push_back(Constraint{LinExpr{e, -xj}, Relation::EQ});
    }
  }
  return LpOptimal{value + objective.constant, std::move(witness)};
}

bool lp_feasible(std::size_t num_vars, const std::vector<Constraint>& constraints, Vec* point,
                 const LpOptions& options) {
  Solver solver(num_vars, constraints, options);
  if (!solver.feasible()) return false;
  if (point) *point = solver.point();
  return true;
}

}  // namespace prevcalc
