#ifndef PREVCALC_PHPL_HPP
#define PREVCALC_PHPL_HPP

#include "prevcalc/rational.hpp"

#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

namespace prevcalc {

/// Symbolic positively homogeneous piecewise-linear function on R_+^m.
/// Cheap to copy: nodes are shared and immutable.
class PhplExpr {
 public:
  enum class Kind { Linear, Sum, Scale, Min, Max };

  static PhplExpr linear(Vec coeffs);
  static PhplExpr zero(std::size_t m);
  static PhplExpr sum(std::vector<PhplExpr> terms);
  static PhplExpr scale(Rat factor, PhplExpr e);
  static PhplExpr min(std::vector<PhplExpr> terms);
  static PhplExpr max(std::vector<PhplExpr> terms);

  std::size_t dim() const;
  Kind kind() const;

  Rat eval(const Vec& x) const;
  /// Value together with the gradient of the piece selected at x (first
  /// optimal child on ties; unique at points off every breakpoint hyperplane).
  std::pair<Rat, Vec> eval_with_gradient(const Vec& x) const;

  /// Replaces variable i of this expression by the linear form rows[i] over
  /// a new set of variables, i.e. returns x -> f(M x).
  PhplExpr substitute(const std::vector<Vec>& rows) const;

  /// Normals of all hyperplanes on which some min/max node may switch
  /// branches. Only normals of mixed sign are kept (others cannot cut the
  /// open orthant). Canonically scaled and deduplicated.
  std::vector<Vec> breakpoint_normals() const;

  friend PhplExpr operator+(const PhplExpr& a, const PhplExpr& b);
  friend PhplExpr operator-(const PhplExpr& a, const PhplExpr& b);

 private:
  struct Node;
  explicit PhplExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Nonneg {
  /// True when the verdict only comes from grid sampling (advisory).
  bool grid_only = false;
};
struct Negative {
  Vec witness;  // on the standard simplex
  Rat value;
};
using NonnegVerdict = std::variant<Nonneg, Negative>;

enum class EngineMode { ExactOnly, AllowGrid };

/// Largest ambient dimension decided exactly.
inline constexpr std::size_t kExactDimLimit = 4;

class EngineBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decides f >= 0 on R_+^m. Exact by vertex enumeration of the breakpoint
/// arrangement on the standard simplex.
NonnegVerdict verify_nonneg_ph_pl(const PhplExpr& f, EngineMode mode = EngineMode::ExactOnly);

inline bool is_nonneg(const NonnegVerdict& v) { return std::holds_alternative<Nonneg>(v); }

/// Vertices of the common refinement of the breakpoint arrangements of all
/// `fs` restricted to the standard simplex, in lexicographic order.
std::vector<Vec> arrangement_vertices(const std::vector<PhplExpr>& fs);

struct SimplexExtremum {
  Rat value;
  Vec argument;  // lexicographically smallest optimal vertex
};
SimplexExtremum maximize_on_simplex(const PhplExpr& f);
SimplexExtremum minimize_on_simplex(const PhplExpr& f);

/// Gradients of the linear pieces of f on full-dimensional cells.
std::vector<Vec> linear_pieces(const PhplExpr& f);

/// Points of the grid with denominator `den` on the standard simplex.
std::vector<Vec> simplex_grid(std::size_t m, unsigned den);

/// The set of nonnegative vectors with coordinates in (1/N)N and coordinate
/// sum in (1 - n/N, 1], ordered by sum then lexicographically.
std::vector<Point> delta_grid(std::size_t n, unsigned big_n);

}  // namespace prevcalc

#endif  // PREVCALC_PHPL_HPP
