#ifndef PREVCALC_PREVISION_HPP
#define PREVCALC_PREVISION_HPP

#include "prevcalc/errors.hpp"
#include "prevcalc/phpl.hpp"
#include "prevcalc/rational.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace prevcalc {

struct LinearPrev {
  Point weights;
  friend bool operator==(const LinearPrev&, const LinearPrev&) = default;
};

/// Body of the sublinear prevision h -> max_g <g,h>.
struct DownGen {
  std::vector<Point> gens;
  friend bool operator==(const DownGen&, const DownGen&) = default;
};

/// Body of the superlinear prevision h -> min_g <g,h>.
struct UpGen {
  std::vector<Point> gens;
  friend bool operator==(const UpGen&, const UpGen&) = default;
};

enum class GaugeDirection { Down, Up };

/// Down: M(g) = min{s >= 0 : g <= s * c, c in conv(hull)} (may be inf).
/// Up:   M(g) = max{s >= 0 : s * c <= g, c in conv(hull)}.
struct GaugeForm {
  std::vector<Point> hull_points;
  GaugeDirection direction;
  friend bool operator==(const GaugeForm&, const GaugeForm&) = default;
};

struct MinOfSub {
  std::vector<DownGen> branches;
  friend bool operator==(const MinOfSub&, const MinOfSub&) = default;
};

struct MaxOfSuper {
  std::vector<UpGen> branches;
  friend bool operator==(const MaxOfSuper&, const MaxOfSuper&) = default;
};

class Prevision {
 public:
  using Form = std::variant<MinOfSub, MaxOfSuper, GaugeForm, LinearPrev>;

  /// Validates that every point has dimension n and every list is nonempty.
  Prevision(std::size_t n, Form form);

  static Prevision linear(Point weights);
  static Prevision zero(std::size_t n);
  static Prevision sub(DownGen body);
  static Prevision super(UpGen body);
  static Prevision min_of_sub(std::vector<DownGen> branches);
  static Prevision max_of_super(std::vector<UpGen> branches);
  static Prevision gauge(std::vector<Point> hull_points, GaugeDirection direction);

  std::size_t n() const { return n_; }
  const Form& form() const { return form_; }

  friend bool operator==(const Prevision&, const Prevision&) = default;

 private:
  std::size_t n_;
  Form form_;
};

Extended eval(const Prevision& p, const Point& h);
/// Throws std::domain_error when the value is infinite.
Rat eval_finite(const Prevision& p, const Point& h);

/// Coordinates i on which a down-gauge is infinite as soon as h_i > 0.
std::vector<bool> recession_coords(const Prevision& p);
bool has_recession(const Prevision& p);

/// The denoted function as a symbolic PL expression on R_+^n.
/// Throws PreconditionError for gauges with recession.
PhplExpr to_expr(const Prevision& p);

/// Exact support / min-functional conversion of a gauge form.
DownGen down_gauge_support(const GaugeForm& g, std::size_t n);
UpGen up_gauge_support(const GaugeForm& g, std::size_t n);

enum class Order { LE, GE, EQ, Incomparable };

struct Comparison {
  Order order;
  /// A point where P > Q (present unless P <= Q).
  std::optional<Point> p_above;
  /// A point where P < Q (present unless P >= Q).
  std::optional<Point> p_below;
};

Comparison compare(const Prevision& p, const Prevision& q);
/// P <= Q pointwise; on failure `witness` receives a point with P > Q.
bool leq(const Prevision& p, const Prevision& q, Point* witness = nullptr);
bool equivalent(const Prevision& p, const Prevision& q);

std::string to_string(Order o);

struct ClassFlags {
  bool sublinear = false;
  bool superlinear = false;
  bool subnormalized = false;
  bool normalized = false;
  friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

ClassFlags classify(const Prevision& p);
bool is_sublinear(const Prevision& p);
bool is_superlinear(const Prevision& p);
bool is_subnormalized(const Prevision& p);
bool is_normalized(const Prevision& p);

enum class CombineKind { Sup, Inf, Add, Mix, Scale };

struct Combine {
  CombineKind kind;
  Rat a{0};  // Mix weight on the first argument, or Scale factor
  static Combine sup() { return {CombineKind::Sup}; }
  static Combine inf() { return {CombineKind::Inf}; }
  static Combine add() { return {CombineKind::Add}; }
  static Combine mix(Rat a) { return {CombineKind::Mix, std::move(a)}; }
  static Combine scale(Rat a) { return {CombineKind::Scale, std::move(a)}; }
};

/// Pointwise combination in normal form. Mix takes exactly two arguments
/// (a * first + (1 - a) * second); Scale takes exactly one.
Prevision combine(const Combine& op, const std::vector<Prevision>& args);

enum class UnitKind { Sup, Min };
/// h -> sup_{x in A} h(x) or min_{x in A} h(x).
Prevision unit_prevision(UnitKind kind, const std::vector<std::size_t>& subset, std::size_t n);

/// Level-set integral of h against the valuation with point masses w.
Rat choquet_eval(const LinearPrev& w, const Point& h);

/// Canonical finite normal forms. Mixed forms convert by distributivity.
MinOfSub as_min_of_sub(const Prevision& p);
MaxOfSuper as_max_of_super(const Prevision& p);
/// Body of a sublinear (resp. superlinear) prevision: its linear pieces.
DownGen as_down_gen(const Prevision& p);
UpGen as_up_gen(const Prevision& p);

/// Membership of g in the down-closure / up-closure of conv(gens).
bool in_down_hull(const Point& g, const std::vector<Point>& gens);
bool in_up_hull(const Point& g, const std::vector<Point>& gens);

/// Dedup and drop generators/branches that do not change the function.
MinOfSub prune(MinOfSub m);
MaxOfSuper prune(MaxOfSuper m);
/// Collapses single-generator forms to Linear and prunes.
Prevision simplify(const Prevision& p);

/// Human-readable rendering, e.g. "min[max{(1,0),(1/2,1/2)}]".
std::string describe(const Prevision& p);

}  // namespace prevcalc

#endif  // PREVCALC_PREVISION_HPP
