#ifndef PREVCALC_TRANSFORMS_HPP
#define PREVCALC_TRANSFORMS_HPP

#include "prevcalc/powercone.hpp"
#include "prevcalc/prevision.hpp"

#include <optional>
#include <string>
#include <variant>

namespace prevcalc {

enum class Flavor { Plain, Subnorm, Norm };

std::string to_string(Flavor f);
/// Accepts "plain", "subnorm", "norm".
Flavor parse_flavor(const std::string& s);
/// Plain: always; Subnorm: subnormalized; Norm: normalized.
bool has_flavor(const Prevision& p, Flavor f);

/// {F sublinear with the flavor : F >= canonical}.
struct QPredSub {
  Prevision canonical;
  Flavor flavor = Flavor::Plain;
};

/// {F superlinear with the flavor : F <= canonical}; no canonical means the
/// whole space (image of the empty family).
struct CPredSuper {
  std::optional<Prevision> canonical;
  std::size_t n = 0;
  Flavor flavor = Flavor::Plain;

  static CPredSuper top(std::size_t n, Flavor flavor = Flavor::Plain) { return {std::nullopt, n, flavor}; }
  bool is_top() const { return !canonical.has_value(); }
};

Prevision minP(const SmythGen& q);
Prevision supP(const HoareGen& c);

QPredSub nimP(const Prevision& p, Flavor flavor);
CPredSuper qusP(const Prevision& p, Flavor flavor);
/// Only finite-valued candidates; a candidate with recession throws.
bool member_nim(const QPredSub& q, const Prevision& f, Flavor flavor);
bool member_qus(const CPredSuper& c, const Prevision& f, Flavor flavor);

struct DominationFailure {
  Point witness;  // q(witness) > p(witness)
};
using SandwichResult = std::variant<LinearPrev, DominationFailure>;

/// A linear prevision between min over q and max over p.
SandwichResult sandwich(const UpGen& q, const DownGen& p, Flavor flavor);

enum class OrthDirection { SuperToSub, SubToSuper };
using Orthogonal = std::variant<QPredSub, CPredSuper>;

QPredSub orthogonal_super_to_sub(const std::vector<Prevision>& fam, std::size_t n, Flavor flavor);
CPredSuper orthogonal_sub_to_super(const std::vector<Prevision>& fam, std::size_t n, Flavor flavor);
Orthogonal orthogonal_family(OrthDirection dir, const std::vector<Prevision>& fam, std::size_t n, Flavor flavor);

/// Sublinear F >= P with F(h) = P(h), for strictly positive h.
Prevision tight_sublinear_witness(const Prevision& p, const Point& h, Flavor flavor);

struct CornerWitness {
  Prevision f;
  /// The two-ray gauge was not subnormalized and went through the shadow.
  bool shadow_fallback = false;
};

/// Superlinear F <= P with F(h) > r, for strictly positive h, 0 < r < P(h).
CornerWitness corner_superlinear_witness_ex(const Prevision& p, const Point& h, const Rat& r, Flavor flavor);
Prevision corner_superlinear_witness(const Prevision& p, const Point& h, const Rat& r, Flavor flavor);

struct BoxHolds {
  Point a;
  Rat value;  // P(sum a_i h_i) > 1
};
struct BoxFails {
  Prevision f;
};
using BoxResult = std::variant<BoxHolds, BoxFails>;
BoxResult box_union_criterion(const Prevision& p, const std::vector<Point>& hs);

struct DiaHolds {
  Prevision f;
  Rat infimum;
};
struct DiaFails {
  Point a;
  Rat value;  // P(sum a_i h_i) <= 1
};
using DiaResult = std::variant<DiaHolds, DiaFails>;
DiaResult dia_intersection_criterion(const Prevision& p, const std::vector<Point>& hs);

/// P(sum a_i h_i) over a in the simplex, as a PL function of a.
PhplExpr composed_on_simplex(const Prevision& p, const std::vector<Point>& hs);

struct Interval {
  bool empty = true;
  Rat lo{0};
  Rat hi{0};
  friend bool operator==(const Interval&, const Interval&) = default;
};
std::string to_string(const Interval& i);

/// {a in [0,1] : T >= a P1 + (1 - a) P2 pointwise}.
Interval mix_dominance_range(const Prevision& t, const Prevision& p1, const Prevision& p2);

QPredSub double_orthogonal_roundtrip(const QPredSub& q);
CPredSuper double_orthogonal_roundtrip(const CPredSuper& c);

}  // namespace prevcalc

#endif  // PREVCALC_TRANSFORMS_HPP
