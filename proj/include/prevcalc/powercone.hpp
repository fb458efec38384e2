#ifndef PREVCALC_POWERCONE_HPP
#define PREVCALC_POWERCONE_HPP

#include "prevcalc/prevision.hpp"

namespace prevcalc {

/// Denotes the upward closure of the convex hull of `gens`.
struct SmythGen {
  std::vector<Prevision> gens;
};

/// Denotes the closed convex hull of the downward closure of `gens`.
struct HoareGen {
  std::vector<Prevision> gens;
};

enum class ConeOpKind { Add, Scale, Mix, SmythInf, HoareSup };

struct ConeOp {
  ConeOpKind kind;
  Rat a{0};
  static ConeOp add() { return {ConeOpKind::Add}; }
  static ConeOp scale(Rat a) { return {ConeOpKind::Scale, std::move(a)}; }
  static ConeOp mix(Rat a) { return {ConeOpKind::Mix, std::move(a)}; }
  static ConeOp smyth_inf() { return {ConeOpKind::SmythInf}; }
  static ConeOp hoare_sup() { return {ConeOpKind::HoareSup}; }
};

/// Add and Mix take two arguments, Scale one, SmythInf/HoareSup one or more.
/// HoareSup on Smyth elements (and SmythInf on Hoare elements) throws
/// FlavorMismatch.
SmythGen cone_op(const ConeOp& op, const std::vector<SmythGen>& args);
HoareGen cone_op(const ConeOp& op, const std::vector<HoareGen>& args);

/// Removes generators whose removal leaves the pointwise min (Smyth) or
/// max (Hoare) of the generators unchanged.
SmythGen canonicalize(const SmythGen& s);
HoareGen canonicalize(const HoareGen& h);

}  // namespace prevcalc

#endif  // PREVCALC_POWERCONE_HPP
