#include "prevcalc/powercone.hpp"

#include <algorithm>

namespace prevcalc {

namespace {

template <class Elem>
std::size_t elem_dim(const Elem& e) {
  if (e.gens.empty()) throw PreconditionError("hyperspace element has no generators");
  return e.gens.front().n();
}

template <class Elem>
Elem pairwise(const Elem& x, const Elem& y, const Combine& how) {
  Elem out;
  for (const auto& f : x.gens) {
    for (const auto& g : y.gens) out.gens.push_back(combine(how, {f, g}));
  }
  return out;
}

template <class Elem>
Elem generic_op(const ConeOp& op, const std::vector<Elem>& args, ConeOpKind concat_kind) {
  if (args.empty()) throw PreconditionError("cone_op without arguments");
  const std::size_t n = elem_dim(args.front());
  for (const auto& a : args) require_dim(n, elem_dim(a), "cone_op");
  switch (op.kind) {
    case ConeOpKind::Add:
      if (args.size() != 2) throw PreconditionError("cone add takes two arguments");
      return pairwise(args[0], args[1], Combine::add());
    case ConeOpKind::Mix:
      if (args.size() != 2) throw PreconditionError("cone mix takes two arguments");
      if (op.a < 0 || op.a > 1) throw PreconditionError("mix weight must lie in [0,1]");
      return pairwise(args[0], args[1], Combine::mix(op.a));
    case ConeOpKind::Scale: {
      if (args.size() != 1) throw PreconditionError("cone scale takes one argument");
      if (op.a < 0) throw PreconditionError("scale factor must be >= 0");
      if (op.a == 0) return Elem{{Prevision::zero(n)}};
      Elem out;
      for (const auto& g : args[0].gens) out.gens.push_back(combine(Combine::scale(op.a), {g}));
      return out;
    }
    case ConeOpKind::SmythInf:
    case ConeOpKind::HoareSup: {
      if (op.kind != concat_kind) throw FlavorMismatch("smyth_inf applies to Smyth elements, hoare_sup to Hoare elements");
      Elem out;
      for (const auto& a : args) out.gens.insert(out.gens.end(), a.gens.begin(), a.gens.end());
      return out;
    }
  }
  throw std::logic_error("unknown cone op");
}

template <class Elem>
Elem canonical(const Elem& s, const Combine& how) {
  if (s.gens.empty()) throw PreconditionError("hyperspace element has no generators");
  std::vector<Prevision> gens;
  for (const auto& g : s.gens) {
    bool dup = std::any_of(gens.begin(), gens.end(), [&](const Prevision& h) { return h == g; });
    if (!dup) gens.push_back(g);
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<Prevision> rest;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) rest.push_back(gens[j]);
    }
    if (equivalent(combine(how, rest), combine(how, gens))) gens = std::move(rest);
  }
  return Elem{std::move(gens)};
}

}  // namespace

SmythGen cone_op(const ConeOp& op, const std::vector<SmythGen>& args) {
  return generic_op(op, args, ConeOpKind::SmythInf);
}

HoareGen cone_op(const ConeOp& op, const std::vector<HoareGen>& args) {
  return generic_op(op, args, ConeOpKind::HoareSup);
}

SmythGen canonicalize(const SmythGen& s) { return canonical(s, Combine::inf()); }
HoareGen canonicalize(const HoareGen& h) { return canonical(h, Combine::sup()); }

}  // namespace prevcalc
