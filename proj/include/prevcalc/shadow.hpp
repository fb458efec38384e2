#ifndef PREVCALC_SHADOW_HPP
#define PREVCALC_SHADOW_HPP

#include "prevcalc/prevision.hpp"

namespace prevcalc {

struct ShadowParams {
  Point base;
  Rat alpha;
};

/// alpha * x + (1 - alpha) * x0.
Point shd(const Point& x0, const Rat& alpha, const Point& x);
inline Point shd(const ShadowParams& p, const Point& x) { return shd(p.base, p.alpha, x); }

/// True iff every preimage of {P > 1} under shd(1, alpha), alpha in (0,1],
/// stays inside {P > 1}.
bool shadow_stable(const Prevision& p);

/// Certifies shd(1, alpha)^{-1}({F > 1}) is contained in {F > 1} for one
/// fixed alpha in (0,1].
bool shadow_preimage_closed(const Prevision& f, const Rat& alpha);

/// The prevision whose strict 1-superlevel set is the shadow of {G > 1} at 1:
/// F(h) = sup_{s >= 0} G(h + s 1) - s. Throws ImproperShadow if G(1) > 1.
Prevision shadow_gauge(const Prevision& g);

/// A subnormalized superlinear F with F0 <= F <= P.
Prevision subnorm_superlinear_below(const Prevision& p, const Prevision& f0);

/// A normalized sublinear F with P <= F <= F0:
/// F(h) = inf_{s >= 0} F0(h + s 1) - s.
Prevision normalized_sublinear_between(const Prevision& p, const Prevision& f0);

}  // namespace prevcalc

#endif  // PREVCALC_SHADOW_HPP
