#include "prevcalc/shadow.hpp"

#include <algorithm>

namespace prevcalc {

Point shd(const Point& x0, const Rat& alpha, const Point& x) {
  if (alpha < 0 || alpha > 1) throw PreconditionError("shd: alpha " + to_string(alpha) + " outside [0,1]");
  return mix(alpha, x, x0);
}

namespace {

// Rows of the linear maps (u, t) -> u and (u, t) -> a u + b t 1 on R^{n+1}.
std::vector<Vec> lift_rows(std::size_t n, const Rat& a, const Rat& b) {
  std::vector<Vec> rows(n, Vec(n + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = a;
    rows[i][n] = b;
  }
  return rows;
}

PhplExpr t_coord(std::size_t n) {
  Vec t(n + 1, Rat(0));
  t[n] = 1;
  return PhplExpr::linear(std::move(t));
}

// Generators of conv(gens) cut by the half-space {mass >= 1} (above) or
// {mass <= 1} (below): kept generators plus mass-1 crossing points.
std::vector<Point> mass_cut(const std::vector<Point>& gens, bool above) {
  std::vector<Point> out;
  for (const auto& g : gens) {
    Rat m = g.mass();
    if (above ? m >= 1 : m <= 1) out.push_back(g);
  }
  for (const auto& g : gens) {
    for (const auto& h : gens) {
      Rat mg = g.mass();
      Rat mh = h.mass();
      if (!(mg < 1 && mh > 1)) continue;
      Rat t = (1 - mg) / (mh - mg);
      out.push_back(mix(t, h, g));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void verify(bool ok, const std::string& what) {
  if (!ok) throw PostconditionFailure(what);
}

}  // namespace

bool shadow_stable(const Prevision& p) {
  if (has_recession(p)) return false;
  const std::size_t n = p.n();
  PhplExpr f = to_expr(p);
  // T(u, t) = P(u) + t - P(u + t 1): {P <= 1} is closed under u -> u + t 1
  // whenever P(u) + t <= 1, the homogenized form of shd-preimage stability.
  PhplExpr t = f.substitute(lift_rows(n, Rat(1), Rat(0))) + t_coord(n) - f.substitute(lift_rows(n, Rat(1), Rat(1)));
  return is_nonneg(verify_nonneg_ph_pl(t));
}

bool shadow_preimage_closed(const Prevision& fp, const Rat& alpha) {
  if (alpha <= 0 || alpha > 1) throw PreconditionError("alpha must lie in (0,1]");
  const std::size_t n = fp.n();
  PhplExpr f = to_expr(fp);
  PhplExpr t = t_coord(n);
  PhplExpr outside = f.substitute(lift_rows(n, Rat(1), Rat(0))) - t;
  PhplExpr image_inside = t - f.substitute(lift_rows(n, alpha, 1 - alpha));
  return is_nonneg(verify_nonneg_ph_pl(PhplExpr::max({outside, image_inside})));
}

Prevision shadow_gauge(const Prevision& g) {
  const std::size_t n = g.n();
  Extended at_one = eval(g, Point::ones(n));
  if (at_one.is_infinite() || at_one.finite() > 1) {
    throw ImproperShadow("shadow_gauge: G(1) = " + at_one.str() + " > 1, the shadow contains 0");
  }
  MaxOfSuper body = as_max_of_super(g);
  MaxOfSuper out;
  for (const auto& b : body.branches) out.branches.push_back(UpGen{mass_cut(b.gens, false)});
  return simplify(Prevision(n, std::move(out)));
}

Prevision subnorm_superlinear_below(const Prevision& p, const Prevision& f0) {
  require_dim(p.n(), f0.n(), "subnorm_superlinear_below");
  if (!is_subnormalized(p)) throw PreconditionError("subnorm_superlinear_below: P is not subnormalized");
  if (!is_superlinear(f0)) throw PreconditionError("subnorm_superlinear_below: F0 is not superlinear");
  if (!leq(f0, p)) throw PreconditionError("subnorm_superlinear_below: F0 is not below P");
  Prevision f = shadow_gauge(f0);
  verify(is_superlinear(f), "subnorm_superlinear_below: result not superlinear");
  verify(is_subnormalized(f), "subnorm_superlinear_below: result not subnormalized");
  verify(leq(f0, f), "subnorm_superlinear_below: result below F0");
  verify(leq(f, p), "subnorm_superlinear_below: result above P");
  return f;
}

Prevision normalized_sublinear_between(const Prevision& p, const Prevision& f0) {
  require_dim(p.n(), f0.n(), "normalized_sublinear_between");
  const std::size_t n = p.n();
  if (!is_normalized(p)) throw PreconditionError("normalized_sublinear_between: P is not normalized");
  if (!is_sublinear(f0) || !is_subnormalized(f0)) {
    throw PreconditionError("normalized_sublinear_between: F0 is not sublinear and subnormalized");
  }
  if (!leq(p, f0)) throw PreconditionError("normalized_sublinear_between: P is not below F0");
  if (eval_finite(f0, Point::ones(n)) < 1) throw PreconditionError("normalized_sublinear_between: F0(1) < 1");
  DownGen body = as_down_gen(f0);
  Prevision f = simplify(Prevision::sub(DownGen{mass_cut(body.gens, true)}));
  verify(is_sublinear(f), "normalized_sublinear_between: result not sublinear");
  verify(is_normalized(f), "normalized_sublinear_between: result not normalized");
  verify(leq(p, f), "normalized_sublinear_between: result below P");
  verify(leq(f, f0), "normalized_sublinear_between: result above F0");
  return f;
}

}  // namespace prevcalc
