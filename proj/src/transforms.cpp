#include "prevcalc/transforms.hpp"

#include "prevcalc/lp.hpp"
#include "prevcalc/shadow.hpp"

namespace prevcalc {

namespace {

void verify(bool ok, const std::string& what) {
  if (!ok) throw PostconditionFailure(what);
}

void require_flavor(const Prevision& p, Flavor f, const std::string& what) {
  if (!has_flavor(p, f)) throw FlavorMismatch(what + ": prevision is not " + to_string(f));
}

bool flavor_flags(const ClassFlags& c, Flavor f) {
  switch (f) {
    case Flavor::Plain: return true;
    case Flavor::Subnorm: return c.subnormalized;
    case Flavor::Norm: return c.normalized;
  }
  return false;
}

void require_positive_point(const Point& h, const std::string& what) {
  if (!h.strictly_positive()) throw PreconditionError(what + ": h must be strictly positive");
}

Point scaled_unit(std::size_t n, std::size_t i, const Rat& c) {
  Vec v(n, Rat(0));
  v[i] = c;
  return Point(v);
}

std::size_t common_dim(const std::vector<Point>& hs, const std::string& what) {
  if (hs.empty()) throw PreconditionError(what + ": empty list of points");
  for (const auto& h : hs) require_dim(hs.front().size(), h.size(), what.c_str());
  return hs.front().size();
}

// Vertices of {w in simplex : <w, a> >= 1}.
std::vector<Point> simplex_cut(const Point& a) {
  const std::size_t n = a.size();
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] >= 1) out.push_back(Point::unit(n, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(a[i] < 1 && a[j] > 1)) continue;
      Rat t = (a[j] - 1) / (a[j] - a[i]);
      out.push_back(mix(t, Point::unit(n, i), Point::unit(n, j)));
    }
  }
  return out;
}

}  // namespace

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Plain: return "plain";
    case Flavor::Subnorm: return "subnorm";
    case Flavor::Norm: return "norm";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  if (s == "plain") return Flavor::Plain;
  if (s == "subnorm") return Flavor::Subnorm;
  if (s == "norm") return Flavor::Norm;
  throw PreconditionError("unknown flavor '" + s + "'");
}

bool has_flavor(const Prevision& p, Flavor f) {
  switch (f) {
    case Flavor::Plain: return true;
    case Flavor::Subnorm: return is_subnormalized(p);
    case Flavor::Norm: return is_normalized(p);
  }
  return false;
}

Prevision minP(const SmythGen& q) {
  if (q.gens.empty()) throw PreconditionError("minP of an empty Smyth element");
  MinOfSub out;
  for (const auto& g : q.gens) {
    if (!is_sublinear(g)) throw PreconditionError("minP: generator " + describe(g) + " is not sublinear");
    out.branches.push_back(as_down_gen(g));
  }
  return Prevision(q.gens.front().n(), std::move(out));
}

Prevision supP(const HoareGen& c) {
  if (c.gens.empty()) throw PreconditionError("supP of an empty Hoare element");
  MaxOfSuper out;
  for (const auto& g : c.gens) {
    if (!is_superlinear(g)) throw PreconditionError("supP: generator " + describe(g) + " is not superlinear");
    out.branches.push_back(as_up_gen(g));
  }
  return Prevision(c.gens.front().n(), std::move(out));
}

QPredSub nimP(const Prevision& p, Flavor flavor) {
  require_flavor(p, flavor, "nimP");
  return QPredSub{p, flavor};
}

CPredSuper qusP(const Prevision& p, Flavor flavor) {
  require_flavor(p, flavor, "qusP");
  return CPredSuper{p, p.n(), flavor};
}

bool member_nim(const QPredSub& q, const Prevision& f, Flavor flavor) {
  require_dim(q.canonical.n(), f.n(), "member_nim");
  if (has_recession(f)) throw PreconditionError("member_nim: candidate is not finite-valued");
  ClassFlags c = classify(f);
  return c.sublinear && flavor_flags(c, flavor) && leq(q.canonical, f);
}

bool member_qus(const CPredSuper& c, const Prevision& f, Flavor flavor) {
  require_dim(c.n, f.n(), "member_qus");
  ClassFlags k = classify(f);
  if (!k.superlinear || !flavor_flags(k, flavor)) return false;
  return c.is_top() || leq(f, *c.canonical);
}

SandwichResult sandwich(const UpGen& q, const DownGen& p, Flavor flavor) {
  const Prevision lower = Prevision::super(q);
  const Prevision upper = Prevision::sub(p);
  const std::size_t n = lower.n();
  require_dim(n, upper.n(), "sandwich");
  Point witness = Point::zeros(n);
  if (!leq(lower, upper, &witness)) return DominationFailure{witness};

  // variables: w (n), lambda (|q|), mu (|p|)
  const std::size_t nl = q.gens.size();
  const std::size_t nm = p.gens.size();
  const std::size_t nv = n + nl + nm;
  std::vector<Constraint> cs;
  for (std::size_t i = 0; i < n; ++i) {
    Vec lo(nv, Rat(0));
    Vec hi(nv, Rat(0));
    lo[i] = 1;
    hi[i] = -1;
    for (std::size_t k = 0; k < nl; ++k) lo[n + k] = -q.gens[k][i];
    for (std::size_t k = 0; k < nm; ++k) hi[n + nl + k] = p.gens[k][i];
    cs.push_back(make_constraint(lo, Relation::GE, Rat(0)));
    cs.push_back(make_constraint(hi, Relation::GE, Rat(0)));
  }
  Vec sl(nv, Rat(0));
  Vec sm(nv, Rat(0));
  for (std::size_t k = 0; k < nl; ++k) sl[n + k] = 1;
  for (std::size_t k = 0; k < nm; ++k) sm[n + nl + k] = 1;
  cs.push_back(make_constraint(sl, Relation::EQ, Rat(1)));
  cs.push_back(make_constraint(sm, Relation::EQ, Rat(1)));
  if (flavor != Flavor::Plain) {
    Vec mass(nv, Rat(0));
    for (std::size_t i = 0; i < n; ++i) mass[i] = 1;
    cs.push_back(make_constraint(mass, flavor == Flavor::Norm ? Relation::EQ : Relation::LE, Rat(1)));
  }
  Vec x;
  LpOptions opts;
  opts.all_nonneg = true;
  opts.lexicographic = true;
  if (!lp_feasible(nv, cs, &x, opts)) {
    throw FlavorMismatch("sandwich: domination holds but no " + to_string(flavor) + " linear prevision fits between");
  }
  Point w(Vec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)));
  const Prevision lin = Prevision::linear(w);
  verify(leq(lower, lin) && leq(lin, upper), "sandwich: linear prevision is not between the bounds");
  return LinearPrev{w};
}

QPredSub orthogonal_super_to_sub(const std::vector<Prevision>& fam, std::size_t n, Flavor flavor) {
  for (const auto& f : fam) {
    require_dim(n, f.n(), "orthogonal_family");
    if (!is_superlinear(f)) throw PreconditionError("orthogonal_family: " + describe(f) + " is not superlinear");
  }
  if (fam.empty()) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return nimP(flavor == Flavor::Norm ? unit_prevision(UnitKind::Min, all, n) : Prevision::zero(n), flavor);
  }
  return nimP(combine(Combine::sup(), fam), flavor);
}

CPredSuper orthogonal_sub_to_super(const std::vector<Prevision>& fam, std::size_t n, Flavor flavor) {
  for (const auto& f : fam) {
    require_dim(n, f.n(), "orthogonal_family");
    if (!is_sublinear(f)) throw PreconditionError("orthogonal_family: " + describe(f) + " is not sublinear");
  }
  if (fam.empty()) return CPredSuper::top(n, flavor);
  return qusP(combine(Combine::inf(), fam), flavor);
}

Orthogonal orthogonal_family(OrthDirection dir, const std::vector<Prevision>& fam, std::size_t n, Flavor flavor) {
  if (dir == OrthDirection::SuperToSub) return orthogonal_super_to_sub(fam, n, flavor);
  return orthogonal_sub_to_super(fam, n, flavor);
}

Prevision tight_sublinear_witness(const Prevision& p, const Point& h, Flavor flavor) {
  require_dim(p.n(), h.size(), "tight_sublinear_witness");
  require_positive_point(h, "tight_sublinear_witness");
  require_flavor(p, flavor, "tight_sublinear_witness");
  const std::size_t n = p.n();
  const Rat ph = eval_finite(p, h);

  Prevision f = Prevision::zero(n);
  if (ph == 0) {
    // P(x) <= max_i (x_i / h_i) P(h) = 0, so P vanishes.
  } else if (flavor == Flavor::Plain) {
    DownGen body;
    for (std::size_t i = 0; i < n; ++i) body.gens.push_back(scaled_unit(n, i, ph / h[i]));
    f = simplify(Prevision::sub(std::move(body)));
  } else {
    GaugeForm g{{(1 / ph) * h, Point::ones(n)}, GaugeDirection::Down};
    f = simplify(Prevision::sub(down_gauge_support(g, n)));
    if (flavor == Flavor::Norm) f = normalized_sublinear_between(p, f);
  }
  ClassFlags c = classify(f);
  verify(c.sublinear && flavor_flags(c, flavor), "tight_sublinear_witness: witness lacks the flavor");
  verify(leq(p, f), "tight_sublinear_witness: witness is not above P");
  verify(eval_finite(f, h) == ph, "tight_sublinear_witness: witness is not tight at h");
  return f;
}

CornerWitness corner_superlinear_witness_ex(const Prevision& p, const Point& h, const Rat& r, Flavor flavor) {
  require_dim(p.n(), h.size(), "corner_superlinear_witness");
  require_positive_point(h, "corner_superlinear_witness");
  require_flavor(p, flavor, "corner_superlinear_witness");
  const std::size_t n = p.n();
  const Rat ph = eval_finite(p, h);
  if (r <= 0 || r >= ph) throw PreconditionError("corner_superlinear_witness: need 0 < r < P(h)");
  const Rat delta = (1 - r / ph) / 2;
  const Point a = ((1 - delta) / r) * h;

  CornerWitness out{Prevision::zero(n), false};
  UpGen plain;
  for (std::size_t i = 0; i < n; ++i) plain.gens.push_back(scaled_unit(n, i, 1 / a[i]));
  const Prevision fplain = simplify(Prevision::super(std::move(plain)));
  switch (flavor) {
    case Flavor::Plain:
      out.f = fplain;
      break;
    case Flavor::Subnorm:
      out.f = subnorm_superlinear_below(p, fplain);
      break;
    case Flavor::Norm: {
      Prevision two_ray = Prevision::gauge({Point::ones(n), a}, GaugeDirection::Up);
      if (is_normalized(two_ray)) {
        out.f = two_ray;
      } else {
        out.f = simplify(Prevision::super(UpGen{simplex_cut(a)}));
        out.shadow_fallback = true;
      }
      break;
    }
  }
  ClassFlags c = classify(out.f);
  verify(c.superlinear && flavor_flags(c, flavor), "corner_superlinear_witness: witness lacks the flavor");
  verify(leq(out.f, p), "corner_superlinear_witness: witness is not below P");
  verify(eval_finite(out.f, h) > r, "corner_superlinear_witness: witness does not exceed r at h");
  return out;
}

Prevision corner_superlinear_witness(const Prevision& p, const Point& h, const Rat& r, Flavor flavor) {
  return corner_superlinear_witness_ex(p, h, r, flavor).f;
}

PhplExpr composed_on_simplex(const Prevision& p, const std::vector<Point>& hs) {
  const std::size_t n = common_dim(hs, "composed_on_simplex");
  require_dim(p.n(), n, "composed_on_simplex");
  std::vector<Vec> rows(n, Vec(hs.size(), Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < hs.size(); ++k) rows[i][k] = hs[k][i];
  }
  return to_expr(p).substitute(rows);
}

BoxResult box_union_criterion(const Prevision& p, const std::vector<Point>& hs) {
  SimplexExtremum best = maximize_on_simplex(composed_on_simplex(p, hs));
  if (best.value > 1) return BoxHolds{Point(best.argument), best.value};
  Prevision f = Prevision::gauge(hs, GaugeDirection::Down);
  verify(leq(p, f), "box_union_criterion: witness is not above P");
  for (const auto& h : hs) {
    Extended v = eval(f, h);
    verify(!v.is_infinite() && v.finite() <= 1, "box_union_criterion: witness exceeds 1 on a box point");
  }
  return BoxFails{f};
}

DiaResult dia_intersection_criterion(const Prevision& p, const std::vector<Point>& hs) {
  for (const auto& h : hs) require_positive_point(h, "dia_intersection_criterion");
  SimplexExtremum low = minimize_on_simplex(composed_on_simplex(p, hs));
  if (low.value <= 1) return DiaFails{Point(low.argument), low.value};
  const Rat delta = (1 - 1 / low.value) / 2;
  std::vector<Point> hull;
  for (const auto& h : hs) hull.push_back((1 - delta) * h);
  Prevision f = Prevision::gauge(std::move(hull), GaugeDirection::Up);
  verify(leq(f, p), "dia_intersection_criterion: witness is not below P");
  for (const auto& h : hs) verify(eval_finite(f, h) > 1, "dia_intersection_criterion: witness not above 1 on a point");
  return DiaHolds{f, low.value};
}

std::string to_string(const Interval& i) {
  if (i.empty) return "empty";
  return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]";
}

Interval mix_dominance_range(const Prevision& t, const Prevision& p1, const Prevision& p2) {
  require_dim(t.n(), p1.n(), "mix_dominance_range");
  require_dim(t.n(), p2.n(), "mix_dominance_range");
  const PhplExpr et = to_expr(t);
  const PhplExpr e1 = to_expr(p1);
  const PhplExpr e2 = to_expr(p2);
  Rat lo = 0;
  Rat hi = 1;
  for (const auto& v : arrangement_vertices({et, e1, e2})) {
    // T - P2 - a (P1 - P2) >= 0 at v
    Rat c0 = et.eval(v) - e2.eval(v);
    Rat c1 = e1.eval(v) - e2.eval(v);
    if (c1 > 0) {
      hi = std::min(hi, Rat(c0 / c1));
    } else if (c1 < 0) {
      lo = std::max(lo, Rat(c0 / c1));
    } else if (c0 < 0) {
      return Interval{};
    }
  }
  if (lo > hi) return Interval{};
  return Interval{false, lo, hi};
}

QPredSub double_orthogonal_roundtrip(const QPredSub& q) {
  const std::size_t n = q.canonical.n();
  const Prevision sub_form(n, as_min_of_sub(q.canonical));
  const CPredSuper c = qusP(sub_form, q.flavor);
  const Prevision super_form(n, as_max_of_super(*c.canonical));
  QPredSub back = nimP(super_form, q.flavor);
  verify(equivalent(back.canonical, q.canonical), "double_orthogonal_roundtrip: canonical changed");
  return back;
}

CPredSuper double_orthogonal_roundtrip(const CPredSuper& c) {
  if (c.is_top()) return c;
  const std::size_t n = c.n;
  const Prevision super_form(n, as_max_of_super(*c.canonical));
  const QPredSub q = nimP(super_form, c.flavor);
  const Prevision sub_form(n, as_min_of_sub(q.canonical));
  CPredSuper back = qusP(sub_form, c.flavor);
  verify(equivalent(*back.canonical, *c.canonical), "double_orthogonal_roundtrip: canonical changed");
  return back;
}

}  // namespace prevcalc
