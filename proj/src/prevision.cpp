#include "prevcalc/prevision.hpp"

#include "prevcalc/lp.hpp"

#include <algorithm>
#include <set>

namespace prevcalc {

namespace {

void check_points(std::size_t n, const std::vector<Point>& pts, const char* what) {
  if (pts.empty()) throw std::invalid_argument(std::string(what) + " has no generators");
  for (const auto& p : pts) require_dim(n, p.size(), what);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t infer_dim(const Prevision::Form& f) {
  return std::visit(Overloaded{
                        [](const LinearPrev& l) { return l.weights.size(); },
                        [](const MinOfSub& m) {
                          if (m.branches.empty() || m.branches[0].gens.empty()) {
                            throw std::invalid_argument("min_of_sub has no branches");
                          }
                          return m.branches[0].gens[0].size();
                        },
                        [](const MaxOfSuper& m) {
                          if (m.branches.empty() || m.branches[0].gens.empty()) {
                            throw std::invalid_argument("max_of_super has no branches");
                          }
                          return m.branches[0].gens[0].size();
                        },
                        [](const GaugeForm& g) {
                          if (g.hull_points.empty()) throw std::invalid_argument("gauge has no hull points");
                          return g.hull_points[0].size();
                        },
                    },
                    f);
}

Point unit_point(std::size_t n, std::size_t i) { return Point::unit(n, i); }

Rat max_dot(const std::vector<Point>& gens, const Point& h) {
  Rat best = dot(gens[0], h);
  for (std::size_t i = 1; i < gens.size(); ++i) best = std::max(best, dot(gens[i], h));
  return best;
}

Rat min_dot(const std::vector<Point>& gens, const Point& h) {
  Rat best = dot(gens[0], h);
  for (std::size_t i = 1; i < gens.size(); ++i) best = std::min(best, dot(gens[i], h));
  return best;
}

Extended gauge_eval(const GaugeForm& g, const Point& h) {
  if (h.is_zero()) return Rat(0);
  const std::size_t k = g.hull_points.size();
  const std::size_t n = h.size();
  std::vector<Constraint> cs;
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = g.hull_points[j][i];
    cs.push_back(make_constraint(std::move(row),
                                 g.direction == GaugeDirection::Down ? Relation::GE : Relation::LE, h[i]));
  }
  LpOptions opts;
  opts.all_nonneg = true;
  opts.lexicographic = false;
  auto r = lp_solve(g.direction == GaugeDirection::Down ? Sense::Min : Sense::Max, LinExpr{Vec(k, Rat(1))}, cs,
                    opts);
  if (std::holds_alternative<LpInfeasible>(r)) return Extended::infinity();
  if (std::holds_alternative<LpUnbounded>(r)) return Extended::infinity();
  return std::get<LpOptimal>(r).value;
}

// Vertices of {w >= 0 on `coords`, rows . w (rel) 1} where rel is LE for
// down gauges and GE for up gauges.
std::vector<Point> polar_vertices(const std::vector<Point>& hull, std::size_t n, const std::vector<std::size_t>& coords,
                                  bool down) {
  const std::size_t d = coords.size();
  std::vector<Vec> planes;
  Vec rhs;
  for (std::size_t i = 0; i < d; ++i) {
    Vec e(d, Rat(0));
    e[i] = 1;
    planes.push_back(std::move(e));
    rhs.push_back(Rat(0));
  }
  for (const auto& p : hull) {
    Vec row(d);
    for (std::size_t i = 0; i < d; ++i) row[i] = p[coords[i]];
    planes.push_back(std::move(row));
    rhs.push_back(Rat(1));
  }
  std::set<Vec> verts;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  const std::size_t total = planes.size();
  while (true) {
    std::vector<Vec> a;
    Vec b;
    for (auto i : idx) {
      a.push_back(planes[i]);
      b.push_back(rhs[i]);
    }
    Vec w;
    if (solve_linear_system(std::move(a), std::move(b), w)) {
      bool ok = std::all_of(w.begin(), w.end(), [](const Rat& c) { return c >= 0; });
      for (std::size_t j = d; ok && j < total; ++j) {
        Rat v = dot(planes[j], w);
        ok = down ? v <= 1 : v >= 1;
      }
      if (ok) verts.insert(std::move(w));
    }
    std::size_t pos = d;
    while (pos > 0 && idx[pos - 1] == total - d + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
  std::vector<Point> out;
  for (const auto& w : verts) {
    Vec full(n, Rat(0));
    for (std::size_t i = 0; i < d; ++i) full[coords[i]] = w[i];
    out.emplace_back(std::move(full));
  }
  if (out.empty()) out.push_back(Point::zeros(n));
  return out;
}

PhplExpr max_expr(const std::vector<Point>& gens) {
  std::vector<PhplExpr> leaves;
  for (const auto& g : gens) leaves.push_back(PhplExpr::linear(g.coords()));
  return PhplExpr::max(std::move(leaves));
}

PhplExpr min_expr(const std::vector<Point>& gens) {
  std::vector<PhplExpr> leaves;
  for (const auto& g : gens) leaves.push_back(PhplExpr::linear(g.coords()));
  return PhplExpr::min(std::move(leaves));
}

// Support expression, ignoring recession (finite part on the face).
PhplExpr finite_expr(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev& l) { return PhplExpr::linear(l.weights.coords()); },
                        [](const MinOfSub& m) {
                          std::vector<PhplExpr> kids;
                          for (const auto& b : m.branches) kids.push_back(max_expr(b.gens));
                          return PhplExpr::min(std::move(kids));
                        },
                        [](const MaxOfSuper& m) {
                          std::vector<PhplExpr> kids;
                          for (const auto& b : m.branches) kids.push_back(min_expr(b.gens));
                          return PhplExpr::max(std::move(kids));
                        },
                        [&](const GaugeForm& g) {
                          if (g.direction == GaugeDirection::Down) return max_expr(down_gauge_support(g, p.n()).gens);
                          return min_expr(up_gauge_support(g, p.n()).gens);
                        },
                    },
                    p.form());
}

// Restriction of f to the coordinate face `keep` (dimension = count of keep).
PhplExpr restrict_to_face(const PhplExpr& f, const std::vector<bool>& keep) {
  std::size_t d = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
  std::vector<Vec> rows(keep.size(), Vec(d, Rat(0)));
  std::size_t k = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) rows[i][k++] = 1;
  }
  return f.substitute(rows);
}

Point embed_face(const Vec& w, const std::vector<bool>& keep) {
  Vec full(keep.size(), Rat(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) full[i] = w[k++];
  }
  return Point(std::move(full));
}

std::optional<Point> negative_point(const PhplExpr& f, const std::vector<bool>& keep) {
  auto verdict = verify_nonneg_ph_pl(f);
  if (is_nonneg(verdict)) return std::nullopt;
  return embed_face(std::get<Negative>(verdict).witness, keep);
}

bool all_true(const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); }

}  // namespace

Prevision::Prevision(std::size_t n, Form form) : n_(n), form_(std::move(form)) {
  if (n_ == 0) throw DimensionError("prevision of dimension 0");
  require_dim(n_, infer_dim(form_), "prevision");
  std::visit(Overloaded{
                 [&](const LinearPrev& l) { require_dim(n_, l.weights.size(), "linear weights"); },
                 [&](const MinOfSub& m) {
                   if (m.branches.empty()) throw std::invalid_argument("min_of_sub has no branches");
                   for (const auto& b : m.branches) check_points(n_, b.gens, "down generators");
                 },
                 [&](const MaxOfSuper& m) {
                   if (m.branches.empty()) throw std::invalid_argument("max_of_super has no branches");
                   for (const auto& b : m.branches) check_points(n_, b.gens, "up generators");
                 },
                 [&](const GaugeForm& g) {
                   check_points(n_, g.hull_points, "gauge hull");
                   if (g.direction == GaugeDirection::Up) {
                     for (const auto& p : g.hull_points) {
                       if (p.is_zero()) throw std::invalid_argument("up gauge hull point is zero");
                     }
                   }
                 },
             },
             form_);
}

Prevision Prevision::linear(Point weights) {
  std::size_t n = weights.size();
  return Prevision(n, LinearPrev{std::move(weights)});
}

Prevision Prevision::zero(std::size_t n) { return linear(Point::zeros(n)); }

Prevision Prevision::sub(DownGen body) { return min_of_sub({std::move(body)}); }
Prevision Prevision::super(UpGen body) { return max_of_super({std::move(body)}); }

Prevision Prevision::min_of_sub(std::vector<DownGen> branches) {
  MinOfSub m{std::move(branches)};
  std::size_t n = infer_dim(m);
  return Prevision(n, std::move(m));
}

Prevision Prevision::max_of_super(std::vector<UpGen> branches) {
  MaxOfSuper m{std::move(branches)};
  std::size_t n = infer_dim(m);
  return Prevision(n, std::move(m));
}

Prevision Prevision::gauge(std::vector<Point> hull_points, GaugeDirection direction) {
  GaugeForm g{std::move(hull_points), direction};
  std::size_t n = infer_dim(g);
  return Prevision(n, std::move(g));
}

Extended eval(const Prevision& p, const Point& h) {
  require_dim(p.n(), h.size(), "eval");
  return std::visit(Overloaded{
                        [&](const LinearPrev& l) -> Extended { return dot(l.weights, h); },
                        [&](const MinOfSub& m) -> Extended {
                          Rat best = max_dot(m.branches[0].gens, h);
                          for (std::size_t i = 1; i < m.branches.size(); ++i) {
                            best = std::min(best, max_dot(m.branches[i].gens, h));
                          }
                          return best;
                        },
                        [&](const MaxOfSuper& m) -> Extended {
                          Rat best = min_dot(m.branches[0].gens, h);
                          for (std::size_t i = 1; i < m.branches.size(); ++i) {
                            best = std::max(best, min_dot(m.branches[i].gens, h));
                          }
                          return best;
                        },
                        [&](const GaugeForm& g) { return gauge_eval(g, h); },
                    },
                    p.form());
}

Rat eval_finite(const Prevision& p, const Point& h) { return eval(p, h).finite(); }

std::vector<bool> recession_coords(const Prevision& p) {
  std::vector<bool> rec(p.n(), false);
  if (const auto* g = std::get_if<GaugeForm>(&p.form()); g && g->direction == GaugeDirection::Down) {
    for (std::size_t i = 0; i < p.n(); ++i) {
      rec[i] = std::all_of(g->hull_points.begin(), g->hull_points.end(), [&](const Point& q) { return q[i] == 0; });
    }
  }
  return rec;
}

bool has_recession(const Prevision& p) {
  auto r = recession_coords(p);
  return std::any_of(r.begin(), r.end(), [](bool b) { return b; });
}

PhplExpr to_expr(const Prevision& p) {
  if (has_recession(p)) throw PreconditionError("gauge with recession is not finite-valued");
  return finite_expr(p);
}

DownGen down_gauge_support(const GaugeForm& g, std::size_t n) {
  if (g.direction != GaugeDirection::Down) throw std::invalid_argument("down_gauge_support on an up gauge");
  std::vector<std::size_t> face;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::any_of(g.hull_points.begin(), g.hull_points.end(), [&](const Point& q) { return q[i] != 0; })) {
      face.push_back(i);
    }
  }
  return DownGen{polar_vertices(g.hull_points, n, face, true)};
}

UpGen up_gauge_support(const GaugeForm& g, std::size_t n) {
  if (g.direction != GaugeDirection::Up) throw std::invalid_argument("up_gauge_support on a down gauge");
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return UpGen{polar_vertices(g.hull_points, n, all, false)};
}

bool leq(const Prevision& p, const Prevision& q, Point* witness) {
  require_dim(p.n(), q.n(), "compare");
  const auto rp = recession_coords(p);
  const auto rq = recession_coords(q);
  for (std::size_t i = 0; i < p.n(); ++i) {
    if (rp[i] && !rq[i]) {
      if (witness) *witness = unit_point(p.n(), i);
      return false;
    }
  }
  std::vector<bool> keep(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) keep[i] = !rq[i];
  if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) return true;
  PhplExpr diff = finite_expr(q) - finite_expr(p);
  if (!all_true(keep)) diff = restrict_to_face(diff, keep);
  auto neg = negative_point(diff, keep);
  if (!neg) return true;
  if (witness) *witness = *neg;
  return false;
}

Comparison compare(const Prevision& p, const Prevision& q) {
  Comparison c{Order::EQ, std::nullopt, std::nullopt};
  Point above;
  Point below;
  bool le = leq(p, q, &above);
  bool ge = leq(q, p, &below);
  if (!le) c.p_above = above;
  if (!ge) c.p_below = below;
  if (le && ge) {
    c.order = Order::EQ;
  } else if (le) {
    c.order = Order::LE;
  } else if (ge) {
    c.order = Order::GE;
  } else {
    c.order = Order::Incomparable;
  }
  return c;
}

bool equivalent(const Prevision& p, const Prevision& q) { return compare(p, q).order == Order::EQ; }

std::string to_string(Order o) {
  switch (o) {
    case Order::LE:
      return "LE";
    case Order::GE:
      return "GE";
    case Order::EQ:
      return "EQ";
    case Order::Incomparable:
      return "Incomparable";
  }
  return "?";
}

namespace {

bool structurally_sublinear(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev&) { return true; },
                        [](const MinOfSub& m) { return m.branches.size() == 1; },
                        [](const MaxOfSuper& m) { return m.branches.size() == 1 && m.branches[0].gens.size() == 1; },
                        [](const GaugeForm& g) { return g.direction == GaugeDirection::Down; },
                    },
                    p.form());
}

bool structurally_superlinear(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev&) { return true; },
                        [](const MinOfSub& m) { return m.branches.size() == 1 && m.branches[0].gens.size() == 1; },
                        [](const MaxOfSuper& m) { return m.branches.size() == 1; },
                        [](const GaugeForm& g) { return g.direction == GaugeDirection::Up; },
                    },
                    p.form());
}

PhplExpr pieces_max(const std::vector<Vec>& pieces) {
  std::vector<PhplExpr> leaves;
  for (const auto& g : pieces) leaves.push_back(PhplExpr::linear(g));
  return PhplExpr::max(std::move(leaves));
}

PhplExpr pieces_min(const std::vector<Vec>& pieces) {
  std::vector<PhplExpr> leaves;
  for (const auto& g : pieces) leaves.push_back(PhplExpr::linear(g));
  return PhplExpr::min(std::move(leaves));
}

bool expr_convex(const PhplExpr& f) {
  auto pieces = linear_pieces(f);
  if (pieces.size() <= 1) return true;
  return is_nonneg(verify_nonneg_ph_pl(f - pieces_max(pieces)));
}

bool expr_concave(const PhplExpr& f) {
  auto pieces = linear_pieces(f);
  if (pieces.size() <= 1) return true;
  return is_nonneg(verify_nonneg_ph_pl(pieces_min(pieces) - f));
}

// Q(h, s) = s + f(h) - f(h + s 1) on R_+^{n+1}.
PhplExpr normalization_gap(const PhplExpr& f) {
  const std::size_t n = f.dim();
  std::vector<Vec> lift(n, Vec(n + 1, Rat(0)));
  std::vector<Vec> shift(n, Vec(n + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    lift[i][i] = 1;
    shift[i][i] = 1;
    shift[i][n] = 1;
  }
  Vec s(n + 1, Rat(0));
  s[n] = 1;
  return PhplExpr::sum({PhplExpr::linear(s), f.substitute(lift), PhplExpr::scale(Rat(-1), f.substitute(shift))});
}

}  // namespace

bool is_sublinear(const Prevision& p) {
  if (structurally_sublinear(p)) return true;
  return expr_convex(to_expr(p));
}

bool is_superlinear(const Prevision& p) {
  if (structurally_superlinear(p)) return true;
  if (has_recession(p)) {
    std::vector<bool> keep(p.n());
    auto rec = recession_coords(p);
    for (std::size_t i = 0; i < p.n(); ++i) keep[i] = !rec[i];
    if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) return true;
    return expr_concave(restrict_to_face(finite_expr(p), keep));
  }
  return expr_concave(to_expr(p));
}

bool is_subnormalized(const Prevision& p) {
  if (has_recession(p)) return false;
  return is_nonneg(verify_nonneg_ph_pl(normalization_gap(to_expr(p))));
}

bool is_normalized(const Prevision& p) {
  if (has_recession(p)) return false;
  auto gap = normalization_gap(to_expr(p));
  return is_nonneg(verify_nonneg_ph_pl(gap)) && is_nonneg(verify_nonneg_ph_pl(PhplExpr::scale(Rat(-1), gap)));
}

ClassFlags classify(const Prevision& p) {
  ClassFlags f;
  f.sublinear = is_sublinear(p);
  f.superlinear = is_superlinear(p);
  if (!has_recession(p)) {
    auto gap = normalization_gap(to_expr(p));
    f.subnormalized = is_nonneg(verify_nonneg_ph_pl(gap));
    f.normalized = f.subnormalized && is_nonneg(verify_nonneg_ph_pl(PhplExpr::scale(Rat(-1), gap)));
  }
  return f;
}

bool in_down_hull(const Point& g, const std::vector<Point>& gens) {
  for (const auto& s : gens) {
    if (leq_coordinatewise(g, s)) return true;
  }
  const std::size_t k = gens.size();
  std::vector<Constraint> cs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = gens[j][i];
    cs.push_back(make_constraint(std::move(row), Relation::GE, g[i]));
  }
  cs.push_back(make_constraint(Vec(k, Rat(1)), Relation::EQ, Rat(1)));
  LpOptions opts;
  opts.all_nonneg = true;
  return lp_feasible(k, cs, nullptr, opts);
}

bool in_up_hull(const Point& g, const std::vector<Point>& gens) {
  for (const auto& s : gens) {
    if (leq_coordinatewise(s, g)) return true;
  }
  const std::size_t k = gens.size();
  std::vector<Constraint> cs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = gens[j][i];
    cs.push_back(make_constraint(std::move(row), Relation::LE, g[i]));
  }
  cs.push_back(make_constraint(Vec(k, Rat(1)), Relation::EQ, Rat(1)));
  LpOptions opts;
  opts.all_nonneg = true;
  return lp_feasible(k, cs, nullptr, opts);
}

namespace {

template <class InHull>
std::vector<Point> prune_gens(std::vector<Point> gens, InHull in_hull) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<Point> others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    if (in_hull(gens[i], others)) gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return gens;
}

// Drops branch i when some other branch j is contained (all generators of j
// lie in the hull of i); removal is sequential so equal branches keep one.
template <class Branch, class InHull>
std::vector<Branch> prune_branches(std::vector<Branch> branches, InHull in_hull) {
  for (auto& b : branches) b.gens = prune_gens(std::move(b.gens), in_hull);
  std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) { return a.gens < b.gens; });
  branches.erase(std::unique(branches.begin(), branches.end()), branches.end());
  for (std::size_t i = branches.size(); i-- > 0;) {
    if (branches.size() == 1) break;
    for (std::size_t j = 0; j < branches.size(); ++j) {
      if (j == i) continue;
      bool contained = std::all_of(branches[j].gens.begin(), branches[j].gens.end(),
                                   [&](const Point& g) { return in_hull(g, branches[i].gens); });
      if (contained) {
        branches.erase(branches.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
  }
  return branches;
}

}  // namespace

MinOfSub prune(MinOfSub m) { return MinOfSub{prune_branches(std::move(m.branches), in_down_hull)}; }
MaxOfSuper prune(MaxOfSuper m) { return MaxOfSuper{prune_branches(std::move(m.branches), in_up_hull)}; }

Prevision simplify(const Prevision& p) {
  const std::size_t n = p.n();
  return std::visit(Overloaded{
                        [&](const LinearPrev&) { return p; },
                        [&](const GaugeForm&) { return p; },
                        [&](const MinOfSub& m) {
                          auto q = prune(m);
                          if (q.branches.size() == 1 && q.branches[0].gens.size() == 1) {
                            return Prevision::linear(q.branches[0].gens[0]);
                          }
                          return Prevision(n, std::move(q));
                        },
                        [&](const MaxOfSuper& m) {
                          auto q = prune(m);
                          if (q.branches.size() == 1 && q.branches[0].gens.size() == 1) {
                            return Prevision::linear(q.branches[0].gens[0]);
                          }
                          return Prevision(n, std::move(q));
                        },
                    },
                    p.form());
}

namespace {

// Every choice of one element per list.
template <class T>
std::vector<std::vector<T>> choices(const std::vector<std::vector<T>>& lists) {
  std::vector<std::vector<T>> out{{}};
  for (const auto& l : lists) {
    std::vector<std::vector<T>> next;
    for (const auto& prefix : out) {
      for (const auto& x : l) {
        auto v = prefix;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

MinOfSub as_min_of_sub(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev& l) { return MinOfSub{{DownGen{{l.weights}}}}; },
                        [](const MinOfSub& m) { return m; },
                        [&](const GaugeForm& g) {
                          if (g.direction == GaugeDirection::Down) {
                            if (has_recession(p)) throw PreconditionError("gauge with recession has no finite form");
                            return MinOfSub{{down_gauge_support(g, p.n())}};
                          }
                          MinOfSub out;
                          for (const auto& w : up_gauge_support(g, p.n()).gens) out.branches.push_back(DownGen{{w}});
                          return prune(std::move(out));
                        },
                        [](const MaxOfSuper& m) {
                          std::vector<std::vector<Point>> lists;
                          for (const auto& b : m.branches) lists.push_back(b.gens);
                          MinOfSub out;
                          for (auto& c : choices(lists)) out.branches.push_back(DownGen{std::move(c)});
                          return prune(std::move(out));
                        },
                    },
                    p.form());
}

MaxOfSuper as_max_of_super(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev& l) { return MaxOfSuper{{UpGen{{l.weights}}}}; },
                        [](const MaxOfSuper& m) { return m; },
                        [&](const GaugeForm& g) {
                          if (g.direction == GaugeDirection::Up) return MaxOfSuper{{up_gauge_support(g, p.n())}};
                          if (has_recession(p)) throw PreconditionError("gauge with recession has no finite form");
                          MaxOfSuper out;
                          for (const auto& w : down_gauge_support(g, p.n()).gens) out.branches.push_back(UpGen{{w}});
                          return prune(std::move(out));
                        },
                        [](const MinOfSub& m) {
                          std::vector<std::vector<Point>> lists;
                          for (const auto& b : m.branches) lists.push_back(b.gens);
                          MaxOfSuper out;
                          for (auto& c : choices(lists)) out.branches.push_back(UpGen{std::move(c)});
                          return prune(std::move(out));
                        },
                    },
                    p.form());
}

DownGen as_down_gen(const Prevision& p) {
  if (const auto* l = std::get_if<LinearPrev>(&p.form())) return DownGen{{l->weights}};
  if (const auto* g = std::get_if<GaugeForm>(&p.form()); g && g->direction == GaugeDirection::Down) {
    if (has_recession(p)) throw PreconditionError("gauge with recession has no finite body");
    return prune(MinOfSub{{down_gauge_support(*g, p.n())}}).branches[0];
  }
  if (const auto* m = std::get_if<MinOfSub>(&p.form()); m && m->branches.size() == 1) {
    return prune(*m).branches[0];
  }
  if (!is_sublinear(p)) throw PreconditionError("prevision is not sublinear");
  std::vector<Point> gens;
  for (auto& v : linear_pieces(to_expr(p))) gens.emplace_back(std::move(v));
  return prune(MinOfSub{{DownGen{std::move(gens)}}}).branches[0];
}

UpGen as_up_gen(const Prevision& p) {
  if (const auto* l = std::get_if<LinearPrev>(&p.form())) return UpGen{{l->weights}};
  if (const auto* g = std::get_if<GaugeForm>(&p.form()); g && g->direction == GaugeDirection::Up) {
    return prune(MaxOfSuper{{up_gauge_support(*g, p.n())}}).branches[0];
  }
  if (const auto* m = std::get_if<MaxOfSuper>(&p.form()); m && m->branches.size() == 1) {
    return prune(*m).branches[0];
  }
  if (!is_superlinear(p)) throw PreconditionError("prevision is not superlinear");
  std::vector<Point> gens;
  for (auto& v : linear_pieces(to_expr(p))) gens.emplace_back(std::move(v));
  return prune(MaxOfSuper{{UpGen{std::move(gens)}}}).branches[0];
}

namespace {

enum class Side { Sub, Super, Either };

Side side_of(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev&) { return Side::Either; },
                        [](const MinOfSub&) { return Side::Sub; },
                        [](const MaxOfSuper&) { return Side::Super; },
                        [](const GaugeForm& g) { return g.direction == GaugeDirection::Down ? Side::Sub : Side::Super; },
                    },
                    p.form());
}

bool all_side(const std::vector<Prevision>& args, Side s) {
  return std::all_of(args.begin(), args.end(), [&](const Prevision& p) {
    Side t = side_of(p);
    return t == s || t == Side::Either;
  });
}

std::vector<Point> minkowski(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x + y);
  }
  return out;
}

Prevision scaled(const Rat& a, const Prevision& p) {
  if (a < 0) throw PreconditionError("scale factor must be >= 0");
  if (a == 0) return Prevision::zero(p.n());
  return std::visit(Overloaded{
                        [&](const LinearPrev& l) { return Prevision::linear(a * l.weights); },
                        [&](const MinOfSub& m) {
                          MinOfSub out = m;
                          for (auto& b : out.branches) {
                            for (auto& g : b.gens) g = a * g;
                          }
                          return Prevision(p.n(), std::move(out));
                        },
                        [&](const MaxOfSuper& m) {
                          MaxOfSuper out = m;
                          for (auto& b : out.branches) {
                            for (auto& g : b.gens) g = a * g;
                          }
                          return Prevision(p.n(), std::move(out));
                        },
                        [&](const GaugeForm& g) {
                          // the gauge of hull/a is a times the gauge of hull
                          GaugeForm out = g;
                          for (auto& q : out.hull_points) q = (1 / a) * q;
                          return Prevision(p.n(), std::move(out));
                        },
                    },
                    p.form());
}

Prevision add_all(const std::vector<Prevision>& args) {
  const std::size_t n = args.front().n();
  if (all_side(args, Side::Super) && !all_side(args, Side::Sub)) {
    std::vector<UpGen> acc = as_max_of_super(args.front()).branches;
    for (std::size_t k = 1; k < args.size(); ++k) {
      std::vector<UpGen> next;
      for (const auto& b : as_max_of_super(args[k]).branches) {
        for (const auto& a : acc) next.push_back(UpGen{minkowski(a.gens, b.gens)});
      }
      acc = prune(MaxOfSuper{std::move(next)}).branches;
    }
    return simplify(Prevision(n, MaxOfSuper{std::move(acc)}));
  }
  std::vector<DownGen> acc = as_min_of_sub(args.front()).branches;
  for (std::size_t k = 1; k < args.size(); ++k) {
    std::vector<DownGen> next;
    for (const auto& b : as_min_of_sub(args[k]).branches) {
      for (const auto& a : acc) next.push_back(DownGen{minkowski(a.gens, b.gens)});
    }
    acc = prune(MinOfSub{std::move(next)}).branches;
  }
  return simplify(Prevision(n, MinOfSub{std::move(acc)}));
}

}  // namespace

Prevision combine(const Combine& op, const std::vector<Prevision>& args) {
  if (args.empty()) throw PreconditionError("combine of an empty family");
  const std::size_t n = args.front().n();
  for (const auto& a : args) require_dim(n, a.n(), "combine");
  switch (op.kind) {
    case CombineKind::Sup: {
      if (all_side(args, Side::Sub)) {
        std::vector<std::vector<DownGen>> lists;
        for (const auto& a : args) lists.push_back(as_min_of_sub(a).branches);
        MinOfSub out;
        for (const auto& c : choices(lists)) {
          DownGen u;
          for (const auto& b : c) u.gens.insert(u.gens.end(), b.gens.begin(), b.gens.end());
          out.branches.push_back(std::move(u));
        }
        return simplify(Prevision(n, std::move(out)));
      }
      MaxOfSuper out;
      for (const auto& a : args) {
        auto m = as_max_of_super(a);
        out.branches.insert(out.branches.end(), m.branches.begin(), m.branches.end());
      }
      return simplify(Prevision(n, std::move(out)));
    }
    case CombineKind::Inf: {
      if (all_side(args, Side::Super)) {
        std::vector<std::vector<UpGen>> lists;
        for (const auto& a : args) lists.push_back(as_max_of_super(a).branches);
        MaxOfSuper out;
        for (const auto& c : choices(lists)) {
          UpGen u;
          for (const auto& b : c) u.gens.insert(u.gens.end(), b.gens.begin(), b.gens.end());
          out.branches.push_back(std::move(u));
        }
        return simplify(Prevision(n, std::move(out)));
      }
      MinOfSub out;
      for (const auto& a : args) {
        auto m = as_min_of_sub(a);
        out.branches.insert(out.branches.end(), m.branches.begin(), m.branches.end());
      }
      return simplify(Prevision(n, std::move(out)));
    }
    case CombineKind::Add:
      return add_all(args);
    case CombineKind::Scale:
      if (args.size() != 1) throw PreconditionError("scale takes exactly one argument");
      return simplify(scaled(op.a, args.front()));
    case CombineKind::Mix:
      if (args.size() != 2) throw PreconditionError("mix takes exactly two arguments");
      if (op.a < 0 || op.a > 1) throw PreconditionError("mix weight must lie in [0,1]");
      if (op.a == 1) return simplify(args[0]);
      if (op.a == 0) return simplify(args[1]);
      return add_all({scaled(op.a, args[0]), scaled(1 - op.a, args[1])});
  }
  throw std::logic_error("unknown combine kind");
}

Prevision unit_prevision(UnitKind kind, const std::vector<std::size_t>& subset, std::size_t n) {
  std::vector<Point> gens;
  for (auto x : subset) {
    if (x >= n) throw DimensionError("unit_prevision: element " + std::to_string(x) + " outside space");
    gens.push_back(unit_point(n, x));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (kind == UnitKind::Min) {
    if (gens.empty()) throw PreconditionError("min over the empty set");
    if (gens.size() == 1) return Prevision::linear(gens[0]);
    return Prevision::super(UpGen{std::move(gens)});
  }
  if (gens.empty()) return Prevision::zero(n);
  if (gens.size() == 1) return Prevision::linear(gens[0]);
  return Prevision::sub(DownGen{std::move(gens)});
}

Rat choquet_eval(const LinearPrev& w, const Point& h) {
  require_dim(w.weights.size(), h.size(), "choquet_eval");
  std::vector<std::size_t> order(h.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
  Rat total = 0;
  Rat mass = 0;  // valuation of the level set {h > t}
  for (std::size_t k = 0; k < order.size(); ++k) {
    mass += w.weights[order[k]];
    Rat next = k + 1 < order.size() ? h[order[k + 1]] : Rat(0);
    total += (h[order[k]] - next) * mass;
  }
  return total;
}

namespace {

std::string gens_text(const std::vector<Point>& gens) {
  std::string s = "{";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ",";
    s += to_string(gens[i]);
  }
  return s + "}";
}

}  // namespace

std::string describe(const Prevision& p) {
  return std::visit(Overloaded{
                        [](const LinearPrev& l) { return "linear" + to_string(l.weights); },
                        [](const MinOfSub& m) {
                          std::string s = "min[";
                          for (std::size_t i = 0; i < m.branches.size(); ++i) {
                            if (i) s += ",";
                            s += "max" + gens_text(m.branches[i].gens);
                          }
                          return s + "]";
                        },
                        [](const MaxOfSuper& m) {
                          std::string s = "max[";
                          for (std::size_t i = 0; i < m.branches.size(); ++i) {
                            if (i) s += ",";
                            s += "min" + gens_text(m.branches[i].gens);
                          }
                          return s + "]";
                        },
                        [](const GaugeForm& g) {
                          return std::string(g.direction == GaugeDirection::Down ? "gauge_down" : "gauge_up") +
                                 gens_text(g.hull_points);
                        },
                    },
                    p.form());
}

}  // namespace prevcalc
