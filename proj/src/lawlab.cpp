#include "prevcalc/lawlab.hpp"

#include "prevcalc/document.hpp"
#include "prevcalc/lp.hpp"
#include "prevcalc/shadow.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>

namespace prevcalc {

using nlohmann::json;

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// One generator with denominator <= max_denominator; mass <= 1 (subnorm)
// or exactly 1 (norm) by distributing unit quanta over the coordinates.
Point random_generator(std::mt19937_64& rng, const RandomParams& p) {
  const long d = uniform(rng, 1, p.max_denominator);
  std::vector<long> k(p.n, 0);
  if (p.flavor == Flavor::Plain) {
    for (auto& ki : k) ki = uniform(rng, 0, 2 * d);
  } else {
    long units = p.flavor == Flavor::Norm ? d : uniform(rng, 0, d);
    for (long u = 0; u < units; ++u) ++k[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(p.n) - 1))];
  }
  Vec v;
  for (long ki : k) v.push_back(make_rat(ki, d));
  return Point(std::move(v));
}

std::vector<Point> random_generators(std::mt19937_64& rng, const RandomParams& p) {
  std::vector<Point> out;
  long count = uniform(rng, 1, static_cast<long>(p.max_gens));
  for (long i = 0; i < count; ++i) out.push_back(random_generator(rng, p));
  return out;
}

Prevision random_sub(std::mt19937_64& rng, const RandomParams& p) { return Prevision::sub(DownGen{random_generators(rng, p)}); }
Prevision random_super(std::mt19937_64& rng, const RandomParams& p) { return Prevision::super(UpGen{random_generators(rng, p)}); }

Prevision draw_form(std::mt19937_64& rng, const RandomParams& p) {
  long branches = uniform(rng, 1, static_cast<long>(p.max_branches));
  if (uniform(rng, 0, 1) == 0) {
    MinOfSub m;
    for (long i = 0; i < branches; ++i) m.branches.push_back(DownGen{random_generators(rng, p)});
    return Prevision(p.n, std::move(m));
  }
  MaxOfSuper m;
  for (long i = 0; i < branches; ++i) m.branches.push_back(UpGen{random_generators(rng, p)});
  return Prevision(p.n, std::move(m));
}

struct Ops {
  std::function<Prevision(const SmythGen&)> minP;
  std::function<Prevision(const Prevision&, const Prevision&)> norm_between;
  std::function<Prevision(const Prevision&, const Point&, const Rat&, Flavor)> corner;
};

Ops make_ops(Mutant m) {
  Ops ops{[](const SmythGen& q) { return minP(q); },
          [](const Prevision& p, const Prevision& f0) { return normalized_sublinear_between(p, f0); },
          [](const Prevision& p, const Point& h, const Rat& r, Flavor f) { return corner_superlinear_witness(p, h, r, f); }};
  switch (m) {
    case Mutant::None:
      break;
    case Mutant::MinPAsMax:
      ops.minP = [](const SmythGen& q) { return combine(Combine::sup(), q.gens); };
      break;
    case Mutant::NoShadowClosure:
      ops.norm_between = [](const Prevision&, const Prevision& f0) { return f0; };
      break;
    case Mutant::NoGammaRay:
      ops.corner = [](const Prevision& p, const Point& h, const Rat& r, Flavor f) {
        return corner_superlinear_witness(p, h, r, f == Flavor::Norm ? Flavor::Plain : f);
      };
      break;
  }
  return ops;
}

struct Context {
  std::size_t n;
  Ops ops;
  std::vector<Point> positive;  // strictly positive test points
  std::vector<Point> grid;      // pointwise comparison grid
};

using Failure = std::optional<std::string>;
using Law = std::function<Failure(std::mt19937_64&, const Context&, json&)>;

RandomParams params_for(std::size_t n, Flavor f) {
  RandomParams p;
  p.n = n;
  p.flavor = f;
  return p;
}

Flavor cyclic_flavor(std::mt19937_64& rng) {
  static const Flavor all[] = {Flavor::Plain, Flavor::Subnorm, Flavor::Norm};
  return all[uniform(rng, 0, 2)];
}

const Point& pick_point(std::mt19937_64& rng, const std::vector<Point>& pts) {
  return pts[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pts.size()) - 1))];
}

Rat random_weight(std::mt19937_64& rng) { return make_rat(uniform(rng, 0, 8), 8); }

json gens_json(const std::vector<Prevision>& gens) {
  json a = json::array();
  for (const auto& g : gens) a.push_back(prevision_to_json(g));
  return a;
}

SmythGen random_smyth(std::mt19937_64& rng, std::size_t n) {
  SmythGen s;
  long k = uniform(rng, 1, 3);
  for (long i = 0; i < k; ++i) s.gens.push_back(random_sub(rng, params_for(n, Flavor::Plain)));
  return s;
}

HoareGen random_hoare(std::mt19937_64& rng, std::size_t n) {
  HoareGen s;
  long k = uniform(rng, 1, 3);
  for (long i = 0; i < k; ++i) s.gens.push_back(random_super(rng, params_for(n, Flavor::Plain)));
  return s;
}

Rat extreme_over(const std::vector<Prevision>& gens, const Point& h, bool take_max) {
  Rat best = eval_finite(gens.front(), h);
  for (const auto& g : gens) {
    Rat v = eval_finite(g, h);
    if (take_max ? v > best : v < best) best = v;
  }
  return best;
}

Failure check(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

std::string at(const Point& h) { return " at " + to_string(h); }

std::map<std::string, Law> registry() {
  std::map<std::string, Law> laws;

  laws["document.roundtrip"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, cyclic_flavor(rng)));
    in["P"] = prevision_to_json(p);
    auto back = prevision_from_json(parse_document(dump_document(prevision_to_json(p, Flavor::Norm))));
    return check(back.prevision == p && back.flavor == Flavor::Norm, "parse(serialize(P)) differs");
  };

  laws["powercone.canonicalize"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    SmythGen q = random_smyth(rng, c.n);
    q.gens.push_back(combine(Combine::add(), {q.gens.front(), random_sub(rng, params_for(c.n, Flavor::Plain))}));
    in["Q"] = gens_json(q.gens);
    SmythGen cq = canonicalize(q);
    if (!equivalent(minP(cq), minP(q))) return "canonicalize changed minP";
    return check(canonicalize(cq).gens.size() == cq.gens.size(), "canonicalize is not idempotent");
  };

  laws["powercone.hoare_convex_invariance"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    HoareGen h = random_hoare(rng, c.n);
    const auto& x = h.gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(h.gens.size()) - 1))];
    const auto& y = h.gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(h.gens.size()) - 1))];
    HoareGen bigger = h;
    bigger.gens.push_back(combine(Combine::mix(random_weight(rng)), {x, y}));
    in["C"] = gens_json(bigger.gens);
    return check(equivalent(supP(bigger), supP(h)), "adding a convex combination changed supP");
  };

  laws["powercone.minP_affine"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    SmythGen q1 = random_smyth(rng, c.n);
    SmythGen q2 = random_smyth(rng, c.n);
    Rat a = random_weight(rng);
    in["Q1"] = gens_json(q1.gens);
    in["Q2"] = gens_json(q2.gens);
    in["a"] = to_string(a);
    Prevision m = c.ops.minP(cone_op(ConeOp::mix(a), std::vector<SmythGen>{q1, q2}));
    for (const auto& h : c.grid) {
      Rat want = a * extreme_over(q1.gens, h, false) + (1 - a) * extreme_over(q2.gens, h, false);
      if (eval_finite(m, h) != want) return "minP(Q1 +a Q2) != a minP(Q1) + (1-a) minP(Q2)" + at(h);
    }
    return std::nullopt;
  };

  laws["powercone.minP_inf"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    SmythGen q1 = random_smyth(rng, c.n);
    SmythGen q2 = random_smyth(rng, c.n);
    in["Q1"] = gens_json(q1.gens);
    in["Q2"] = gens_json(q2.gens);
    Prevision m = c.ops.minP(cone_op(ConeOp::smyth_inf(), std::vector<SmythGen>{q1, q2}));
    for (const auto& h : c.grid) {
      Rat want = std::min(extreme_over(q1.gens, h, false), extreme_over(q2.gens, h, false));
      if (eval_finite(m, h) != want) return "minP(Q1 inf Q2) != min(minP(Q1), minP(Q2))" + at(h);
    }
    return std::nullopt;
  };

  laws["powercone.supP_affine"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    HoareGen c1 = random_hoare(rng, c.n);
    HoareGen c2 = random_hoare(rng, c.n);
    Rat a = random_weight(rng);
    in["C1"] = gens_json(c1.gens);
    in["C2"] = gens_json(c2.gens);
    in["a"] = to_string(a);
    Prevision m = supP(cone_op(ConeOp::mix(a), std::vector<HoareGen>{c1, c2}));
    for (const auto& h : c.grid) {
      Rat want = a * extreme_over(c1.gens, h, true) + (1 - a) * extreme_over(c2.gens, h, true);
      if (eval_finite(m, h) != want) return "supP(C1 +a C2) != a supP(C1) + (1-a) supP(C2)" + at(h);
    }
    return std::nullopt;
  };

  laws["powercone.supP_sup"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    HoareGen c1 = random_hoare(rng, c.n);
    HoareGen c2 = random_hoare(rng, c.n);
    in["C1"] = gens_json(c1.gens);
    in["C2"] = gens_json(c2.gens);
    Prevision m = supP(cone_op(ConeOp::hoare_sup(), std::vector<HoareGen>{c1, c2}));
    for (const auto& h : c.grid) {
      Rat want = std::max(extreme_over(c1.gens, h, true), extreme_over(c2.gens, h, true));
      if (eval_finite(m, h) != want) return "supP(C1 sup C2) != max(supP(C1), supP(C2))" + at(h);
    }
    return std::nullopt;
  };

  laws["prevcore.combine_pointwise"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, Flavor::Plain));
    Prevision q = random_prevision(rng, params_for(c.n, Flavor::Plain));
    Rat a = random_weight(rng);
    in["P"] = prevision_to_json(p);
    in["Q"] = prevision_to_json(q);
    in["a"] = to_string(a);
    Prevision mx = combine(Combine::mix(a), {p, q});
    Prevision sp = combine(Combine::sup(), {p, q});
    Prevision nf = combine(Combine::inf(), {p, q});
    Prevision ad = combine(Combine::add(), {p, q});
    for (const auto& h : c.grid) {
      Rat ph = eval_finite(p, h);
      Rat qh = eval_finite(q, h);
      if (eval_finite(mx, h) != a * ph + (1 - a) * qh) return "mix differs" + at(h);
      if (eval_finite(sp, h) != std::max(ph, qh)) return "sup differs" + at(h);
      if (eval_finite(nf, h) != std::min(ph, qh)) return "inf differs" + at(h);
      if (eval_finite(ad, h) != ph + qh) return "add differs" + at(h);
    }
    return std::nullopt;
  };

  laws["prevcore.homogeneity"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, Flavor::Plain));
    Rat s = make_rat(uniform(rng, 0, 12), 4);
    in["P"] = prevision_to_json(p);
    in["c"] = to_string(s);
    for (const auto& h : c.grid) {
      if (eval_finite(p, s * h) != s * eval_finite(p, h)) return "P(c h) != c P(h)" + at(h);
    }
    return std::nullopt;
  };

  laws["shadow.composition"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Point x0 = pick_point(rng, c.grid);
    Point y = pick_point(rng, c.grid);
    Rat a = random_weight(rng);
    Rat b = random_weight(rng);
    in["x0"] = point_to_json(x0);
    in["y"] = point_to_json(y);
    in["a"] = to_string(a);
    in["b"] = to_string(b);
    return check(shd(x0, b, shd(x0, a, y)) == shd(x0, a * b, y), "shd(b) o shd(a) != shd(ab)");
  };

  laws["shadow.norm_between"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, Flavor::Norm));
    Point h = pick_point(rng, c.positive);
    in["P"] = prevision_to_json(p);
    in["h"] = point_to_json(h);
    Prevision f0 = tight_sublinear_witness(p, h, Flavor::Subnorm);
    in["F0"] = prevision_to_json(f0);
    Prevision f = c.ops.norm_between(p, f0);
    ClassFlags k = classify(f);
    if (!k.sublinear || !k.normalized) return "result is not a normalized sublinear prevision";
    if (!leq(p, f)) return "result is not above P";
    return check(leq(f, f0), "result is not below F0");
  };

  laws["shadow.stable_iff_subnormalized"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Flavor f = uniform(rng, 0, 1) ? Flavor::Plain : Flavor::Subnorm;
    Prevision p = random_prevision(rng, params_for(c.n, f));
    in["P"] = prevision_to_json(p);
    return check(shadow_stable(p) == classify(p).subnormalized, "shadow_stable disagrees with the subnormalized flag");
  };

  laws["shadow.subnorm_below"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, Flavor::Subnorm));
    Point h = pick_point(rng, c.positive);
    in["P"] = prevision_to_json(p);
    in["h"] = point_to_json(h);
    Rat ph = eval_finite(p, h);
    if (ph == 0) return std::nullopt;
    Prevision f0 = corner_superlinear_witness(p, h, make_rat(15, 16) * ph, Flavor::Plain);
    Prevision f = subnorm_superlinear_below(p, f0);
    ClassFlags k = classify(f);
    if (!k.superlinear || !k.subnormalized) return "result is not a subnormalized superlinear prevision";
    if (!leq(f0, f)) return "result is not above F0";
    return check(leq(f, p), "result is not below P");
  };

  laws["transforms.corner_witness"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Flavor fl = cyclic_flavor(rng);
    Prevision p = random_prevision(rng, params_for(c.n, fl));
    Point h = pick_point(rng, c.positive);
    in["P"] = prevision_to_json(p, fl);
    in["h"] = point_to_json(h);
    Rat ph = eval_finite(p, h);
    if (ph == 0) return std::nullopt;
    Rat r = make_rat(15, 16) * ph;
    Prevision f = c.ops.corner(p, h, r, fl);
    ClassFlags k = classify(f);
    if (!k.superlinear) return "witness is not superlinear";
    if (!has_flavor(f, fl)) return "witness is not " + to_string(fl);
    if (!leq(f, p)) return "witness is not below P";
    return check(eval_finite(f, h) > r, "witness does not exceed r at h");
  };

  laws["transforms.double_orthogonal"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, Flavor::Plain));
    in["P"] = prevision_to_json(p);
    if (!equivalent(double_orthogonal_roundtrip(nimP(p, Flavor::Plain)).canonical, p)) return "nim round trip moved P";
    return check(equivalent(*double_orthogonal_roundtrip(qusP(p, Flavor::Plain)).canonical, p), "qus round trip moved P");
  };

  laws["transforms.orthogonal_family"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    std::vector<Prevision> supers;
    std::vector<Prevision> subs;
    long k = uniform(rng, 1, 3);
    for (long i = 0; i < k; ++i) {
      supers.push_back(random_super(rng, params_for(c.n, Flavor::Plain)));
      subs.push_back(random_sub(rng, params_for(c.n, Flavor::Plain)));
    }
    in["A"] = gens_json(supers);
    in["B"] = gens_json(subs);
    QPredSub a = orthogonal_super_to_sub(supers, c.n, Flavor::Plain);
    CPredSuper b = orthogonal_sub_to_super(subs, c.n, Flavor::Plain);
    for (const auto& h : c.grid) {
      if (eval_finite(a.canonical, h) != extreme_over(supers, h, true)) return "A-perp canonical is not sup A" + at(h);
      if (eval_finite(*b.canonical, h) != extreme_over(subs, h, false)) return "perp-B canonical is not inf B" + at(h);
    }
    return std::nullopt;
  };

  laws["transforms.retraction"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Prevision p = random_prevision(rng, params_for(c.n, Flavor::Plain));
    in["P"] = prevision_to_json(p);
    std::vector<Point> hs;
    SmythGen q;
    for (int i = 0; i < 3; ++i) {
      Point h = pick_point(rng, c.positive);
      if (eval_finite(p, h) == 0) continue;
      hs.push_back(h);
      q.gens.push_back(tight_sublinear_witness(p, h, Flavor::Plain));
    }
    in["hs"] = points_to_json(hs)["points"];
    if (q.gens.empty()) return std::nullopt;
    Prevision m = c.ops.minP(q);
    if (!leq(p, m)) return "minP of the witnesses is not above P";
    for (const auto& h : hs) {
      if (eval_finite(m, h) != eval_finite(p, h)) return "minP of the witnesses is not tight" + at(h);
    }
    return std::nullopt;
  };

  laws["transforms.sandwich"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    RandomParams rp = params_for(c.n, Flavor::Plain);
    UpGen q{random_generators(rng, rp)};
    DownGen p{random_generators(rng, rp)};
    if (uniform(rng, 0, 1)) {
      for (auto& g : q.gens) g = make_rat(1, 2) * g;
    }
    in["q"] = points_to_json(q.gens)["points"];
    in["p"] = points_to_json(p.gens)["points"];
    bool dominated = leq(Prevision::super(q), Prevision::sub(p));
    SandwichResult r = sandwich(q, p, Flavor::Plain);
    if (const auto* w = std::get_if<LinearPrev>(&r)) {
      if (!dominated) return "sandwich succeeded without domination";
      Prevision lin = Prevision::linear(w->weights);
      return check(leq(Prevision::super(q), lin) && leq(lin, Prevision::sub(p)), "w is not between q and p");
    }
    if (dominated) return "sandwich failed under domination";
    const Point& h = std::get<DominationFailure>(r).witness;
    return check(eval_finite(Prevision::super(q), h) > eval_finite(Prevision::sub(p), h), "failure witness is not a witness");
  };

  laws["transforms.tight_witness"] = [](std::mt19937_64& rng, const Context& c, json& in) -> Failure {
    Flavor fl = cyclic_flavor(rng);
    Prevision p = random_prevision(rng, params_for(c.n, fl));
    Point h = pick_point(rng, c.positive);
    in["P"] = prevision_to_json(p, fl);
    in["h"] = point_to_json(h);
    if (eval_finite(p, h) == 0) return std::nullopt;
    Prevision f = tight_sublinear_witness(p, h, fl);
    if (!is_sublinear(f) || !has_flavor(f, fl)) return "witness lacks the flavor";
    if (!leq(p, f)) return "witness is not above P";
    return check(eval_finite(f, h) == eval_finite(p, h), "witness is not tight at h");
  };

  return laws;
}

std::vector<Point> comparison_grid(std::size_t n) {
  const long den = 2;
  const long top = n <= 2 ? 4 : 2;
  std::vector<Point> out;
  std::vector<long> k(n, 0);
  while (true) {
    Vec v;
    for (long ki : k) v.push_back(make_rat(ki, den));
    out.emplace_back(std::move(v));
    std::size_t i = 0;
    while (i < n && k[i] == top) k[i++] = 0;
    if (i == n) break;
    ++k[i];
  }
  return out;
}

std::vector<Point> positive_points(std::size_t n) {
  std::vector<Point> out;
  for (const auto& p : delta_grid(n, n <= 2 ? 8 : 6)) {
    if (p.strictly_positive()) out.push_back(p);
  }
  return out;
}

}  // namespace

Prevision random_prevision(std::mt19937_64& rng, const RandomParams& params) {
  if (params.n == 0) throw PreconditionError("random_prevision: n must be >= 1");
  if (params.max_branches == 0 || params.max_gens == 0 || params.max_denominator < 1) {
    throw PreconditionError("random_prevision: branch, generator and denominator bounds must be positive");
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    Prevision p = draw_form(rng, params);
    if (has_flavor(p, params.flavor)) return p;
  }
  throw PreconditionError("random_prevision: flavor " + to_string(params.flavor) + " not met within the retry budget");
}

Prevision random_prevision(std::uint64_t seed, const RandomParams& params) {
  std::mt19937_64 rng(seed);
  return random_prevision(rng, params);
}

std::string to_string(Mutant m) {
  switch (m) {
    case Mutant::None: return "none";
    case Mutant::MinPAsMax: return "minp-as-max";
    case Mutant::NoShadowClosure: return "no-shadow-closure";
    case Mutant::NoGammaRay: return "no-gamma-ray";
  }
  return "?";
}

Mutant parse_mutant(const std::string& s) {
  for (Mutant m : {Mutant::None, Mutant::MinPAsMax, Mutant::NoShadowClosure, Mutant::NoGammaRay}) {
    if (to_string(m) == s) return m;
  }
  throw PreconditionError("unknown mutant '" + s + "'");
}

std::vector<Mutant> all_mutants() { return {Mutant::MinPAsMax, Mutant::NoShadowClosure, Mutant::NoGammaRay}; }

std::vector<std::string> law_names() {
  std::vector<std::string> out;
  for (const auto& [name, law] : registry()) out.push_back(name);
  return out;
}

std::vector<LawReport> run_law_suite(std::uint64_t seed, std::size_t trials, std::size_t n, Mutant mutant) {
  if (n == 0 || n > 3) throw PreconditionError("run_law_suite: n must lie in 1..3 for exact mode");
  Context ctx{n, make_ops(mutant), positive_points(n), comparison_grid(n)};
  std::vector<LawReport> out;
  std::uint64_t law_index = 0;
  for (const auto& [name, law] : registry()) {
    LawReport rep;
    rep.law = name;
    rep.trials = trials;
    auto start = std::chrono::steady_clock::now();
    for (std::size_t t = 0; t < trials; ++t) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(law_index), static_cast<std::uint32_t>(t)};
      std::mt19937_64 rng(seq);
      json inputs = json::object();
      Failure f;
      try {
        f = law(rng, ctx, inputs);
      } catch (const std::exception& e) {
        f = std::string("exception: ") + e.what();
      }
      if (f) {
        rep.failures.push_back(LawFailure{t, *f, inputs});
      } else {
        ++rep.passes;
      }
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(rep));
    ++law_index;
  }
  return out;
}

bool all_pass(const std::vector<LawReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.failures.empty(); });
}

json reports_to_json(const std::vector<LawReport>& reports, bool timing) {
  json laws = json::array();
  for (const auto& r : reports) {
    json j;
    j["law"] = r.law;
    j["trials"] = r.trials;
    j["passes"] = r.passes;
    j["failures"] = json::array();
    for (const auto& f : r.failures) j["failures"].push_back({{"trial", f.trial}, {"detail", f.detail}, {"inputs", f.inputs}});
    if (timing) j["runtime_ms"] = r.runtime_ms;
    laws.push_back(std::move(j));
  }
  return {{"pass", all_pass(reports)}, {"laws", laws}};
}

bool ExampleVerdict::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.pass; });
}

namespace {

ExampleCheck exact(const std::string& what, const std::string& expected, const std::string& computed) {
  return {what, expected, computed, expected == computed};
}

ExampleCheck truth(const std::string& what, bool value) {
  return {what, "true", value ? "true" : "false", value};
}

Point pt(long a, long b) { return Point({make_rat(a), make_rat(b)}); }
Point pt(Rat a, Rat b) { return Point({std::move(a), std::move(b)}); }

// h_t maps 0 to t and 1 to 1 - t.
Point h_t(const Rat& t) { return pt(t, 1 - t); }

// Constraints <w, v> rel P(v) at every cell vertex of P on the simplex.
std::vector<Constraint> linear_vs(const Prevision& p, Relation rel) {
  std::vector<Constraint> cs;
  for (const auto& v : arrangement_vertices({to_expr(p)})) cs.push_back(make_constraint(v, rel, eval_finite(p, Point(v))));
  return cs;
}

std::string lp_value(const LpResult& r) {
  if (const auto* o = std::get_if<LpOptimal>(&r)) return to_string(o->value);
  if (std::holds_alternative<LpInfeasible>(r)) return "infeasible";
  return "unbounded";
}

ExampleVerdict qbox_inf() {
  const Prevision lam = Prevision::linear(pt(make_rat(1, 2), make_rat(1, 2)));
  const Prevision p1 = combine(Combine::sup(), {Prevision::linear(pt(1, 0)), lam});
  const Prevision p2 = combine(Combine::sup(), {Prevision::linear(pt(0, 1)), lam});
  ExampleVerdict v{"qbox-inf", {}};
  ClassFlags f1 = classify(p1);
  ClassFlags f2 = classify(p2);
  v.checks.push_back(truth("P1, P2 are normalized sublinear", f1.sublinear && f1.normalized && f2.sublinear && f2.normalized));
  Prevision inf = combine(Combine::inf(), {p1, p2});
  v.checks.push_back(exact("inf(P1, P2) <= Lambda", "true", leq(inf, lam) ? "true" : "false"));
  v.checks.push_back(exact("Lambda <= inf(P1, P2)", "true", leq(lam, inf) ? "true" : "false"));
  v.checks.push_back(exact("mix_dominance_range(Lambda, P1, P2)", "empty", to_string(mix_dominance_range(lam, p1, p2))));
  v.checks.push_back(truth("Lambda is in nimP(inf(P1, P2))", member_nim(nimP(inf, Flavor::Norm), lam, Flavor::Norm)));
  return v;
}

ExampleVerdict qbox_plus() {
  const Prevision lam = Prevision::linear(pt(1, 1));
  const Prevision p1 = Prevision::sub(DownGen{{pt(1, 0), pt(0, 1)}});
  const Prevision p2 = Prevision::super(UpGen{{pt(2, 1), pt(1, 2)}});
  ExampleVerdict v{"qbox-plus", {}};
  v.checks.push_back(truth("P1 sublinear, P2 superlinear", is_sublinear(p1) && is_superlinear(p2)));
  v.checks.push_back(exact("P1 +1/2 P2 = Lambda", "EQ", to_string(compare(combine(Combine::mix(make_rat(1, 2)), {p1, p2}), lam).order)));
  // min a + b over linear Lambda2 = (a, b) >= P2
  LpOptions nonneg;
  nonneg.all_nonneg = true;
  nonneg.lexicographic = true;
  LpResult r = lp_solve(Sense::Min, LinExpr{{Rat(1), Rat(1)}, Rat(0)}, linear_vs(p2, Relation::GE), nonneg);
  v.checks.push_back(exact("min a+b s.t. linear >= P2", "3", lp_value(r)));
  // 1/2 P1(h_t) + 1/2 Lambda2(h_t) <= Lambda(h_t) = 1 at t = 0, 1 forces b <= 1, a <= 1
  std::vector<Constraint> cs = linear_vs(p2, Relation::GE);
  for (const Rat& t : {Rat(0), Rat(1)}) {
    Point h = h_t(t);
    Rat rhs = 2 * eval_finite(lam, h) - eval_finite(p1, h);
    cs.push_back(make_constraint(Vec{h[0], h[1]}, Relation::LE, rhs));
  }
  v.checks.push_back(exact("a <= 1, b <= 1, a+b >= 3", "infeasible", lp_feasible(2, cs, nullptr, nonneg) ? "feasible" : "infeasible"));
  v.checks.push_back(truth("Lambda is in nimP(P1 +1/2 P2)",
                           member_nim(nimP(combine(Combine::mix(make_rat(1, 2)), {p1, p2}), Flavor::Plain), lam, Flavor::Plain)));
  return v;
}

ExampleVerdict hdia_sup() {
  const Prevision lam = Prevision::linear(pt(make_rat(1, 2), make_rat(1, 2)));
  const Prevision p1 = combine(Combine::inf(), {Prevision::linear(pt(1, 0)), lam});
  const Prevision p2 = combine(Combine::inf(), {Prevision::linear(pt(0, 1)), lam});
  const Rat eps = make_rat(1, 4);
  const Rat r = make_rat(3, 8);
  ExampleVerdict v{"hdia-sup", {}};
  ClassFlags f1 = classify(p1);
  ClassFlags f2 = classify(p2);
  v.checks.push_back(truth("P1, P2 are normalized superlinear", f1.superlinear && f1.normalized && f2.superlinear && f2.normalized));
  v.checks.push_back(exact("sup(P1, P2) = Lambda", "EQ", to_string(compare(combine(Combine::sup(), {p1, p2}), lam).order)));
  // a over [0,1] as the point (a, 1 - a) of the simplex
  const Point hi = h_t(make_rat(1, 2) + eps);
  const Point lo = h_t(make_rat(1, 2) - eps);
  PhplExpr probe = PhplExpr::min({PhplExpr::linear({eval_finite(p1, hi), eval_finite(p2, hi)}),
                                  PhplExpr::linear({eval_finite(p1, lo), eval_finite(p2, lo)})});
  Rat best = maximize_on_simplex(probe).value;
  v.checks.push_back(exact("max over a of the two probe minima", "3/8", to_string(best)));
  v.checks.push_back(exact("probe maximum equals 1/2 - eps/2", to_string(make_rat(1, 2) - eps / 2), to_string(best)));
  v.checks.push_back(truth("probe maximum is not > r = 3/8", !(best > r)));
  return v;
}

ExampleVerdict hdia_plus() {
  const Prevision lam = Prevision::linear(pt(1, 1));
  const Prevision p1 = Prevision::sub(DownGen{{pt(1, 0), pt(0, 1)}});
  const Prevision p2 = Prevision::super(UpGen{{pt(2, 1), pt(1, 2)}});
  const Rat eps = make_rat(1, 8);
  ExampleVerdict v{"hdia-plus", {}};
  v.checks.push_back(exact("P1 +1/2 P2 = Lambda", "EQ", to_string(compare(combine(Combine::mix(make_rat(1, 2)), {p1, p2}), lam).order)));
  LpOptions nonneg;
  nonneg.all_nonneg = true;
  nonneg.lexicographic = true;
  LpResult r = lp_solve(Sense::Max, LinExpr{{Rat(1), Rat(1)}, Rat(0)}, linear_vs(p1, Relation::LE), nonneg);
  v.checks.push_back(exact("max a+b s.t. linear <= P1", "1", lp_value(r)));
  const Rat needed = 2 - 4 * eps;
  v.checks.push_back(exact("bound 2 - 4 eps at eps = 1/8", "3/2", to_string(needed)));
  bool contradiction = std::holds_alternative<LpOptimal>(r) && !(std::get<LpOptimal>(r).value > needed);
  v.checks.push_back(truth("a+b > 2 - 4 eps is impossible", contradiction));
  Rat p2_0 = eval_finite(p2, h_t(Rat(0)));
  Rat p2_1 = eval_finite(p2, h_t(Rat(1)));
  v.checks.push_back(exact("P2(h_0), P2(h_1)", "1, 1", to_string(p2_0) + ", " + to_string(p2_1)));
  return v;
}

}  // namespace

std::vector<std::string> example_ids() { return {"qbox-inf", "qbox-plus", "hdia-sup", "hdia-plus"}; }

ExampleVerdict reproduce_example(const std::string& id) {
  if (id == "qbox-inf") return qbox_inf();
  if (id == "qbox-plus") return qbox_plus();
  if (id == "hdia-sup") return hdia_sup();
  if (id == "hdia-plus") return hdia_plus();
  throw PreconditionError("unknown example id '" + id + "'");
}

json verdict_to_json(const ExampleVerdict& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"description", c.description}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  }
  return {{"id", v.id}, {"pass", v.pass()}, {"checks", checks}};
}

}  // namespace prevcalc
