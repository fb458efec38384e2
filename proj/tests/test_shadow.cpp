#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prevcalc/shadow.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const Prevision kLambda = Prevision::linear(P2(R(1, 2), R(1, 2)));

// sup (or inf) over s >= 0 of G(h + s 1) - s, evaluated at every breakpoint
// of the pieces <g, h> + s |g| of G's generators.
Rat shadow_oracle(const Prevision& g, const std::vector<Point>& gens, const Point& h, bool sup) {
  std::vector<Rat> cands{R(0)};
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      if (a.mass() == b.mass()) continue;
      Rat s = (dot(b, h) - dot(a, h)) / (a.mass() - b.mass());
      if (s >= 0) cands.push_back(s);
    }
  }
  std::optional<Rat> best;
  for (const auto& s : cands) {
    Rat v = eval_finite(g, h + s * Point::ones(h.size())) - s;
    if (!best || (sup ? v > *best : v < *best)) best = v;
  }
  return *best;
}

std::vector<Point> all_gens(const Prevision& p) {
  std::vector<Point> out;
  if (const auto* m = std::get_if<MinOfSub>(&p.form())) {
    for (const auto& b : m->branches) out.insert(out.end(), b.gens.begin(), b.gens.end());
  } else if (const auto* m = std::get_if<MaxOfSuper>(&p.form())) {
    for (const auto& b : m->branches) out.insert(out.end(), b.gens.begin(), b.gens.end());
  } else if (const auto* l = std::get_if<LinearPrev>(&p.form())) {
    out.push_back(l->weights);
  }
  return out;
}

Point with_mass(const Point& g, const Rat& m) {
  if (g.is_zero()) return (m / static_cast<long>(g.size())) * Point::ones(g.size());
  return (m / g.mass()) * g;
}

// Random form whose generators all have mass in (0, cap] (or exactly cap).
Prevision random_massed(std::mt19937_64& rng, bool exact) {
  auto p = random_any(rng, 2);
  auto rescale = [&](std::vector<Point>& gens) {
    for (auto& g : gens) g = with_mass(g, exact ? R(1) : R(pick(rng, 1, 4), 4));
  };
  if (const auto* m = std::get_if<MinOfSub>(&p.form())) {
    MinOfSub q = *m;
    for (auto& b : q.branches) rescale(b.gens);
    return Prevision(2, q);
  }
  MaxOfSuper q = std::get<MaxOfSuper>(p.form());
  for (auto& b : q.branches) rescale(b.gens);
  return Prevision(2, q);
}

}  // namespace

TEST_CASE("shd") {
  const Point one = Point::ones(2);
  const Point x = P2(R(2), R(0));
  CHECK(shd(one, R(1), x) == x);
  CHECK(shd(one, R(1, 2), x) == P2(R(3, 2), R(1, 2)));
  CHECK_THROWS_AS(shd(one, R(2), x), PreconditionError);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    Rat a = R(pick(rng, 0, 8), 8);
    Rat b = R(pick(rng, 0, 8), 8);
    auto y = random_point(rng, 3);
    auto x0 = random_point(rng, 3);
    CHECK(shd(x0, b, shd(x0, a, y)) == shd(x0, a * b, y));
  }
}

TEST_CASE("shadow_stable examples") {
  CHECK(shadow_stable(kLambda));
  CHECK_FALSE(shadow_stable(Prevision::super(UpGen{{P2(R(2), R(0)), P2(R(0), R(1, 2))}})));
  CHECK(shadow_stable(Prevision::sub(DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}})));
}

TEST_CASE("shadow_stable equals the subnormalization flag") {
  std::mt19937_64 rng(2);
  int stable = 0;
  for (int t = 0; t < 200; ++t) {
    auto p = pick(rng, 0, 1) ? random_any(rng, 2) : random_massed(rng, false);
    bool s = shadow_stable(p);
    CHECK(s == classify(p).subnormalized);
    stable += s ? 1 : 0;
  }
  CHECK(stable > 0);
  CHECK(stable < 200);
}

TEST_CASE("shadow_gauge examples") {
  CHECK(equivalent(shadow_gauge(kLambda), kLambda));
  CHECK_THROWS_AS(shadow_gauge(Prevision::linear(P2(R(2), R(0)))), ImproperShadow);
  auto g = Prevision::super(UpGen{{P2(R(2), R(0)), P2(R(0), R(1, 2))}});
  auto f = shadow_gauge(g);
  CHECK(eval_finite(f, P2(R(0), R(4))) == R(4, 3));
  CHECK(eval_finite(g, P2(R(0), R(4))) == 0);
  // denominator-64 sweep of s = (1 - beta) r / beta
  Rat best = -1;
  for (long k = 0; k <= 64 * 8; ++k) {
    Rat s = R(k, 64);
    best = std::max(best, Rat(eval_finite(g, P2(s, 4 + s)) - s));
  }
  CHECK(best <= R(4, 3));
  CHECK(R(4, 3) - best <= R(1, 64));
}

TEST_CASE("shadow_gauge matches the breakpoint oracle and is shadow-closed") {
  std::mt19937_64 rng(3);
  const auto grid = box_grid(2, 3, 2);
  int done = 0;
  for (int t = 0; t < 300 && done < 80; ++t) {
    auto g = pick(rng, 0, 2) ? random_massed(rng, false) : random_max_of_super(rng, 2);
    if (eval_finite(g, Point::ones(2)) > 1) {
      CHECK_THROWS_AS(shadow_gauge(g), ImproperShadow);
      continue;
    }
    auto f = shadow_gauge(g);
    auto gens = all_gens(g);
    for (const auto& h : grid) CHECK(eval_finite(f, h) == shadow_oracle(g, gens, h, true));
    for (Rat a : {R(1, 4), R(1, 2), R(3, 4), R(1)}) CHECK(shadow_preimage_closed(f, a));
    CHECK(leq(g, f));
    if (is_superlinear(g)) {
      CHECK(is_superlinear(f));
      CHECK(is_subnormalized(f));
    }
    ++done;
  }
  CHECK(done == 80);
}

TEST_CASE("shadow of a sublinear G keeps a convex complement") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    std::vector<Point> gens;
    for (const auto& x : random_gens(rng, 2, 3)) gens.push_back(with_mass(x, R(pick(rng, 1, 4), 4)));
    auto g = Prevision::sub(DownGen{gens});
    auto f = shadow_gauge(g);
    CHECK(is_sublinear(f));
  }
}

TEST_CASE("subnorm_superlinear_below") {
  CHECK(equivalent(subnorm_superlinear_below(kLambda, combine(Combine::scale(R(1, 2)), {kLambda})),
                   combine(Combine::scale(R(1, 2)), {kLambda})));
  auto mn = unit_prevision(UnitKind::Min, {0, 1}, 2);
  CHECK(equivalent(subnorm_superlinear_below(kLambda, mn), mn));
  CHECK_THROWS_AS(subnorm_superlinear_below(kLambda, Prevision::linear(P2(R(1), R(0)))), PreconditionError);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto p = random_massed(rng, false);
    REQUIRE(is_subnormalized(p));
    std::vector<Point> gens;
    Rat c = R(pick(rng, 1, 4), 4);
    for (const auto& g : all_gens(p)) gens.push_back(c * g);
    for (const auto& g : random_gens(rng, 2, 2)) {
      if (pick(rng, 0, 1)) gens.push_back(g);
    }
    auto f0 = Prevision::super(UpGen{gens});
    if (!leq(f0, p)) continue;
    auto f = subnorm_superlinear_below(p, f0);
    CHECK(is_superlinear(f));
    CHECK(is_subnormalized(f));
    CHECK(leq(f0, f));
    CHECK(leq(f, p));
  }
}

TEST_CASE("normalized_sublinear_between") {
  auto h0 = Prevision::linear(P2(R(1), R(0)));
  auto f0 = Prevision::sub(DownGen{{P2(R(1), R(0)), P2(R(1, 4), R(1, 4))}});
  CHECK(equivalent(normalized_sublinear_between(h0, f0), h0));
  auto mx = Prevision::sub(DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}});
  CHECK(equivalent(normalized_sublinear_between(kLambda, mx), mx));
  CHECK_THROWS_AS(normalized_sublinear_between(kLambda, combine(Combine::scale(R(1, 2)), {mx})), PreconditionError);

  std::mt19937_64 rng(6);
  const auto grid = box_grid(2, 3, 2);
  for (int t = 0; t < 200; ++t) {
    auto p = random_massed(rng, true);
    REQUIRE(is_normalized(p));
    std::vector<Point> gens = all_gens(p);
    for (const auto& g : random_gens(rng, 2, 2)) gens.push_back(with_mass(g, R(pick(rng, 1, 4), 4)));
    auto f0 = Prevision::sub(DownGen{gens});
    auto f = normalized_sublinear_between(p, f0);
    CHECK(is_sublinear(f));
    CHECK(is_normalized(f));
    CHECK(leq(p, f));
    CHECK(leq(f, f0));
    if (t < 40) {
      for (const auto& h : grid) CHECK(eval_finite(f, h) == shadow_oracle(f0, gens, h, false));
    }
  }
}
