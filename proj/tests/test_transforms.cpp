#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prevcalc/lp.hpp"
#include "prevcalc/transforms.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const Prevision kLambda = Prevision::linear(P2(R(1, 2), R(1, 2)));
const Prevision kH0 = Prevision::linear(P2(R(1), R(0)));
const Prevision kH1 = Prevision::linear(P2(R(0), R(1)));
const Prevision kMax = Prevision::sub(DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}});
const Prevision kMin = Prevision::super(UpGen{{P2(R(1), R(0)), P2(R(0), R(1))}});

std::vector<Point> positive_delta_points() {
  std::vector<Point> out;
  for (const auto& p : delta_grid(2, 8)) {
    if (p.strictly_positive()) out.push_back(p);
  }
  return out;
}

// max{g + m : g 1 + m a <= x, g, m >= 0} by enumerating g on a fine grid.
Rat two_ray_oracle(const Point& a, const Point& x) {
  Rat best = 0;
  for (long k = 0; k <= 256; ++k) {
    Rat g = R(k, 64);
    std::optional<Rat> m;
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rat room = x[i] - g;
      if (room < 0) {
        m.reset();
        break;
      }
      Rat c = room / a[i];
      if (!m || c < *m) m = c;
    }
    if (m) best = std::max(best, Rat(g + *m));
  }
  return best;
}

Prevision flavored(std::mt19937_64& rng, Flavor f) {
  // rescale generators to mass <= 1 or = 1
  auto fix = [&](std::vector<Point>& gens) {
    for (auto& g : gens) {
      if (g.is_zero()) g = Point::ones(2);
      Rat target = f == Flavor::Norm ? R(1) : R(pick(rng, 1, 4), 4);
      g = (target / g.mass()) * g;
    }
  };
  auto p = random_any(rng, 2);
  if (f == Flavor::Plain) return p;
  if (const auto* m = std::get_if<MinOfSub>(&p.form())) {
    MinOfSub q = *m;
    for (auto& b : q.branches) fix(b.gens);
    return Prevision(2, q);
  }
  MaxOfSuper q = std::get<MaxOfSuper>(p.form());
  for (auto& b : q.branches) fix(b.gens);
  return Prevision(2, q);
}

}  // namespace

TEST_CASE("flavors") {
  CHECK(parse_flavor("norm") == Flavor::Norm);
  CHECK(to_string(Flavor::Subnorm) == "subnorm");
  CHECK_THROWS_AS(parse_flavor("full"), PreconditionError);
  CHECK(has_flavor(kLambda, Flavor::Norm));
  CHECK_FALSE(has_flavor(Prevision::linear(P2(R(1), R(1))), Flavor::Subnorm));
}

TEST_CASE("nimP and qusP membership") {
  auto q = nimP(kLambda, Flavor::Plain);
  CHECK(q.canonical == kLambda);
  CHECK(member_nim(q, combine(Combine::sup(), {kH0, kLambda}), Flavor::Plain));
  CHECK_FALSE(member_nim(q, kMin, Flavor::Plain));
  auto c = qusP(kLambda, Flavor::Plain);
  CHECK(member_qus(c, combine(Combine::inf(), {kH1, kLambda}), Flavor::Plain));
  CHECK(member_qus(qusP(kMax, Flavor::Plain), kH0, Flavor::Plain));
  CHECK_FALSE(member_qus(c, combine(Combine::sup(), {kH0, kLambda}), Flavor::Plain));
  CHECK(member_qus(CPredSuper::top(2), kMin, Flavor::Plain));
  CHECK_THROWS_AS(nimP(Prevision::linear(P2(R(1), R(1))), Flavor::Norm), FlavorMismatch);
  CHECK_THROWS_AS(member_nim(q, Prevision::gauge({P2(R(1), R(0))}, GaugeDirection::Down), Flavor::Plain),
                  PreconditionError);
}

TEST_CASE("sandwich examples") {
  auto r = sandwich(UpGen{{P2(R(1), R(0)), P2(R(0), R(1))}}, DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}}, Flavor::Plain);
  REQUIRE(std::holds_alternative<LinearPrev>(r));
  auto w = Prevision::linear(std::get<LinearPrev>(r).weights);
  const auto grid = box_grid(2, 4, 2);
  CHECK(sampled_leq(kMin, w, grid));
  CHECK(sampled_leq(w, kMax, grid));

  auto s = sandwich(UpGen{{P2(R(1, 2), R(1, 2))}}, DownGen{{P2(R(1, 2), R(1, 2))}}, Flavor::Norm);
  REQUIRE(std::holds_alternative<LinearPrev>(s));
  CHECK(std::get<LinearPrev>(s).weights == P2(R(1, 2), R(1, 2)));

  auto f = sandwich(UpGen{{P2(R(1), R(1))}}, DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}}, Flavor::Plain);
  REQUIRE(std::holds_alternative<DominationFailure>(f));
  const auto& h = std::get<DominationFailure>(f).witness;
  CHECK(h[0] + h[1] > std::max(h[0], h[1]));
}

TEST_CASE("sandwich succeeds exactly under domination") {
  std::mt19937_64 rng(21);
  int ok = 0;
  const auto grid = box_grid(2, 4, 2);
  for (int t = 0; t < 150; ++t) {
    UpGen q{random_gens(rng, 2, 3)};
    DownGen p{random_gens(rng, 2, 3)};
    if (pick(rng, 0, 1)) {
      for (auto& g : q.gens) g = R(1, 2) * g;
    }
    auto lower = Prevision::super(q);
    auto upper = Prevision::sub(p);
    auto r = sandwich(q, p, Flavor::Plain);
    if (std::holds_alternative<LinearPrev>(r)) {
      ++ok;
      auto w = Prevision::linear(std::get<LinearPrev>(r).weights);
      CHECK(sampled_leq(lower, w, grid));
      CHECK(sampled_leq(w, upper, grid));
      CHECK(leq(lower, upper));
    } else {
      const auto& h = std::get<DominationFailure>(r).witness;
      CHECK(eval_finite(lower, h) > eval_finite(upper, h));
    }
  }
  CHECK(ok > 0);
  CHECK(ok < 150);
}

TEST_CASE("orthogonal_family examples") {
  auto a = orthogonal_family(OrthDirection::SuperToSub,
                             {combine(Combine::inf(), {kH0, kLambda}), combine(Combine::inf(), {kH1, kLambda})}, 2,
                             Flavor::Plain);
  REQUIRE(std::holds_alternative<QPredSub>(a));
  CHECK(equivalent(std::get<QPredSub>(a).canonical, kLambda));
  auto b = orthogonal_family(OrthDirection::SubToSuper,
                             {combine(Combine::sup(), {kH0, kLambda}), combine(Combine::sup(), {kH1, kLambda})}, 2,
                             Flavor::Plain);
  REQUIRE(std::holds_alternative<CPredSuper>(b));
  CHECK(equivalent(*std::get<CPredSuper>(b).canonical, kLambda));
  auto e = orthogonal_family(OrthDirection::SubToSuper, {}, 2, Flavor::Plain);
  CHECK(std::get<CPredSuper>(e).is_top());
  auto z = orthogonal_super_to_sub({}, 2, Flavor::Norm);
  CHECK(equivalent(z.canonical, kMin));
  CHECK_THROWS_AS(orthogonal_family(OrthDirection::SuperToSub, {kMax}, 2, Flavor::Plain), PreconditionError);
}

TEST_CASE("tight_sublinear_witness examples") {
  auto f = tight_sublinear_witness(kLambda, P2(R(1), R(1)), Flavor::Plain);
  CHECK(equivalent(f, kMax));
  auto p = Prevision::super(UpGen{{P2(R(1), R(1)), P2(R(3), R(0))}});
  auto g = tight_sublinear_witness(p, P2(R(1), R(1)), Flavor::Plain);
  CHECK(equivalent(g, combine(Combine::scale(R(2)), {kMax})));
  CHECK_THROWS_AS(tight_sublinear_witness(kLambda, P2(R(1), R(0)), Flavor::Plain), PreconditionError);
  for (Flavor fl : {Flavor::Plain, Flavor::Subnorm}) {
    CHECK(equivalent(tight_sublinear_witness(Prevision::zero(2), P2(R(1), R(1)), fl), Prevision::zero(2)));
  }
}

TEST_CASE("tight_sublinear_witness on random previsions") {
  std::mt19937_64 rng(22);
  const auto hs = positive_delta_points();
  const auto grid = box_grid(2, 4, 2);
  for (Flavor fl : {Flavor::Plain, Flavor::Subnorm, Flavor::Norm}) {
    for (int t = 0; t < 15; ++t) {
      auto p = flavored(rng, fl);
      REQUIRE(has_flavor(p, fl));
      for (std::size_t k = 0; k < hs.size(); k += 3) {
        const auto& h = hs[k];
        if (eval_finite(p, h) == 0) continue;
        auto f = tight_sublinear_witness(p, h, fl);
        CHECK(eval_finite(f, h) == eval_finite(p, h));
        CHECK(sampled_leq(p, f, grid));
        CHECK(is_sublinear(f));
        CHECK(has_flavor(f, fl));
      }
    }
  }
}

TEST_CASE("corner_superlinear_witness examples") {
  auto f = corner_superlinear_witness(kLambda, P2(R(1), R(1)), R(3, 4), Flavor::Plain);
  CHECK(equivalent(f, combine(Combine::scale(R(6, 7)), {kMin})));
  CHECK(eval_finite(f, P2(R(1), R(1))) == R(6, 7));
  CHECK_THROWS_AS(corner_superlinear_witness(kLambda, P2(R(1), R(1)), R(1), Flavor::Plain), PreconditionError);

  auto w = corner_superlinear_witness_ex(kLambda, P2(R(1), R(1)), R(3, 4), Flavor::Norm);
  CHECK(is_normalized(w.f));
  CHECK(leq(w.f, kLambda));
  CHECK(eval_finite(w.f, P2(R(1), R(1))) > R(3, 4));
  CHECK(eval_finite(w.f, Point::ones(2)) >= 1);
  if (!w.shadow_fallback) {
    const Point a = P2(R(7, 6), R(7, 6));
    for (const auto& x : box_grid(2, 2, 2)) CHECK(eval_finite(w.f, x) == two_ray_oracle(a, x));
  }
}

TEST_CASE("corner_superlinear_witness on random previsions") {
  std::mt19937_64 rng(23);
  const auto hs = positive_delta_points();
  const auto grid = box_grid(2, 4, 2);
  int fallbacks = 0;
  for (Flavor fl : {Flavor::Plain, Flavor::Subnorm, Flavor::Norm}) {
    for (int t = 0; t < 15; ++t) {
      auto p = flavored(rng, fl);
      for (std::size_t k = 0; k < hs.size(); k += 3) {
        const auto& h = hs[k];
        Rat ph = eval_finite(p, h);
        if (ph == 0) continue;
        Rat r = R(15, 16) * ph;
        auto w = corner_superlinear_witness_ex(p, h, r, fl);
        fallbacks += w.shadow_fallback ? 1 : 0;
        CHECK(eval_finite(w.f, h) > r);
        CHECK(sampled_leq(w.f, p, grid));
        CHECK(is_superlinear(w.f));
        CHECK(has_flavor(w.f, fl));
      }
    }
  }
  MESSAGE("norm fallbacks: " << fallbacks);
}

TEST_CASE("box_union_criterion") {
  auto r = box_union_criterion(kLambda, {P2(R(3), R(0)), P2(R(0), R(3))});
  REQUIRE(std::holds_alternative<BoxHolds>(r));
  CHECK(std::get<BoxHolds>(r).value == R(3, 2));

  auto s = box_union_criterion(kLambda, {P2(R(1), R(0))});
  REQUIRE(std::holds_alternative<BoxFails>(s));
  const auto& f = std::get<BoxFails>(s).f;
  CHECK(eval(f, P2(R(1), R(0))) == Extended(R(1)));
  CHECK(eval(f, P2(R(1), R(1))).is_infinite());
  CHECK(leq(kLambda, f));

  auto t = box_union_criterion(kLambda, {P2(R(3), R(3))});
  REQUIRE(std::holds_alternative<BoxHolds>(t));
  CHECK(std::get<BoxHolds>(t).a == Point({R(1)}));

  std::mt19937_64 rng(24);
  for (int k = 0; k < 60; ++k) {
    auto p = random_any(rng, 2);
    std::vector<Point> hs;
    long m = pick(rng, 1, 3);
    for (long i = 0; i < m; ++i) hs.push_back(random_point(rng, 2, 3, 4));
    auto res = box_union_criterion(p, hs);
    // grid oracle over a in the simplex
    Rat grid_best = -1;
    for (const auto& a : simplex_grid(hs.size(), 12)) {
      Point x = Point::zeros(2);
      for (std::size_t i = 0; i < hs.size(); ++i) x = x + a[i] * hs[i];
      grid_best = std::max(grid_best, eval_finite(p, x));
    }
    if (const auto* h = std::get_if<BoxHolds>(&res)) {
      Point x = Point::zeros(2);
      for (std::size_t i = 0; i < hs.size(); ++i) x = x + h->a[i] * hs[i];
      CHECK(eval_finite(p, x) == h->value);
      CHECK(h->value > 1);
      CHECK(h->value >= grid_best);
      // any sublinear F >= P exceeds 1 on some h_i
      auto tight = tight_sublinear_witness(p, Point::ones(2), Flavor::Plain);
      if (leq(p, tight)) {
        Rat best = 0;
        for (const auto& hi : hs) best = std::max(best, eval_finite(tight, hi));
        CHECK(best > 1);
      }
    } else {
      CHECK(grid_best <= 1);
      const auto& fw = std::get<BoxFails>(res).f;
      CHECK(is_sublinear(fw));
      for (const auto& hi : hs) CHECK(eval(fw, hi) <= Extended(R(1)));
    }
  }
}

TEST_CASE("dia_intersection_criterion") {
  auto r = dia_intersection_criterion(kLambda, {P2(R(3), R(1)), P2(R(1), R(3))});
  REQUIRE(std::holds_alternative<DiaHolds>(r));
  CHECK(std::get<DiaHolds>(r).infimum == 2);
  const auto& f = std::get<DiaHolds>(r).f;
  CHECK(leq(f, kLambda));
  CHECK(eval_finite(f, P2(R(3), R(1))) > 1);

  auto s = dia_intersection_criterion(kLambda, {P2(R(1), R(1))});
  REQUIRE(std::holds_alternative<DiaFails>(s));
  CHECK(std::get<DiaFails>(s).a == Point({R(1)}));
  CHECK(std::get<DiaFails>(s).value == 1);

  auto three = combine(Combine::scale(R(3)), {kLambda});
  auto t = dia_intersection_criterion(three, {P2(R(1), R(1))});
  REQUIRE(std::holds_alternative<DiaHolds>(t));
  CHECK(std::get<DiaHolds>(t).infimum == 3);
  CHECK(eval_finite(std::get<DiaHolds>(t).f, P2(R(1), R(1))) > 1);
  CHECK_THROWS_AS(dia_intersection_criterion(kLambda, {P2(R(1), R(0))}), PreconditionError);

  std::mt19937_64 rng(25);
  for (int k = 0; k < 60; ++k) {
    auto p = combine(Combine::scale(R(pick(rng, 1, 6))), {random_any(rng, 2)});
    std::vector<Point> hs;
    long m = pick(rng, 1, 3);
    for (long i = 0; i < m; ++i) hs.push_back(random_positive_point(rng, 2));
    auto res = dia_intersection_criterion(p, hs);
    Rat grid_low;
    bool first = true;
    for (const auto& a : simplex_grid(hs.size(), 12)) {
      Point x = Point::zeros(2);
      for (std::size_t i = 0; i < hs.size(); ++i) x = x + a[i] * hs[i];
      Rat v = eval_finite(p, x);
      if (first || v < grid_low) grid_low = v;
      first = false;
    }
    if (const auto* h = std::get_if<DiaHolds>(&res)) {
      CHECK(h->infimum > 1);
      CHECK(h->infimum <= grid_low);
      CHECK(is_superlinear(h->f));
    } else {
      const auto& fl = std::get<DiaFails>(res);
      CHECK(fl.value <= 1);
      CHECK(fl.value <= grid_low);
    }
  }
}

TEST_CASE("delta_grid approximates the diamond infimum") {
  for (unsigned big_n : {4u, 8u}) {
    auto pts = delta_grid(2, big_n);
    for (const auto& b : pts) {
      CHECK(b.mass() > 1 - R(2, big_n));
      CHECK(b.mass() <= 1);
    }
  }
  auto r = dia_intersection_criterion(kLambda, {P2(R(3), R(1)), P2(R(1), R(3))});
  Rat low = std::get<DiaHolds>(r).infimum;
  for (const auto& b : delta_grid(2, 8)) {
    Point x = b[0] * P2(R(3), R(1)) + b[1] * P2(R(1), R(3));
    CHECK(eval_finite(kLambda, x) >= low * b.mass());
  }
}

TEST_CASE("mix_dominance_range") {
  auto p1 = combine(Combine::sup(), {kH0, kLambda});
  auto p2 = combine(Combine::sup(), {kH1, kLambda});
  CHECK(mix_dominance_range(kLambda, p1, p2).empty);
  auto mn = Prevision::super(UpGen{{P2(R(2), R(1)), P2(R(1), R(2))}});
  auto range = mix_dominance_range(Prevision::linear(P2(R(1), R(1))), kMax, mn);
  CHECK(to_string(range) == "[1/2, 1]");
  CHECK(mix_dominance_range(kLambda, kLambda, kLambda) == Interval{false, R(0), R(1)});

  std::mt19937_64 rng(26);
  const auto grid = box_grid(2, 8, 1);
  for (int t = 0; t < 60; ++t) {
    auto a = random_any(rng, 2);
    auto b = random_any(rng, 2);
    auto top = combine(Combine::add(), {combine(Combine::sup(), {a, b}), Prevision::linear(random_point(rng, 2, 1, 4))});
    auto iv = mix_dominance_range(top, a, b);
    for (long k = 0; k <= 16; ++k) {
      Rat x = R(k, 16);
      bool inside = !iv.empty && iv.lo <= x && x <= iv.hi;
      bool sampled = sampled_leq(combine(Combine::mix(x), {a, b}), top, grid);
      if (inside) CHECK(sampled);
      CHECK(inside == leq(combine(Combine::mix(x), {a, b}), top));
    }
  }
}

TEST_CASE("double_orthogonal_roundtrip") {
  auto q = double_orthogonal_roundtrip(nimP(kLambda, Flavor::Plain));
  CHECK(equivalent(q.canonical, kLambda));
  auto c = double_orthogonal_roundtrip(qusP(kMax, Flavor::Plain));
  CHECK(equivalent(*c.canonical, kMax));
  CHECK(double_orthogonal_roundtrip(CPredSuper::top(2)).is_top());
  std::mt19937_64 rng(27);
  for (int t = 0; t < 60; ++t) {
    auto p = random_any(rng, 2);
    CHECK(equivalent(double_orthogonal_roundtrip(nimP(p, Flavor::Plain)).canonical, p));
    CHECK(equivalent(*double_orthogonal_roundtrip(qusP(p, Flavor::Plain)).canonical, p));
  }
}
