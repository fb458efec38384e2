#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prevcalc/lp.hpp"
#include "prevcalc/phpl.hpp"

#include <random>
#include <set>

using namespace prevcalc;

namespace {

Rat R(long p, long q = 1) { return make_rat(p, q); }

long pick(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

PhplExpr random_tree(std::mt19937_64& rng, std::size_t m, int depth) {
  if (depth == 0 || pick(rng, 0, 3) == 0) {
    Vec c(m);
    for (auto& v : c) v = R(pick(rng, 0, 6), pick(rng, 1, 4));
    return PhplExpr::linear(c);
  }
  std::vector<PhplExpr> kids;
  long k = pick(rng, 2, 3);
  for (long i = 0; i < k; ++i) kids.push_back(random_tree(rng, m, depth - 1));
  switch (pick(rng, 0, 3)) {
    case 0:
      return PhplExpr::sum(kids);
    case 1:
      return PhplExpr::min(kids);
    case 2:
      return PhplExpr::max(kids);
    default:
      return PhplExpr::scale(R(pick(rng, 1, 5), pick(rng, 1, 3)), kids.front());
  }
}

}  // namespace

TEST_CASE("rational parsing is canonical") {
  CHECK(to_string(parse_rat("7/14")) == "1/2");
  CHECK(to_string(parse_rat("6/3")) == "2");
  CHECK(to_string(parse_rat("-3/6")) == "-1/2");
  CHECK(to_string(parse_rat(" 0/5 ")) == "0");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(Point({R(1), R(-1)}), std::invalid_argument);
  CHECK(parse_point("1,1/2") == Point({R(1), R(1, 2)}));
}

TEST_CASE("lp_solve basic cases") {
  auto r = lp_solve(Sense::Max, LinExpr{{R(1)}}, {make_constraint({R(1)}, Relation::LE, R(3)),
                                                   make_constraint({R(1)}, Relation::GE, R(0))});
  REQUIRE(is_optimal(r));
  CHECK(std::get<LpOptimal>(r).value == 3);
  CHECK(std::get<LpOptimal>(r).witness == Vec{R(3)});

  auto inf = lp_solve(Sense::Max, LinExpr{{R(1)}}, {make_constraint({R(1)}, Relation::LE, R(-1)),
                                                     make_constraint({R(1)}, Relation::GE, R(0))});
  CHECK(std::holds_alternative<LpInfeasible>(inf));

  auto unb = lp_solve(Sense::Max, LinExpr{{R(1)}}, {make_constraint({R(1)}, Relation::GE, R(0))});
  CHECK(std::holds_alternative<LpUnbounded>(unb));

  auto eq = lp_solve(Sense::Min, LinExpr{{R(1), R(1)}},
                     {make_constraint({R(1), R(-1)}, Relation::EQ, R(1)),
                      make_constraint({R(0), R(1)}, Relation::GE, R(-5))});
  REQUIRE(is_optimal(eq));
  CHECK(std::get<LpOptimal>(eq).value == -9);
}

TEST_CASE("lp_solve on the tight box constraint system") {
  // a t + b (1-t) >= min(1+t, 2-t) at t in {0, 1/2, 1}, a,b >= 0
  std::vector<Constraint> cs;
  for (Rat t : {R(0), R(1, 2), R(1)}) {
    Rat rhs = std::min(Rat(1 + t), Rat(2 - t));
    cs.push_back(make_constraint({t, 1 - t}, Relation::GE, rhs));
  }
  LpOptions opts;
  opts.all_nonneg = true;
  auto r = lp_solve(Sense::Min, LinExpr{{R(1), R(1)}}, cs, opts);
  REQUIRE(is_optimal(r));
  const auto& opt = std::get<LpOptimal>(r);
  CHECK(opt.value == 3);
  CHECK(opt.witness[0] + opt.witness[1] == 3);
  for (const auto& c : cs) CHECK(c.expr(opt.witness) >= 0);
  CHECK(opt.witness == Vec{R(1), R(2)});
}

TEST_CASE("lp_solve agrees with grid enumeration on random 2-variable programs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Constraint> cs;
    cs.push_back(make_constraint({R(1), R(0)}, Relation::LE, R(4)));
    cs.push_back(make_constraint({R(0), R(1)}, Relation::LE, R(4)));
    long k = pick(rng, 1, 4);
    for (long i = 0; i < k; ++i) {
      Relation rel = pick(rng, 0, 1) ? Relation::LE : Relation::GE;
      cs.push_back(make_constraint({R(pick(rng, -3, 3)), R(pick(rng, -3, 3))}, rel, R(pick(rng, -4, 6), 2)));
    }
    LinExpr obj{{R(pick(rng, -3, 3)), R(pick(rng, -3, 3))}};
    LpOptions opts;
    opts.all_nonneg = true;
    auto r = lp_solve(Sense::Max, obj, cs, opts);
    std::optional<Rat> best;
    for (long i = 0; i <= 32; ++i) {
      for (long j = 0; j <= 32; ++j) {
        Vec x{R(i, 8), R(j, 8)};
        bool ok = std::all_of(cs.begin(), cs.end(), [&](const Constraint& c) {
          Rat v = c.expr(x);
          return c.rel == Relation::LE ? v <= 0 : v >= 0;
        });
        if (ok && (!best || obj(x) > *best)) best = obj(x);
      }
    }
    CHECK_FALSE(std::holds_alternative<LpUnbounded>(r));
    if (is_optimal(r)) {
      const auto& opt = std::get<LpOptimal>(r);
      CHECK(obj(opt.witness) == opt.value);
      for (std::size_t i = 0; i < 2; ++i) CHECK(opt.witness[i] >= 0);
      for (const auto& c : cs) {
        Rat v = c.expr(opt.witness);
        CHECK((c.rel == Relation::LE ? v <= 0 : v >= 0));
      }
      if (best) CHECK(*best <= opt.value);
    } else {
      CHECK_FALSE(best.has_value());
    }
  }
}

TEST_CASE("delta_grid") {
  CHECK_THROWS(delta_grid(1, 1));
  CHECK(delta_grid(1, 2) == std::vector<Point>{Point({R(1)})});
  auto g = delta_grid(2, 3);
  std::vector<Point> expected{Point({R(0), R(2, 3)}), Point({R(1, 3), R(1, 3)}), Point({R(2, 3), R(0)}),
                              Point({R(0), R(1)}),    Point({R(1, 3), R(2, 3)}), Point({R(2, 3), R(1, 3)}),
                              Point({R(1), R(0)})};
  CHECK(g == expected);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (unsigned big_n = static_cast<unsigned>(n + 1); big_n <= 8; ++big_n) {
      std::set<Point> brute;
      std::vector<unsigned> k(n, 0);
      while (true) {
        unsigned s = 0;
        for (auto v : k) s += v;
        if (s <= big_n && s + n > big_n) {
          Vec v;
          for (auto ki : k) v.push_back(Rat(Int(ki), Int(big_n)));
          brute.insert(Point(v));
        }
        std::size_t i = 0;
        while (i < n && k[i] == big_n) k[i++] = 0;
        if (i == n) break;
        ++k[i];
      }
      auto grid = delta_grid(n, big_n);
      CHECK(grid.size() == brute.size());
      CHECK(std::set<Point>(grid.begin(), grid.end()) == brute);
      for (const auto& p : grid) {
        CHECK(p.mass() <= 1);
        CHECK(p.mass() > 1 - Rat(Int(n), Int(big_n)));
      }
    }
  }
}

TEST_CASE("verify_nonneg_ph_pl examples") {
  auto h0 = PhplExpr::linear({R(1), R(0)});
  auto lam = PhplExpr::linear({R(1, 2), R(1, 2)});
  auto p1 = PhplExpr::max({h0, lam});
  CHECK(is_nonneg(verify_nonneg_ph_pl(p1 - lam)));
  auto v = verify_nonneg_ph_pl(lam - p1);
  REQUIRE(std::holds_alternative<Negative>(v));
  CHECK(std::get<Negative>(v).witness == Vec{R(1), R(0)});
  CHECK(std::get<Negative>(v).value == R(-1, 2));
  CHECK(is_nonneg(verify_nonneg_ph_pl(PhplExpr::zero(2))));
  CHECK_THROWS_AS(verify_nonneg_ph_pl(PhplExpr::zero(5)), EngineBoundError);
  CHECK(std::get<Nonneg>(verify_nonneg_ph_pl(PhplExpr::zero(5), EngineMode::AllowGrid)).grid_only);
}

TEST_CASE("verify_nonneg_ph_pl agrees with denominator-64 sampling in dimension 2") {
  std::mt19937_64 rng(2024);
  int negatives = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto f = random_tree(rng, 2, 3) - random_tree(rng, 2, 2);
    auto verdict = verify_nonneg_ph_pl(f);
    std::optional<Rat> sampled_min;
    for (long i = 0; i <= 64; ++i) {
      Rat v = f.eval({R(i, 64), R(64 - i, 64)});
      if (!sampled_min || v < *sampled_min) sampled_min = v;
    }
    if (is_nonneg(verdict)) {
      CHECK(*sampled_min >= 0);
    } else {
      ++negatives;
      const auto& neg = std::get<Negative>(verdict);
      CHECK(f.eval(neg.witness) == neg.value);
      CHECK(neg.value < 0);
      CHECK(neg.value <= *sampled_min);
    }
  }
  CHECK(negatives > 0);
  CHECK(negatives < 500);
}

TEST_CASE("exact engine agrees with sampling in dimension 3") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_tree(rng, 3, 2) - random_tree(rng, 3, 2);
    auto verdict = verify_nonneg_ph_pl(f);
    Rat sampled_min = 1;
    bool any = false;
    for (const auto& x : simplex_grid(3, 24)) {
      Rat v = f.eval(x);
      if (!any || v < sampled_min) sampled_min = v;
      any = true;
    }
    if (is_nonneg(verdict)) {
      CHECK(sampled_min >= 0);
    } else {
      CHECK(std::get<Negative>(verdict).value <= sampled_min);
      CHECK(f.eval(std::get<Negative>(verdict).witness) < 0);
    }
  }
}

TEST_CASE("simplex extrema and linear pieces") {
  auto h0 = PhplExpr::linear({R(1), R(0)});
  auto h1 = PhplExpr::linear({R(0), R(1)});
  auto f = PhplExpr::max({h0, h1});
  auto mn = minimize_on_simplex(f);
  CHECK(mn.value == R(1, 2));
  CHECK(mn.argument == Vec{R(1, 2), R(1, 2)});
  CHECK(maximize_on_simplex(f).value == 1);
  auto pieces = linear_pieces(f);
  CHECK(pieces == std::vector<Vec>{{R(0), R(1)}, {R(1), R(0)}});
  auto g3 = PhplExpr::min({PhplExpr::linear({R(1), R(0), R(0)}), PhplExpr::linear({R(0), R(1), R(0)}),
                           PhplExpr::linear({R(0), R(0), R(1)})});
  CHECK(linear_pieces(g3).size() == 3);
  auto sub = f.substitute({{R(1), R(1)}, {R(0), R(1)}});
  CHECK(sub.eval({R(2), R(3)}) == 5);
}
