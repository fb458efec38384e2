#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prevcalc/transforms.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const Prevision kLambda = Prevision::linear(P2(R(1, 2), R(1, 2)));
const Prevision kH0 = Prevision::linear(P2(R(1), R(0)));
const Prevision kH1 = Prevision::linear(P2(R(0), R(1)));

Prevision random_sub(std::mt19937_64& rng, std::size_t n) { return Prevision::sub(DownGen{random_gens(rng, n, 3)}); }
Prevision random_super(std::mt19937_64& rng, std::size_t n) { return Prevision::super(UpGen{random_gens(rng, n, 3)}); }

SmythGen random_smyth(std::mt19937_64& rng, std::size_t n) {
  SmythGen s;
  long k = pick(rng, 1, 3);
  for (long i = 0; i < k; ++i) s.gens.push_back(random_sub(rng, n));
  return s;
}

HoareGen random_hoare(std::mt19937_64& rng, std::size_t n) {
  HoareGen s;
  long k = pick(rng, 1, 3);
  for (long i = 0; i < k; ++i) s.gens.push_back(random_super(rng, n));
  return s;
}

// Pointwise min/max over generators, evaluated directly.
Rat min_over(const std::vector<Prevision>& gens, const Point& h) {
  Rat best = eval_finite(gens.front(), h);
  for (const auto& g : gens) best = std::min(best, eval_finite(g, h));
  return best;
}

Rat max_over(const std::vector<Prevision>& gens, const Point& h) {
  Rat best = eval_finite(gens.front(), h);
  for (const auto& g : gens) best = std::max(best, eval_finite(g, h));
  return best;
}

}  // namespace

TEST_CASE("cone_op examples") {
  auto p1 = combine(Combine::sup(), {kH0, kLambda});
  auto p2 = combine(Combine::sup(), {kH1, kLambda});
  SmythGen q = cone_op(ConeOp::smyth_inf(), std::vector<SmythGen>{SmythGen{{p1}}, SmythGen{{p2}}});
  REQUIRE(q.gens.size() == 2);
  CHECK(q.gens[0] == p1);
  CHECK(q.gens[1] == p2);
  CHECK(equivalent(minP(q), kLambda));

  auto mx = Prevision::sub(DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}});
  auto mn = Prevision::super(UpGen{{P2(R(2), R(1)), P2(R(1), R(2))}});
  HoareGen c = cone_op(ConeOp::mix(R(1, 2)), std::vector<HoareGen>{HoareGen{{mx}}, HoareGen{{mn}}});
  REQUIRE(c.gens.size() == 1);
  CHECK(equivalent(c.gens[0], Prevision::linear(P2(R(1), R(1)))));

  SmythGen z = cone_op(ConeOp::scale(R(0)), std::vector<SmythGen>{SmythGen{{p1, p2}}});
  REQUIRE(z.gens.size() == 1);
  CHECK(z.gens[0] == Prevision::zero(2));

  CHECK_THROWS_AS(cone_op(ConeOp::hoare_sup(), std::vector<SmythGen>{SmythGen{{p1}}}), FlavorMismatch);
  CHECK_THROWS_AS(cone_op(ConeOp::smyth_inf(), std::vector<HoareGen>{HoareGen{{mn}}}), FlavorMismatch);
  CHECK_THROWS_AS(cone_op(ConeOp::add(), std::vector<SmythGen>{SmythGen{{p1}}}), PreconditionError);
}

TEST_CASE("canonicalize examples") {
  auto half = combine(Combine::scale(R(1, 2)), {kLambda});
  SmythGen s = canonicalize(SmythGen{{kLambda, half}});
  REQUIRE(s.gens.size() == 1);
  CHECK(equivalent(s.gens[0], half));
  HoareGen h = canonicalize(HoareGen{{kLambda, half}});
  REQUIRE(h.gens.size() == 1);
  CHECK(equivalent(h.gens[0], kLambda));
  SmythGen one = canonicalize(SmythGen{{kLambda}});
  REQUIRE(one.gens.size() == 1);
  CHECK(one.gens[0] == kLambda);
}

TEST_CASE("minP and supP examples") {
  auto mx = Prevision::sub(DownGen{{P2(R(1), R(0)), P2(R(0), R(1))}});
  auto sum = Prevision::linear(P2(R(1), R(1)));
  CHECK(equivalent(minP(SmythGen{{mx, sum}}), mx));
  CHECK(equivalent(minP(SmythGen{{mx}}), mx));
  auto mn = Prevision::super(UpGen{{P2(R(1), R(0)), P2(R(0), R(1))}});
  CHECK(equivalent(supP(HoareGen{{mn, kLambda}}), kLambda));
  auto q1 = combine(Combine::inf(), {kH0, kLambda});
  auto q2 = combine(Combine::inf(), {kH1, kLambda});
  CHECK(equivalent(supP(HoareGen{{q1, q2}}), kLambda));
  CHECK_THROWS_AS(minP(SmythGen{{mn}}), PreconditionError);
  CHECK_THROWS_AS(supP(HoareGen{{mx}}), PreconditionError);
}

TEST_CASE("minP and supP preservation laws") {
  std::mt19937_64 rng(11);
  const auto grid = box_grid(2, 2, 2);
  for (int t = 0; t < 60; ++t) {
    auto q1 = random_smyth(rng, 2);
    auto q2 = random_smyth(rng, 2);
    Rat a = R(pick(rng, 0, 4), 4);
    auto inf = cone_op(ConeOp::smyth_inf(), std::vector<SmythGen>{q1, q2});
    CHECK(equivalent(minP(inf), combine(Combine::inf(), {minP(q1), minP(q2)})));
    auto mixed = cone_op(ConeOp::mix(a), std::vector<SmythGen>{q1, q2});
    CHECK(equivalent(minP(mixed), combine(Combine::mix(a), {minP(q1), minP(q2)})));
    for (const auto& h : grid) {
      CHECK(eval_finite(minP(mixed), h) == a * min_over(q1.gens, h) + (1 - a) * min_over(q2.gens, h));
    }

    auto c1 = random_hoare(rng, 2);
    auto c2 = random_hoare(rng, 2);
    auto sup = cone_op(ConeOp::hoare_sup(), std::vector<HoareGen>{c1, c2});
    CHECK(equivalent(supP(sup), combine(Combine::sup(), {supP(c1), supP(c2)})));
    auto hm = cone_op(ConeOp::mix(a), std::vector<HoareGen>{c1, c2});
    CHECK(equivalent(supP(hm), combine(Combine::mix(a), {supP(c1), supP(c2)})));
    for (const auto& h : grid) {
      CHECK(eval_finite(supP(hm), h) == a * max_over(c1.gens, h) + (1 - a) * max_over(c2.gens, h));
    }
  }
}

TEST_CASE("convex combinations of Hoare generators do not change supP") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    auto c = random_hoare(rng, 2);
    const auto& x = c.gens[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(c.gens.size()) - 1))];
    const auto& y = c.gens[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(c.gens.size()) - 1))];
    HoareGen bigger = c;
    bigger.gens.push_back(combine(Combine::mix(R(pick(rng, 0, 4), 4)), {x, y}));
    CHECK(equivalent(supP(bigger), supP(c)));
  }
}

TEST_CASE("canonicalize preserves the denotation and is idempotent") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 60; ++t) {
    auto q = random_smyth(rng, 2);
    q.gens.push_back(combine(Combine::add(), {q.gens.front(), random_sub(rng, 2)}));
    auto cq = canonicalize(q);
    CHECK(cq.gens.size() <= q.gens.size());
    CHECK(equivalent(minP(cq), minP(q)));
    CHECK(canonicalize(cq).gens.size() == cq.gens.size());

    auto c = random_hoare(rng, 2);
    c.gens.push_back(combine(Combine::scale(R(1, 2)), {c.gens.front()}));
    auto cc = canonicalize(c);
    CHECK(cc.gens.size() < c.gens.size());
    CHECK(equivalent(supP(cc), supP(c)));
    CHECK(canonicalize(cc).gens.size() == cc.gens.size());
  }
}
