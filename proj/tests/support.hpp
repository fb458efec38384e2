#ifndef PREVCALC_TESTS_SUPPORT_HPP
#define PREVCALC_TESTS_SUPPORT_HPP

#include "prevcalc/prevision.hpp"

#include <random>

namespace testsupport {

using namespace prevcalc;

inline Rat R(long p, long q = 1) { return make_rat(p, q); }
inline Point P2(Rat a, Rat b) { return Point({std::move(a), std::move(b)}); }

inline long pick(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline Point random_point(std::mt19937_64& rng, std::size_t n, long max_num = 4, long max_den = 4) {
  Vec v(n);
  for (auto& c : v) c = R(pick(rng, 0, max_num), pick(rng, 1, max_den));
  return Point(v);
}

inline Point random_positive_point(std::mt19937_64& rng, std::size_t n) {
  Vec v(n);
  for (auto& c : v) c = R(pick(rng, 1, 6), pick(rng, 1, 4));
  return Point(v);
}

inline std::vector<Point> random_gens(std::mt19937_64& rng, std::size_t n, long max_gens) {
  std::vector<Point> g;
  long k = pick(rng, 1, max_gens);
  for (long i = 0; i < k; ++i) g.push_back(random_point(rng, n));
  return g;
}

inline Prevision random_min_of_sub(std::mt19937_64& rng, std::size_t n) {
  std::vector<DownGen> b;
  long k = pick(rng, 1, 3);
  for (long i = 0; i < k; ++i) b.push_back(DownGen{random_gens(rng, n, 3)});
  return Prevision::min_of_sub(b);
}

inline Prevision random_max_of_super(std::mt19937_64& rng, std::size_t n) {
  std::vector<UpGen> b;
  long k = pick(rng, 1, 3);
  for (long i = 0; i < k; ++i) b.push_back(UpGen{random_gens(rng, n, 3)});
  return Prevision::max_of_super(b);
}

inline Prevision random_any(std::mt19937_64& rng, std::size_t n) {
  return pick(rng, 0, 1) ? random_min_of_sub(rng, n) : random_max_of_super(rng, n);
}

/// Points with coordinates k/den, 0 <= k <= den * scale.
inline std::vector<Point> box_grid(std::size_t n, long den, long scale = 1) {
  std::vector<Point> out;
  std::vector<long> k(n, 0);
  while (true) {
    Vec v;
    for (auto ki : k) v.push_back(R(ki, den));
    out.emplace_back(v);
    std::size_t i = 0;
    while (i < n && k[i] == den * scale) k[i++] = 0;
    if (i == n) break;
    ++k[i];
  }
  return out;
}

/// Pointwise comparison oracle on a grid: true when f(h) <= g(h) everywhere sampled.
inline bool sampled_leq(const Prevision& f, const Prevision& g, const std::vector<Point>& grid) {
  for (const auto& h : grid) {
    if (eval(g, h) < eval(f, h)) return false;
  }
  return true;
}

}  // namespace testsupport

#endif  // PREVCALC_TESTS_SUPPORT_HPP
