#include "prevcalc/phpl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

namespace prevcalc {

struct PhplExpr::Node {
  Kind kind;
  std::size_t dim;
  Vec coeffs;  // Linear
  Rat factor;  // Scale
  std::vector<PhplExpr> children;
};

namespace {

std::size_t common_dim(const std::vector<PhplExpr>& terms, const char* what) {
  if (terms.empty()) throw std::invalid_argument(std::string(what) + " of no terms");
  std::size_t m = terms.front().dim();
  for (const auto& t : terms) require_dim(m, t.dim(), what);
  return m;
}

Vec canonical_normal(Vec v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Rat& c) { return c != 0; });
  if (it == v.end()) return v;
  Rat lead = *it;
  for (auto& c : v) c /= lead;
  return v;
}

bool mixed_signs(const Vec& v) {
  bool pos = false;
  bool neg = false;
  for (const auto& c : v) {
    pos = pos || c > 0;
    neg = neg || c < 0;
  }
  return pos && neg;
}

Vec add_vec(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub_vec(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace

PhplExpr PhplExpr::linear(Vec coeffs) {
  if (coeffs.empty()) throw DimensionError("linear form of dimension 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Linear;
  n->dim = coeffs.size();
  n->coeffs = std::move(coeffs);
  return PhplExpr(std::move(n));
}

PhplExpr PhplExpr::zero(std::size_t m) { return linear(Vec(m, Rat(0))); }

PhplExpr PhplExpr::sum(std::vector<PhplExpr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->dim = common_dim(terms, "sum");
  if (terms.size() == 1) return terms.front();
  n->children = std::move(terms);
  return PhplExpr(std::move(n));
}

PhplExpr PhplExpr::scale(Rat factor, PhplExpr e) {
  if (factor == 1) return e;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->dim = e.dim();
  n->factor = std::move(factor);
  n->children.push_back(std::move(e));
  return PhplExpr(std::move(n));
}

PhplExpr PhplExpr::min(std::vector<PhplExpr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Min;
  n->dim = common_dim(terms, "min");
  if (terms.size() == 1) return terms.front();
  n->children = std::move(terms);
  return PhplExpr(std::move(n));
}

PhplExpr PhplExpr::max(std::vector<PhplExpr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Max;
  n->dim = common_dim(terms, "max");
  if (terms.size() == 1) return terms.front();
  n->children = std::move(terms);
  return PhplExpr(std::move(n));
}

PhplExpr operator+(const PhplExpr& a, const PhplExpr& b) { return PhplExpr::sum({a, b}); }

PhplExpr operator-(const PhplExpr& a, const PhplExpr& b) {
  return PhplExpr::sum({a, PhplExpr::scale(Rat(-1), b)});
}

std::size_t PhplExpr::dim() const { return node_->dim; }
PhplExpr::Kind PhplExpr::kind() const { return node_->kind; }

Rat PhplExpr::eval(const Vec& x) const {
  require_dim(dim(), x.size(), "phpl eval");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Linear:
      return dot(n.coeffs, x);
    case Kind::Scale:
      return n.factor * n.children[0].eval(x);
    case Kind::Sum: {
      Rat s = 0;
      for (const auto& c : n.children) s += c.eval(x);
      return s;
    }
    case Kind::Min:
    case Kind::Max: {
      Rat best = n.children[0].eval(x);
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        Rat v = n.children[i].eval(x);
        if (n.kind == Kind::Min ? v < best : v > best) best = std::move(v);
      }
      return best;
    }
  }
  return Rat(0);
}

std::pair<Rat, Vec> PhplExpr::eval_with_gradient(const Vec& x) const {
  require_dim(dim(), x.size(), "phpl eval");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Linear:
      return {dot(n.coeffs, x), n.coeffs};
    case Kind::Scale: {
      auto [v, g] = n.children[0].eval_with_gradient(x);
      for (auto& c : g) c *= n.factor;
      return {n.factor * v, std::move(g)};
    }
    case Kind::Sum: {
      Rat s = 0;
      Vec g(n.dim, Rat(0));
      for (const auto& c : n.children) {
        auto [v, cg] = c.eval_with_gradient(x);
        s += v;
        g = add_vec(g, cg);
      }
      return {s, g};
    }
    case Kind::Min:
    case Kind::Max: {
      auto best = n.children[0].eval_with_gradient(x);
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        auto cur = n.children[i].eval_with_gradient(x);
        if (n.kind == Kind::Min ? cur.first < best.first : cur.first > best.first) best = std::move(cur);
      }
      return best;
    }
  }
  return {Rat(0), Vec(n.dim, Rat(0))};
}

PhplExpr PhplExpr::substitute(const std::vector<Vec>& rows) const {
  require_dim(dim(), rows.size(), "phpl substitute");
  if (rows.empty()) throw DimensionError("empty substitution");
  const std::size_t m = rows.front().size();
  for (const auto& r : rows) require_dim(m, r.size(), "phpl substitute row");
  std::unordered_map<const Node*, PhplExpr> memo;
  std::function<PhplExpr(const PhplExpr&)> go = [&](const PhplExpr& e) -> PhplExpr {
    auto it = memo.find(e.node_.get());
    if (it != memo.end()) return it->second;
    const Node& n = *e.node_;
    PhplExpr out = PhplExpr::zero(m);
    switch (n.kind) {
      case Kind::Linear: {
        Vec c(m, Rat(0));
        for (std::size_t i = 0; i < n.dim; ++i) {
          if (n.coeffs[i] == 0) continue;
          for (std::size_t k = 0; k < m; ++k) c[k] += n.coeffs[i] * rows[i][k];
        }
        out = PhplExpr::linear(std::move(c));
        break;
      }
      case Kind::Scale:
        out = PhplExpr::scale(n.factor, go(n.children[0]));
        break;
      default: {
        std::vector<PhplExpr> kids;
        kids.reserve(n.children.size());
        for (const auto& c : n.children) kids.push_back(go(c));
        if (n.kind == Kind::Sum) {
          out = PhplExpr::sum(std::move(kids));
        } else if (n.kind == Kind::Min) {
          out = PhplExpr::min(std::move(kids));
        } else {
          out = PhplExpr::max(std::move(kids));
        }
      }
    }
    memo.emplace(e.node_.get(), out);
    return out;
  };
  return go(*this);
}

std::vector<Vec> PhplExpr::breakpoint_normals() const {
  std::set<Vec> normals;
  std::unordered_map<const Node*, std::vector<Vec>> memo;
  std::function<const std::vector<Vec>&(const PhplExpr&)> candidates =
      [&](const PhplExpr& e) -> const std::vector<Vec>& {
    auto it = memo.find(e.node_.get());
    if (it != memo.end()) return it->second;
    const Node& n = *e.node_;
    std::set<Vec> out;
    switch (n.kind) {
      case Kind::Linear:
        out.insert(n.coeffs);
        break;
      case Kind::Scale:
        for (const auto& c : candidates(n.children[0])) {
          Vec s = c;
          for (auto& v : s) v *= n.factor;
          out.insert(std::move(s));
        }
        break;
      case Kind::Sum: {
        std::set<Vec> acc{Vec(n.dim, Rat(0))};
        for (const auto& child : n.children) {
          std::set<Vec> next;
          for (const auto& a : acc) {
            for (const auto& c : candidates(child)) next.insert(add_vec(a, c));
          }
          acc = std::move(next);
        }
        out = std::move(acc);
        break;
      }
      case Kind::Min:
      case Kind::Max: {
        std::vector<const std::vector<Vec>*> kids;
        for (const auto& child : n.children) kids.push_back(&candidates(child));
        for (std::size_t i = 0; i < kids.size(); ++i) {
          out.insert(kids[i]->begin(), kids[i]->end());
          for (std::size_t j = i + 1; j < kids.size(); ++j) {
            for (const auto& a : *kids[i]) {
              for (const auto& b : *kids[j]) {
                Vec d = sub_vec(a, b);
                if (mixed_signs(d)) normals.insert(canonical_normal(std::move(d)));
              }
            }
          }
        }
        break;
      }
    }
    return memo.emplace(e.node_.get(), std::vector<Vec>(out.begin(), out.end())).first->second;
  };
  candidates(*this);
  return {normals.begin(), normals.end()};
}

namespace {

// All (m-1)-subsets of `planes` (normals through the origin) intersected with
// the hyperplane sum(x) = 1, kept when inside the simplex.
std::vector<Vec> vertices_for(std::size_t m, const std::vector<Vec>& normals) {
  std::vector<Vec> planes;
  for (std::size_t i = 0; i < m; ++i) {
    Vec e(m, Rat(0));
    e[i] = 1;
    planes.push_back(std::move(e));
  }
  planes.insert(planes.end(), normals.begin(), normals.end());
  std::set<Vec> verts;
  const std::size_t k = m - 1;
  if (k == 0) return {Vec{Rat(1)}};
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  const std::size_t p = planes.size();
  while (true) {
    std::vector<Vec> a;
    a.reserve(m);
    for (auto i : idx) a.push_back(planes[i]);
    a.emplace_back(m, Rat(1));
    Vec b(m, Rat(0));
    b[m - 1] = 1;
    Vec x;
    if (solve_linear_system(std::move(a), std::move(b), x)) {
      if (std::all_of(x.begin(), x.end(), [](const Rat& c) { return c >= 0; })) verts.insert(std::move(x));
    }
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == p - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return {verts.begin(), verts.end()};
}

void require_exact(std::size_t m) {
  if (m > kExactDimLimit) {
    throw EngineBoundError("dimension " + std::to_string(m) + " exceeds exact bound " +
                           std::to_string(kExactDimLimit));
  }
}

unsigned grid_denominator(std::size_t m) { return m <= 6 ? 16 : 6; }

}  // namespace

std::vector<Vec> arrangement_vertices(const std::vector<PhplExpr>& fs) {
  if (fs.empty()) throw std::invalid_argument("arrangement of no functions");
  const std::size_t m = fs.front().dim();
  require_exact(m);
  std::set<Vec> normals;
  for (const auto& f : fs) {
    require_dim(m, f.dim(), "arrangement");
    for (auto& v : f.breakpoint_normals()) normals.insert(std::move(v));
  }
  return vertices_for(m, {normals.begin(), normals.end()});
}

NonnegVerdict verify_nonneg_ph_pl(const PhplExpr& f, EngineMode mode) {
  const std::size_t m = f.dim();
  std::vector<Vec> points;
  bool grid = false;
  if (m > kExactDimLimit) {
    if (mode != EngineMode::AllowGrid) {
      throw EngineBoundError("dimension " + std::to_string(m) + " exceeds exact bound " +
                             std::to_string(kExactDimLimit) + " (grid mode not enabled)");
    }
    points = simplex_grid(m, grid_denominator(m));
    grid = true;
  } else {
    points = arrangement_vertices({f});
  }
  std::optional<Negative> worst;
  for (const auto& v : points) {
    Rat val = f.eval(v);
    if (val < 0 && (!worst || val < worst->value)) worst = Negative{v, val};
  }
  if (worst) return *worst;
  return Nonneg{grid};
}

namespace {

SimplexExtremum extremum(const PhplExpr& f, bool maximize) {
  std::optional<SimplexExtremum> best;
  for (const auto& v : arrangement_vertices({f})) {
    Rat val = f.eval(v);
    if (!best || (maximize ? val > best->value : val < best->value)) best = SimplexExtremum{val, v};
  }
  return *best;
}

}  // namespace

SimplexExtremum maximize_on_simplex(const PhplExpr& f) { return extremum(f, true); }
SimplexExtremum minimize_on_simplex(const PhplExpr& f) { return extremum(f, false); }

std::vector<Vec> linear_pieces(const PhplExpr& f) {
  const std::size_t m = f.dim();
  require_exact(m);
  const auto normals = f.breakpoint_normals();
  const auto verts = vertices_for(m, normals);
  std::set<Vec> pieces;
  auto generic = [&](const Vec& x) {
    return std::none_of(normals.begin(), normals.end(), [&](const Vec& nv) { return dot(nv, x) == 0; });
  };
  if (m == 1) {
    pieces.insert(f.eval_with_gradient(Vec{Rat(1)}).second);
    return {pieces.begin(), pieces.end()};
  }
  if (m == 2) {
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      Vec mid{(verts[i][0] + verts[i + 1][0]) / 2, (verts[i][1] + verts[i + 1][1]) / 2};
      pieces.insert(f.eval_with_gradient(mid).second);
    }
    return {pieces.begin(), pieces.end()};
  }
  const std::size_t v = verts.size();
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  if (v < m) return {};
  while (true) {
    Vec c(m, Rat(0));
    for (auto i : idx) {
      for (std::size_t k = 0; k < m; ++k) c[k] += verts[i][k];
    }
    for (auto& ck : c) ck /= static_cast<long>(m);
    if (generic(c)) pieces.insert(f.eval_with_gradient(c).second);
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == v - m + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < m; ++i) idx[i] = idx[i - 1] + 1;
  }
  return {pieces.begin(), pieces.end()};
}

std::vector<Vec> simplex_grid(std::size_t m, unsigned den) {
  std::vector<Vec> out;
  std::vector<unsigned> k(m, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == m) {
      k[i] = left;
      Vec v(m);
      for (std::size_t j = 0; j < m; ++j) v[j] = Rat(Int(k[j]), Int(den));
      out.push_back(std::move(v));
      return;
    }
    for (unsigned t = 0; t <= left; ++t) {
      k[i] = t;
      rec(i + 1, left - t);
    }
  };
  if (m == 0) return out;
  rec(0, den);
  return out;
}

std::vector<Point> delta_grid(std::size_t n, unsigned big_n) {
  if (n == 0) throw DimensionError("delta_grid needs n >= 1");
  if (big_n <= n) {
    throw std::invalid_argument("delta_grid needs N > n (got n=" + std::to_string(n) +
                                ", N=" + std::to_string(big_n) + ")");
  }
  // integer sums s with N - n < s <= N
  std::vector<Point> out;
  std::vector<unsigned> k(n, 0);
  for (unsigned s = static_cast<unsigned>(big_n - n + 1); s <= big_n; ++s) {
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i + 1 == n) {
        k[i] = left;
        Vec v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = Rat(Int(k[j]), Int(big_n));
        out.emplace_back(std::move(v));
        return;
      }
      for (unsigned t = 0; t <= left; ++t) {
        k[i] = t;
        rec(i + 1, left - t);
      }
    };
    rec(0, s);
  }
  return out;
}

}  // namespace prevcalc
