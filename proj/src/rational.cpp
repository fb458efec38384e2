#include "prevcalc/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prevcalc {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("invalid rational '" + std::string(text) + "'");
  }
  Int n{std::string(num[0] == '+' ? num.substr(1) : num)};
  Int d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rat(n, d);
}

std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat make_rat(long num, long den) { return Rat(Int(num), Int(den)); }

Point::Point(Vec coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("point of dimension 0");
  for (const auto& c : coords_) {
    if (c < 0) throw std::invalid_argument("point coordinate " + to_string(c) + " is negative");
  }
}

Point::Point(std::initializer_list<Rat> coords) : Point(Vec(coords)) {}

Point Point::zeros(std::size_t n) { return Point(Vec(n, Rat(0))); }
Point Point::ones(std::size_t n) { return Point(Vec(n, Rat(1))); }
Point Point::unit(std::size_t n, std::size_t i) {
  Vec v(n, Rat(0));
  v.at(i) = 1;
  return Point(std::move(v));
}

Rat Point::mass() const {
  Rat s = 0;
  for (const auto& c : coords_) s += c;
  return s;
}

bool Point::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c == 0; });
}

bool Point::strictly_positive() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rat& c) { return c > 0; });
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += to_string(p[i]);
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << to_string(p); }

Point parse_point(std::string_view text) {
  Vec v;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    v.push_back(parse_rat(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Point(std::move(v));
}

void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(actual) +
                         " does not match " + std::to_string(expected));
  }
}

Rat dot(const Vec& a, const Vec& b) {
  require_dim(a.size(), b.size(), "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point operator+(const Point& a, const Point& b) {
  require_dim(a.size(), b.size(), "point sum");
  Vec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
  return Point(std::move(v));
}

Point operator*(const Rat& a, const Point& p) {
  Vec v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = a * p[i];
  return Point(std::move(v));
}

Point mix(const Rat& alpha, const Point& x, const Point& y) {
  require_dim(x.size(), y.size(), "mix");
  Vec v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = alpha * x[i] + (1 - alpha) * y[i];
  return Point(std::move(v));
}

bool leq_coordinatewise(const Point& a, const Point& b) {
  require_dim(a.size(), b.size(), "coordinatewise order");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

const Rat& Extended::finite() const {
  if (infinite_) throw std::domain_error("value is infinite");
  return value_;
}

bool solve_linear_system(std::vector<Vec> a, Vec b, Vec& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rat f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

}  // namespace prevcalc
