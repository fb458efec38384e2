#ifndef PREVCALC_RATIONAL_HPP
#define PREVCALC_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prevcalc {

/// Exact rational scalar. Always kept in canonical reduced form.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

/// Unconstrained rational vector (LP rows, hyperplane normals, witnesses).
using Vec = std::vector<Rat>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or zero denominator.
Rat parse_rat(std::string_view text);

/// Canonical text form: "3/2", integers as "3", negatives as "-1/2".
std::string to_string(const Rat& r);

Rat make_rat(long num, long den = 1);

/// A nonnegative vector of fixed dimension: a function on the finite space,
/// or the weight vector of a linear prevision.
class Point {
 public:
  Point() = default;
  explicit Point(Vec coords);
  Point(std::initializer_list<Rat> coords);

  static Point zeros(std::size_t n);
  static Point ones(std::size_t n);
  static Point unit(std::size_t n, std::size_t i);

  std::size_t size() const { return coords_.size(); }
  const Rat& operator[](std::size_t i) const { return coords_[i]; }
  const Vec& coords() const { return coords_; }
  Rat mass() const;
  bool is_zero() const;
  bool strictly_positive() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  Vec coords_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);
std::string to_string(const Point& p);

/// Comma separated rationals, e.g. "1,1/2".
Point parse_point(std::string_view text);

Rat dot(const Vec& a, const Vec& b);
inline Rat dot(const Point& a, const Point& b) { return dot(a.coords(), b.coords()); }
Point operator+(const Point& a, const Point& b);
Point operator*(const Rat& a, const Point& p);
/// alpha * x + (1 - alpha) * y, alpha in [0,1].
Point mix(const Rat& alpha, const Point& x, const Point& y);
bool leq_coordinatewise(const Point& a, const Point& b);

void require_dim(std::size_t expected, std::size_t actual, const char* what);

/// Value in [0, inf]. Only gauge forms with recession ever produce inf.
class Extended {
 public:
  Extended() = default;
  Extended(Rat v) : value_(std::move(v)) {}  // NOLINT(implicit)
  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }
  bool is_infinite() const { return infinite_; }
  /// Throws std::domain_error on inf.
  const Rat& finite() const;
  std::string str() const { return infinite_ ? "inf" : to_string(value_); }

  friend bool operator==(const Extended& a, const Extended& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }

 private:
  Rat value_{0};
  bool infinite_ = false;
};

/// Solves the square system A x = b exactly. Returns false when A is singular.
bool solve_linear_system(std::vector<Vec> a, Vec b, Vec& x);

}  // namespace prevcalc

#endif  // PREVCALC_RATIONAL_HPP
