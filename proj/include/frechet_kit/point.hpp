#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <ostream>

#include "frechet_kit/errors.hpp"

namespace fk {

inline constexpr int kMaxDim = 8;

// Fixed-capacity coordinate vector; doubles as a displacement vector.
class Point {
 public:
  Point() = default;
  explicit Point(int dim) : dim_(dim) {
    if (dim < 0 || dim > kMaxDim) throw DimensionMismatch("unsupported dimension");
  }
  Point(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
    if (dim_ > kMaxDim) throw DimensionMismatch("unsupported dimension");
    std::copy(xs.begin(), xs.end(), c_.begin());
  }
  template <class It>
  static Point from_range(It first, It last) {
    Point p;
    for (; first != last; ++first) {
      if (p.dim_ == kMaxDim) throw DimensionMismatch("unsupported dimension");
      p.c_[p.dim_++] = static_cast<double>(*first);
    }
    return p;
  }

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  const double* data() const { return c_.data(); }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend Point operator-(Point a) { return a *= -1.0; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator<(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.begin() + a.dim_,
                                        b.c_.begin(), b.c_.begin() + b.dim_);
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

using Vec = Point;

inline double dot(const Point& a, const Point& b) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}
inline double norm2(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(norm2(a)); }
inline double dist2(const Point& a, const Point& b) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}
inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }
inline Point lerp(const Point& a, const Point& b, double t) { return a + (b - a) * t; }

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (int i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p[i];
  return os << ')';
}

}  // namespace fk
