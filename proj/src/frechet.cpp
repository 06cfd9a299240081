#include "frechet_kit/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fk {

Curve::Curve(std::vector<Point> vertices) : v_(std::move(vertices)) {
  if (v_.empty()) throw InvalidCurve("curve needs at least one vertex");
  const int d = v_.front().dim();
  if (d < 1) throw InvalidCurve("curve dimension must be positive");
  for (const auto& p : v_) {
    if (p.dim() != d) throw DimensionMismatch("mixed dimensions in curve");
    for (int k = 0; k < d; ++k)
      if (!std::isfinite(p[k])) throw InvalidCurve("non-finite coordinate");
  }
}

double Curve::length() const {
  double s = 0;
  for (int i = 0; i + 1 < size(); ++i) s += dist(v_[i], v_[i + 1]);
  return s;
}

Curve Curve::subcurve(int a, int b) const {
  if (a < 0 || b >= size() || a > b) throw InvalidArgument("bad subcurve range");
  return Curve(std::vector<Point>(v_.begin() + a, v_.begin() + b + 1));
}

Point Curve::at(double s) const {
  if (size() == 1) return v_[0];
  s = std::clamp(s, 0.0, double(size() - 1));
  int i = std::min(static_cast<int>(std::floor(s)), size() - 2);
  return lerp(v_[i], v_[i + 1], s - i);
}

Curve collapse_duplicates(const Curve& c) {
  std::vector<Point> out;
  for (const auto& p : c.vertices())
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  return Curve(std::move(out));
}

namespace {

struct Iv {
  double lo = 1, hi = 0;
  bool empty() const { return lo > hi; }
};

constexpr double kSlack = 1e-12;

// {t in [0,1] : |p - (a + t (b - a))| <= r}
Iv free_interval(const Point& p, const Point& a, const Point& b, double r) {
  Vec v = b - a, w = a - p;
  double A = norm2(v), B = dot(w, v), C = norm2(w) - r * r;
  if (A <= 1e-300) return C <= 0 ? Iv{0, 1} : Iv{};
  double disc = B * B - A * C;
  if (disc < 0) return Iv{};
  double sq = std::sqrt(disc);
  double lo = (-B - sq) / A, hi = (-B + sq) / A;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (lo > hi) return Iv{};
  return {lo, hi};
}

Iv clip_from(const Iv& f, double from) {
  if (f.empty()) return f;
  double lo = std::max(f.lo, from);
  if (lo > f.hi + kSlack) return Iv{};
  return {std::min(lo, f.hi), f.hi};
}

double point_curve_max(const Point& p, const Curve& c) {
  double m = 0;
  for (const auto& q : c.vertices()) m = std::max(m, dist(p, q));
  return m;
}

struct FreeSpace {
  int n = 0, m = 0;
  std::vector<Iv> LR, BR;  // LR: n x (m-1), BR: (n-1) x m
  Iv& lr(int i, int j) { return LR[i * (m - 1) + j]; }
  Iv& br(int i, int j) { return BR[i * m + j]; }
};

bool propagate(const Curve& a, const Curve& b, double r, FreeSpace& fs) {
  const int n = a.size(), m = b.size();
  fs.n = n;
  fs.m = m;
  fs.LR.assign(n * (m - 1), Iv{});
  fs.BR.assign((n - 1) * m, Iv{});
  if (dist(a[0], b[0]) > r || dist(a[n - 1], b[m - 1]) > r) return false;
  for (int j = 0; j < m - 1; ++j) {
    Iv f = free_interval(a[0], b[j], b[j + 1], r);
    if (f.empty() || f.lo > kSlack) break;
    fs.lr(0, j) = f;
    if (f.hi < 1 - kSlack) break;
  }
  for (int i = 0; i < n - 1; ++i) {
    Iv f = free_interval(b[0], a[i], a[i + 1], r);
    if (f.empty() || f.lo > kSlack) break;
    fs.br(i, 0) = f;
    if (f.hi < 1 - kSlack) break;
  }
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < m - 1; ++j) {
      Iv L = fs.lr(i, j), B = fs.br(i, j);
      if (L.empty() && B.empty()) continue;
      Iv top = free_interval(b[j + 1], a[i], a[i + 1], r);
      fs.br(i, j + 1) = L.empty() ? clip_from(top, B.lo) : top;
      Iv right = free_interval(a[i + 1], b[j], b[j + 1], r);
      fs.lr(i + 1, j) = B.empty() ? clip_from(right, L.lo) : right;
    }
  }
  Iv L = fs.lr(n - 1, m - 2), B = fs.br(n - 2, m - 1);
  return (!L.empty() && L.hi >= 1 - kSlack) || (!B.empty() && B.hi >= 1 - kSlack);
}

// Critical values: vertex-to-edge distances and points on an edge equidistant from two vertices
// of the other curve (the endpoint values are the caller's lower bound).
void critical_values(const Curve& a, const Curve& b, double lo, double hi, std::vector<double>& out) {
  for (int i = 0; i + 1 < a.size(); ++i) {
    const Point &u = a[i], &w = a[i + 1];
    for (int k = 0; k < b.size(); ++k) out.push_back(point_segment_distance(b[k], Segment{u, w}));
    const Vec e = w - u;
    for (int k = 0; k < b.size(); ++k)
      for (int l = k + 1; l < b.size(); ++l) {
        const Vec g = b[l] - b[k];
        double den = 2 * dot(e, g);
        if (std::abs(den) < 1e-300) continue;
        double t = (dot(b[l], b[l]) - dot(b[k], b[k]) - 2 * dot(u, g)) / den;
        if (t < 0 || t > 1) continue;
        out.push_back(dist(lerp(u, w, t), b[k]));
      }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [&](double c) { return c <= lo || c > hi; }),
            out.end());
}

constexpr double kCriticalWork = 4e6;

}  // namespace

bool free_space_decision(const Curve& a, const Curve& b, double delta, double tol) {
  if (a.empty() || b.empty()) throw InvalidCurve("empty curve");
  if (a.dim() != b.dim()) throw DimensionMismatch("curve dimensions differ");
  const double r = delta + tol;
  if (a.size() == 1) return point_curve_max(a[0], b) <= r;
  if (b.size() == 1) return point_curve_max(b[0], a) <= r;
  FreeSpace fs;
  return propagate(a, b, r, fs);
}

FrechetResult frechet_distance(const Curve& a, const Curve& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("curve dimensions differ");
  FrechetResult res;
  if (a.size() == 1 || b.size() == 1) {
    double v = a.size() == 1 ? point_curve_max(a[0], b) : point_curve_max(b[0], a);
    res.value = res.lower = res.upper = v;
    return res;
  }
  double lo = std::max(dist(a.front(), b.front()), dist(a.back(), b.back()));
  double hi = dist(a.front(), b.front()) + a.length() + b.length();
  if (free_space_decision(a, b, lo, 0.0)) {
    res.value = res.lower = res.upper = lo;
    return res;
  }
  const double n = a.size(), m = b.size();
  if (n * m * (n + m) <= kCriticalWork) {
    std::vector<double> cand;
    critical_values(a, b, lo, hi, cand);
    critical_values(b, a, lo, hi, cand);
    cand.push_back(lo);
    cand.push_back(hi);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // Smallest critical value accepted by the decision. Free-space intervals lose precision as the
    // radius approaches zero, hence a nudge scaled to the instance.
    const double nudge = std::min(tol, 1e-9 * (1 + hi));
    std::size_t l = 0, r = cand.size() - 1;
    auto ok = [&](double c) { return free_space_decision(a, b, c + nudge, 0.0); };
    while (l < r) {
      std::size_t mid = (l + r) / 2;
      if (ok(cand[mid])) r = mid;
      else l = mid + 1;
      ++res.iterations;
    }
    res.value = res.upper = cand[l];
    res.lower = l > 0 ? cand[l - 1] : lo;
    return res;
  }
  int it = 0;
  while (hi - lo > tol && it < 64) {
    double mid = 0.5 * (lo + hi);
    if (free_space_decision(a, b, mid, 0.0)) hi = mid;
    else lo = mid;
    ++it;
  }
  res.value = hi;
  res.lower = lo;
  res.upper = hi;
  res.iterations = it;
  return res;
}

double discrete_frechet(const Curve& a, const Curve& b) {
  const int n = a.size(), m = b.size();
  std::vector<double> prev(m), cur(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double d = dist(a[i], b[j]);
      double best;
      if (i == 0 && j == 0) best = 0;
      else if (i == 0) best = cur[j - 1];
      else if (j == 0) best = prev[j];
      else best = std::min({prev[j], prev[j - 1], cur[j - 1]});
      cur[j] = std::max(best, d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

Curve densify(const Curve& c, double step) {
  if (!(step > 0)) throw InvalidArgument("densify step must be positive");
  std::vector<Point> out{c[0]};
  for (int i = 0; i + 1 < c.size(); ++i) {
    double len = dist(c[i], c[i + 1]);
    int pieces = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 1; k <= pieces; ++k) out.push_back(lerp(c[i], c[i + 1], double(k) / pieces));
  }
  return Curve(std::move(out));
}

namespace {

ParamInterval level_range(const std::vector<std::pair<double, double>>& pts, double value,
                          bool along_t) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto key = [&](const std::pair<double, double>& p) { return along_t ? p.second : p.first; };
  auto other = [&](const std::pair<double, double>& p) { return along_t ? p.first : p.second; };
  const double eps = 1e-12;
  for (std::size_t q = 0; q < pts.size(); ++q) {
    if (std::abs(key(pts[q]) - value) <= eps) {
      lo = std::min(lo, other(pts[q]));
      hi = std::max(hi, other(pts[q]));
    }
    if (q + 1 == pts.size()) break;
    double k0 = key(pts[q]), k1 = key(pts[q + 1]);
    if (k0 < value - eps && k1 > value + eps) {
      double f = (value - k0) / (k1 - k0);
      double o = other(pts[q]) + f * (other(pts[q + 1]) - other(pts[q]));
      lo = std::min(lo, o);
      hi = std::max(hi, o);
    }
  }
  return {lo, hi};
}

}  // namespace

ParamInterval MatchingPath::s_at_t(double value) const { return level_range(points, value, true); }
ParamInterval MatchingPath::t_at_s(double value) const { return level_range(points, value, false); }

std::optional<MatchingPath> free_space_path(const Curve& a, const Curve& b, double delta,
                                            double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("curve dimensions differ");
  const double r = delta + tol;
  MatchingPath path;
  const int n = a.size(), m = b.size();
  if (n == 1 || m == 1) {
    if (!free_space_decision(a, b, delta, tol)) return std::nullopt;
    path.points = {{0.0, 0.0}, {double(n - 1), double(m - 1)}};
    return path;
  }
  FreeSpace fs;
  if (!propagate(a, b, r, fs)) return std::nullopt;
  std::vector<std::pair<double, double>> rev{{double(n - 1), double(m - 1)}};
  int i = n - 2, j = m - 2;
  double sl = 1, tl = 1;
  const double eps = 1e-9;
  while (true) {
    Iv L = fs.lr(i, j), B = fs.br(i, j);
    bool use_left = !L.empty() && L.lo <= tl + eps;
    bool use_bottom = !B.empty() && B.lo <= sl + eps;
    if (!use_left && !use_bottom) {
      use_left = !L.empty();
      use_bottom = !use_left;
    }
    if (use_left) {
      double t = std::min(L.hi, tl);
      t = std::max(t, L.lo);
      rev.emplace_back(double(i), j + t);
      if (i == 0) break;
      --i;
      sl = 1;
      tl = t;
    } else {
      double s = std::min(B.hi, sl);
      s = std::max(s, B.lo);
      rev.emplace_back(i + s, double(j));
      if (j == 0) break;
      --j;
      sl = s;
      tl = 1;
    }
  }
  rev.emplace_back(0.0, 0.0);
  path.points.assign(rev.rbegin(), rev.rend());
  // Enforce monotonicity against rounding.
  for (std::size_t q = 1; q < path.points.size(); ++q) {
    path.points[q].first = std::max(path.points[q].first, path.points[q - 1].first);
    path.points[q].second = std::max(path.points[q].second, path.points[q - 1].second);
  }
  return path;
}

}  // namespace fk
