#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "frechet_kit/geom.hpp"

namespace fk {

namespace {

struct AffineFrame {
  std::vector<Vec> basis;  // orthonormal
  std::vector<int> anchors;
};

Vec residual(const Vec& w, const std::vector<Vec>& basis) {
  Vec r = w;
  for (const auto& u : basis) r -= u * dot(r, u);
  return r;
}

AffineFrame affine_frame(const std::vector<Point>& pts, int origin, double tol) {
  AffineFrame f;
  f.anchors.push_back(origin);
  const int d = pts[origin].dim();
  while (static_cast<int>(f.basis.size()) < d) {
    int best = -1;
    double best_len = tol;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      double len = norm(residual(pts[i] - pts[origin], f.basis));
      if (len > best_len) {
        best_len = len;
        best = i;
      }
    }
    if (best < 0) break;
    f.basis.push_back(residual(pts[best] - pts[origin], f.basis) * (1.0 / best_len));
    f.anchors.push_back(best);
  }
  return f;
}

std::vector<Vec> orthogonal_complement(const std::vector<Vec>& basis, int d) {
  std::vector<Vec> all = basis, out;
  for (int k = 0; k < d && static_cast<int>(all.size()) < d; ++k) {
    Vec e(d);
    e[k] = 1.0;
    Vec r = residual(e, all);
    double len = norm(r);
    if (len > 1e-6) {
      all.push_back(r * (1.0 / len));
      out.push_back(all.back());
    }
  }
  return out;
}

void add_equalities(std::vector<Halfspace>& hs, const std::vector<Vec>& normals, const Point& p) {
  for (const auto& w : normals) {
    double c = dot(w, p);
    hs.push_back({w, c});
    hs.push_back({-w, -c});
  }
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Andrew's monotone chain on planar coordinates; returns indices in CCW order.
std::vector<int> planar_hull(const std::vector<std::pair<double, double>>& q, double tol) {
  std::vector<int> idx(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return q[a] < q[b]; });
  idx.erase(std::unique(idx.begin(), idx.end(), [&](int a, int b) { return q[a] == q[b]; }),
            idx.end());
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  int k = 0;
  auto turn = [&](int o, int a, int b) {
    return cross2(q[a].first - q[o].first, q[a].second - q[o].second, q[b].first - q[o].first,
                  q[b].second - q[o].second);
  };
  for (int i : idx) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= tol) --k;
    h[k++] = i;
  }
  for (int j = static_cast<int>(idx.size()) - 2, lo = k + 1; j >= 0; --j) {
    int i = idx[j];
    while (k >= lo && turn(h[k - 2], h[k - 1], i) <= tol) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

struct Face {
  int v[3];
  Vec n;
  double off;
  bool alive;
};

ConvexRegion hull3(const std::vector<Point>& pts, const AffineFrame& fr, double tol) {
  Point inner(3);
  for (int a : fr.anchors) inner += pts[a] * 0.25;
  std::vector<Face> faces;
  auto make = [&](int a, int b, int c) {
    Vec n(3);
    Vec u = pts[b] - pts[a], w = pts[c] - pts[a];
    n[0] = u[1] * w[2] - u[2] * w[1];
    n[1] = u[2] * w[0] - u[0] * w[2];
    n[2] = u[0] * w[1] - u[1] * w[0];
    double len = norm(n);
    n *= 1.0 / len;
    Face f{{a, b, c}, n, dot(n, pts[a]), true};
    if (dot(f.n, inner) > f.off) {
      std::swap(f.v[1], f.v[2]);
      f.n = -f.n;
      f.off = -f.off;
    }
    faces.push_back(f);
  };
  const auto& t = fr.anchors;
  make(t[0], t[1], t[2]);
  make(t[0], t[1], t[3]);
  make(t[0], t[2], t[3]);
  make(t[1], t[2], t[3]);
  const long long N = static_cast<long long>(pts.size());
  std::unordered_set<long long> edges;
  for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
    edges.clear();
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (faces[f].alive && dot(faces[f].n, pts[p]) - faces[f].off > tol) visible.push_back(f);
    }
    if (visible.empty()) continue;
    for (int f : visible) {
      for (int e = 0; e < 3; ++e) edges.insert(faces[f].v[e] * N + faces[f].v[(e + 1) % 3]);
      faces[f].alive = false;
    }
    for (int f : visible) {
      for (int e = 0; e < 3; ++e) {
        int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        if (!edges.count(b * N + a)) make(a, b, p);
      }
    }
    if (faces.size() > 4096) {
      std::erase_if(faces, [](const Face& f) { return !f.alive; });
    }
  }
  std::vector<int> used;
  std::vector<Halfspace> hs;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    used.insert(used.end(), f.v, f.v + 3);
    bool dup = false;
    for (const auto& h : hs)
      if (norm2(h.normal - f.n) < 1e-18 && std::abs(h.offset - f.off) < tol) dup = true;
    if (!dup) hs.push_back({f.n, f.off});
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<Point> verts;
  for (int i : used) verts.push_back(pts[i]);
  auto r = ConvexRegion::from_generators(std::move(verts), {});
  r.set_hrep(std::move(hs));
  return r;
}

// Points strictly inside a vertical run can never be hull vertices.
std::vector<Point> vertical_prefilter(const std::vector<Point>& pts) {
  std::map<std::pair<double, double>, std::pair<int, int>> runs;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    auto key = std::make_pair(pts[i][0], pts[i][1]);
    auto it = runs.find(key);
    if (it == runs.end()) {
      runs.emplace(key, std::make_pair(i, i));
      continue;
    }
    if (pts[i][2] < pts[it->second.first][2]) it->second.first = i;
    if (pts[i][2] > pts[it->second.second][2]) it->second.second = i;
  }
  std::vector<int> keep;
  for (const auto& [k, v] : runs) {
    keep.push_back(v.first);
    if (v.second != v.first) keep.push_back(v.second);
  }
  std::sort(keep.begin(), keep.end());
  std::vector<Point> out;
  for (int i : keep) out.push_back(pts[i]);
  return out;
}

}  // namespace

ConvexRegion convex_hull(const std::vector<Point>& input) {
  if (input.empty()) throw EmptyInput("convex hull of empty set");
  const int d = input.front().dim();
  if (d < 1 || d > 3) throw InvalidArgument("convex hull supports d <= 3");
  for (const auto& p : input)
    if (p.dim() != d) throw DimensionMismatch("mixed dimensions in hull input");
  std::vector<Point> pts = d == 3 ? vertical_prefilter(input) : input;
  int origin = static_cast<int>(std::min_element(pts.begin(), pts.end()) - pts.begin());
  double scale = 0;
  for (const auto& p : pts) scale = std::max(scale, dist(p, pts[origin]));
  const double tol = 1e-10 * std::max(scale, 1e-300);
  AffineFrame fr = affine_frame(pts, origin, tol);
  const int k = static_cast<int>(fr.basis.size());
  const Point& p0 = pts[origin];
  std::vector<Halfspace> hs;
  if (k == 0) {
    auto r = ConvexRegion::from_generators({p0}, {});
    add_equalities(hs, orthogonal_complement({}, d), p0);
    r.set_hrep(std::move(hs));
    return r;
  }
  if (k == 1) {
    const Vec& u = fr.basis[0];
    int lo = origin, hi = origin;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      double ti = dot(pts[i] - p0, u);
      if (ti < dot(pts[lo] - p0, u)) lo = i;
      if (ti > dot(pts[hi] - p0, u)) hi = i;
    }
    auto r = ConvexRegion::from_generators({pts[lo], pts[hi]}, {});
    hs.push_back({u, dot(u, pts[hi])});
    hs.push_back({-u, -dot(u, pts[lo])});
    add_equalities(hs, orthogonal_complement(fr.basis, d), p0);
    r.set_hrep(std::move(hs));
    return r;
  }
  if (k == 2) {
    std::vector<std::pair<double, double>> q(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      q[i] = {dot(pts[i] - p0, fr.basis[0]), dot(pts[i] - p0, fr.basis[1])};
    std::vector<int> h = planar_hull(q, tol * scale);
    std::vector<Point> verts;
    for (int i : h) verts.push_back(pts[i]);
    for (std::size_t e = 0; e < h.size(); ++e) {
      const auto& a = q[h[e]];
      const auto& b = q[h[(e + 1) % h.size()]];
      double nx = b.second - a.second, ny = -(b.first - a.first);
      double len = std::hypot(nx, ny);
      Vec n = (fr.basis[0] * nx + fr.basis[1] * ny) * (1.0 / len);
      hs.push_back({n, dot(n, pts[h[e]])});
    }
    add_equalities(hs, orthogonal_complement(fr.basis, d), p0);
    auto r = ConvexRegion::from_generators(std::move(verts), {});
    r.set_hrep(std::move(hs));
    return r;
  }
  return hull3(pts, fr, tol);
}

}  // namespace fk
