#include "frechet_kit/instance.hpp"

#include <algorithm>
#include <cmath>

namespace fk {

Curve pad_to(const Curve& c, int m) {
  std::vector<Point> v = c.vertices();
  if (static_cast<int>(v.size()) > m) throw InvalidArgument("curve longer than padding target");
  while (static_cast<int>(v.size()) < m) {
    if (v.size() == 1) {
      v.push_back(v.front());
      continue;
    }
    int best = 0;
    double len = -1;
    for (int i = 0; i + 1 < static_cast<int>(v.size()); ++i) {
      double l = dist(v[i], v[i + 1]);
      if (l > len) {
        len = l;
        best = i;
      }
    }
    v.insert(v.begin() + best + 1, lerp(v[best], v[best + 1], 0.5));
  }
  return Curve(std::move(v));
}

QInstance QInstance::make(std::vector<Curve> curves, std::vector<double> deltas, int ell,
                          double eps) {
  if (curves.empty()) throw EmptyInput("no input curves");
  if (curves.size() != deltas.size()) throw InvalidArgument("one threshold per curve required");
  if (ell < 1) throw InvalidArgument("ell must be positive");
  if (!(eps > 0 && eps <= 1)) throw InvalidArgument("eps must lie in (0, 1]");
  for (double d : deltas)
    if (!(d > 0) || !std::isfinite(d)) throw InvalidArgument("thresholds must be positive");
  const int dim = curves.front().dim();
  int m = 2;
  for (const auto& c : curves) {
    if (c.dim() != dim) throw DimensionMismatch("curves differ in dimension");
    m = std::max(m, c.size());
  }
  QInstance q;
  for (auto& c : curves) q.curves.push_back(pad_to(c, m));
  q.deltas = std::move(deltas);
  q.ell = ell;
  q.eps = eps;
  return q;
}

double QInstance::delta_max() const { return *std::max_element(deltas.begin(), deltas.end()); }
double QInstance::delta_min() const { return *std::min_element(deltas.begin(), deltas.end()); }
double QInstance::eps_internal() const { return eps / (4.0 * std::sqrt(double(dim()))); }

Discretization Discretization::build(const QInstance& inst, const std::vector<int>& subset) {
  Discretization d;
  d.global = subset;
  for (int g : subset) {
    d.tau.push_back(inst.curves[g]);
    d.delta.push_back(inst.deltas[g]);
  }
  d.eps = inst.eps_internal();
  d.dim = inst.dim();
  d.sqrt_d = std::sqrt(double(d.dim));
  d.delta_max = *std::max_element(d.delta.begin(), d.delta.end());
  d.ref = static_cast<int>(std::min_element(d.delta.begin(), d.delta.end()) - d.delta.begin());
  d.delta_min = d.delta[d.ref];
  d.L = build_L(d.tau[d.ref], d.delta_min, d.eps);
  d.g2 = g2_spec(d.tau, d.delta, d.eps);
  return d;
}

}  // namespace fk
