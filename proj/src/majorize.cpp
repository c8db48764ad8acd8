#include "tmon/majorize.hpp"

#include <algorithm>
#include <numeric>

namespace tmon {

double ThermoCurve::value_at(double x) const {
  if (x <= 0) return 0.0;
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  size_t hi = static_cast<size_t>(it - xs.begin());
  size_t lo = hi - 1;
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

Rational ThermoCurve::exact_value_at(const Rational& x) const {
  if (!exact()) throw std::logic_error("ThermoCurve: exact interpolation on float curve");
  const auto& exs = *exact_xs;
  const auto& eys = *exact_ys;
  if (x <= 0) return Rational(0);
  if (x >= exs.back()) return eys.back();
  size_t hi = 1;
  while (exs[hi] < x) ++hi;
  size_t lo = hi - 1;
  Rational t = (x - exs[lo]) / (exs[hi] - exs[lo]);
  return eys[lo] + t * (eys[hi] - eys[lo]);
}

bool majorizes(const ProbDist& x, const ProbDist& y, double tol) {
  auto [a, b] = zero_pad(x, y);
  if (a.exact() && b.exact()) {
    std::vector<Rational> xa = a.exact_weights();
    std::vector<Rational> yb = b.exact_weights();
    std::sort(xa.begin(), xa.end(), std::greater<>());
    std::sort(yb.begin(), yb.end(), std::greater<>());
    Rational sx = 0, sy = 0;
    for (size_t i = 0; i < xa.size(); ++i) {
      sx += xa[i];
      sy += yb[i];
      if (sx < sy) return false;
    }
    return sx == sy;
  }
  std::vector<double> xa = a.weights();
  std::vector<double> yb = b.weights();
  std::sort(xa.begin(), xa.end(), std::greater<>());
  std::sort(yb.begin(), yb.end(), std::greater<>());
  double sx = 0, sy = 0;
  for (size_t i = 0; i < xa.size(); ++i) {
    sx += xa[i];
    sy += yb[i];
    if (sx < sy - tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

ThermoCurve thermo_curve(const ProbDist& p, const Hamiltonian& h,
                         const ThermalContext& ctx) {
  if (p.dim() != h.dim()) throw std::invalid_argument("thermo_curve: dimension mismatch");
  std::vector<int> order = beta_order(p, h, ctx);
  ThermoCurve c;
  const size_t n = order.size();
  c.xs.resize(n + 1);
  c.ys.resize(n + 1);
  c.xs[0] = 0.0;
  c.ys[0] = 0.0;
  for (size_t k = 0; k < n; ++k) {
    int i = order[k];
    c.xs[k + 1] = c.xs[k] + std::exp(-ctx.beta * h[i]);
    c.ys[k + 1] = c.ys[k] + p[i];
  }
  if (p.exact() && h.is_trivial()) {
    std::vector<Rational> exs(n + 1, Rational(0)), eys(n + 1, Rational(0));
    for (size_t k = 0; k < n; ++k) {
      int i = order[k];
      exs[k + 1] = exs[k] + 1;
      eys[k + 1] = eys[k] + p.exact_weights()[static_cast<size_t>(i)];
    }
    c.exact_xs = std::move(exs);
    c.exact_ys = std::move(eys);
  }
  return c;
}

bool curve_dominates(const ThermoCurve& a, const ThermoCurve& b, double tol) {
  if (a.exact() && b.exact()) {
    if (a.exact_xs->back() != b.exact_xs->back())
      throw std::invalid_argument("curve_dominates: mismatched total x-extent");
    for (const Rational& x : *b.exact_xs)
      if (a.exact_value_at(x) < b.exact_value_at(x)) return false;
    for (const Rational& x : *a.exact_xs)
      if (a.exact_value_at(x) < b.exact_value_at(x)) return false;
    return true;
  }
  if (std::abs(a.z() - b.z()) > tol * std::max(1.0, a.z()))
    throw std::invalid_argument("curve_dominates: mismatched total x-extent");
  auto check = [&](const std::vector<double>& xs) {
    for (double x : xs)
      if (a.value_at(x) < b.value_at(x) - tol) return false;
    return true;
  };
  return check(a.xs) && check(b.xs);
}

ThermoCurve scale_curve_by_work(const ThermoCurve& c, double w,
                                const ThermalContext& ctx) {
  ThermoCurve out = c;
  double f = std::exp(-ctx.beta * w);
  for (double& x : out.xs) x *= f;
  // exact coordinates do not survive a transcendental rescaling
  out.exact_xs.reset();
  out.exact_ys.reset();
  if (w == 0.0) {
    out.exact_xs = c.exact_xs;
    out.exact_ys = c.exact_ys;
  }
  return out;
}

}  // namespace tmon
