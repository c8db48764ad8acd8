#include "tmon/renyi.hpp"

#include <algorithm>
#include <numeric>

namespace tmon {

namespace {

void require_same_dim(size_t a, size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

/// log sum_i exp(t_i) over the given finite exponents; -inf when empty.
double log_sum_exp(const std::vector<double>& t) {
  if (t.empty()) return -HUGE_VAL;
  double m = *std::max_element(t.begin(), t.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : t) s += std::exp(x - m);
  return m + std::log(s);
}

ExtendedReal d_zero(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s += q[i];
  if (s == 0.0) return ExtendedReal::infinity();
  return -std::log(s);
}

ExtendedReal d_one(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (q[i] == 0) return ExtendedReal::infinity();
    s += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return s;
}

ExtendedReal d_inf(std::span<const double> p, std::span<const double> q) {
  double best = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (q[i] == 0) return ExtendedReal::infinity();
    best = std::max(best, p[i] / q[i]);
  }
  if (best == 0.0) return ExtendedReal::neg_infinity();  // p identically zero
  return std::log(best);
}

}  // namespace

SubNormalizedDist::SubNormalizedDist(std::vector<double> w, double tol) : w_(std::move(w)) {
  if (w_.empty()) throw std::invalid_argument("SubNormalizedDist: empty");
  double s = 0.0;
  for (double& x : w_) {
    if (!std::isfinite(x) || x < -tol)
      throw std::invalid_argument("SubNormalizedDist: bad weight");
    if (x < 0) x = 0.0;
    s += x;
  }
  if (s > 1.0 + tol) throw std::invalid_argument("SubNormalizedDist: mass > 1");
}

double SubNormalizedDist::mass() const {
  return std::accumulate(w_.begin(), w_.end(), 0.0);
}

ExtendedReal divergence(std::span<const double> p, std::span<const double> q, Alpha a) {
  require_same_dim(p.size(), q.size(), "divergence");
  if (a.is_pos_inf()) return d_inf(p, q);
  if (a.is_neg_inf()) return d_inf(q, p);  // D_{-inf}(p||q) := D_inf(q||p)
  if (a.is_one()) return d_one(p, q);
  if (a.is_zero()) return d_zero(p, q);

  const double al = a.v;
  std::vector<double> terms;
  terms.reserve(p.size());
  if (al > 1.0) {
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      if (q[i] == 0) return ExtendedReal::infinity();
      terms.push_back(al * std::log(p[i]) + (1 - al) * std::log(q[i]));
    }
    // sub-normalized p can make the sum < 1; log S / (al - 1) still applies
    return log_sum_exp(terms) / (al - 1.0);
  }
  if (al > 0.0) {  // 0 < alpha < 1
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0 || q[i] == 0) continue;
      terms.push_back(al * std::log(p[i]) + (1 - al) * std::log(q[i]));
    }
    double ls = log_sum_exp(terms);  // -inf on disjoint supports -> +inf value
    if (ls == -HUGE_VAL) return ExtendedReal::infinity();
    return ls / (al - 1.0);
  }
  // alpha < 0: sgn = -1; zero p-weight against positive q-weight diverges.
  for (size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0) continue;  // 0/0 convention: contributes nothing
    if (p[i] == 0) return ExtendedReal::infinity();
    terms.push_back(al * std::log(p[i]) + (1 - al) * std::log(q[i]));
  }
  double ls = log_sum_exp(terms);
  if (ls == -HUGE_VAL) return ExtendedReal::infinity();
  return ls / (1.0 - al);
}

ExtendedReal divergence(const ProbDist& p, const ProbDist& q, Alpha a) {
  return divergence(p.span(), std::span<const double>(q.weights()), a);
}

ExtendedReal divergence(const SubNormalizedDist& p, const ProbDist& q, Alpha a) {
  return divergence(std::span<const double>(p.weights()),
                    std::span<const double>(q.weights()), a);
}

namespace detail {

ExtendedReal divergence_limit_neg_inf(std::span<const double> p, std::span<const double> q) {
  // dominant-exponent analysis of sum p^a q^{1-a} gives
  // lim_{a -> -inf} D_a(p||q) = D_inf(q||p), with the rank-deficient case
  // (+inf for all a < 0) covered by the support rule inside d_inf
  return d_inf(q, p);
}

}  // namespace detail

ExtendedReal entropy(std::span<const double> p, Alpha a) {
  if (a.is_pos_inf()) {
    double m = *std::max_element(p.begin(), p.end());
    return -std::log(m);
  }
  if (a.is_neg_inf()) {
    double m = *std::min_element(p.begin(), p.end());
    return ExtendedReal::log(ExtendedReal(m));  // log 0 = -inf
  }
  if (a.is_one()) {
    double s = 0.0;
    for (double x : p)
      if (x > 0) s -= x * std::log(x);
    return s;
  }
  if (a.is_zero()) {
    int rank = 0;
    for (double x : p) rank += (x > 0);
    return std::log(static_cast<double>(rank));
  }
  const double al = a.v;
  if (al < 0) {
    // any zero weight forces sum p^alpha = inf, hence H = -inf
    for (double x : p)
      if (x == 0) return ExtendedReal::neg_infinity();
  }
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double x : p)
    if (x > 0) terms.push_back(al * std::log(x));
  double ls = log_sum_exp(terms);
  double sgn = al >= 0 ? 1.0 : -1.0;
  return sgn * ls / (1.0 - al);
}

ExtendedReal entropy(const ProbDist& p, Alpha a) { return entropy(p.span(), a); }

std::pair<ExtendedReal, ExtendedReal> symmetry_check(const ProbDist& p,
                                                     const ProbDist& q, Alpha a) {
  if (a.is_zero() || a.is_one())
    throw std::invalid_argument("symmetry_check: alpha must avoid {0, 1}");
  double al = a.v;
  auto sgn = [](double x) { return x >= 0 ? 1.0 : -1.0; };
  ExtendedReal lhs = (al * sgn(1 - al)) * divergence(p, q, Alpha(1 - al));
  ExtendedReal rhs = ((1 - al) * sgn(al)) * divergence(q, p, a);
  return {lhs, rhs};
}

SmoothResult smooth_h0(const ProbDist& p, double eps) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("smooth_h0: eps out of (0,1)");
  const int n = p.dim();
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (p[a] != p[b]) return p[a] < p[b];
    return a < b;
  });
  std::vector<double> w = p.weights();
  double cut = 0.0;
  for (int i : idx) {
    if (cut + p[i] > eps) break;
    cut += p[i];
    w[static_cast<size_t>(i)] = 0.0;
  }
  SubNormalizedDist out(std::move(w));
  ExtendedReal h0 = entropy(std::span<const double>(out.weights()), Alpha(0.0));
  return {std::move(out), h0};
}

SmoothResult smooth_hinf(const ProbDist& p, double eps) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("smooth_hinf: eps out of (0,1)");
  // Water-fill from the top: ceiling c with sum_i (p_i - c)_+ = eps, floored
  // at the smallest entry (a flat distribution stays untouched).
  std::vector<double> sorted = p.weights();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const int n = static_cast<int>(sorted.size());
  const double floor_c = sorted.back();
  double max_removable = 0.0;
  for (double x : sorted) max_removable += x - floor_c;
  double c = floor_c;
  if (max_removable > eps) {
    double prefix = 0.0;
    for (int k = 1; k <= n; ++k) {
      prefix += sorted[static_cast<size_t>(k - 1)];
      double cand = (prefix - eps) / k;
      double next = (k < n) ? sorted[static_cast<size_t>(k)] : floor_c;
      if (cand >= next) {  // level sits between entries k and k+1
        c = cand;
        break;
      }
    }
  }
  std::vector<double> w = p.weights();
  for (double& x : w) x = std::min(x, c);
  SubNormalizedDist out(std::move(w));
  return {std::move(out), -std::log(c)};
}

SmoothResult smooth_d_inf(const ProbDist& p, const ProbDist& q, double eps) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("smooth_d_inf: eps out of (0,1)");
  require_same_dim(static_cast<size_t>(p.dim()), static_cast<size_t>(q.dim()), "smooth_d_inf");
  for (int i = 0; i < p.dim(); ++i)
    if (p[i] > 0 && q[i] == 0)
      throw std::invalid_argument("smooth_d_inf: supp(p) not within supp(q)");
  // removed(delta) = sum_{i: p_i/q_i >= delta} (p_i - delta q_i), continuous
  // and decreasing from mass(p) at 0 to 0 at the max ratio.
  auto removed = [&](double delta) {
    double s = 0.0;
    for (int i = 0; i < p.dim(); ++i)
      if (q[i] > 0 && p[i] / q[i] >= delta) s += p[i] - delta * q[i];
    return s;
  };
  double hi = 0.0;
  for (int i = 0; i < p.dim(); ++i)
    if (q[i] > 0) hi = std::max(hi, p[i] / q[i]);
  double lo = 0.0;
  double delta = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > 0; ++iter) {
    delta = 0.5 * (lo + hi);
    double r = removed(delta);
    if (std::abs(r - eps) <= 1e-12 * std::max(1.0, eps)) break;
    if (r > eps)
      lo = delta;
    else
      hi = delta;
  }
  std::vector<double> w = p.weights();
  for (int i = 0; i < p.dim(); ++i)
    if (q[i] > 0 && p[i] / q[i] >= delta) w[static_cast<size_t>(i)] = delta * q[i];
  SubNormalizedDist out(std::move(w));
  return {std::move(out), std::log(delta)};
}

SmoothResult smooth_d0(const ProbDist& p, const ProbDist& q, double eps) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("smooth_d0: eps out of (0,1)");
  require_same_dim(static_cast<size_t>(p.dim()), static_cast<size_t>(q.dim()), "smooth_d0");
  const int n = p.dim();
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  auto ratio = [&](int i) {
    if (q[i] == 0) return p[i] > 0 ? HUGE_VAL : 0.0;
    return p[i] / q[i];
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    double ra = ratio(a), rb = ratio(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  std::vector<double> w = p.weights();
  double cut = 0.0;
  for (int i : idx) {
    if (cut + p[i] > eps) break;
    cut += p[i];
    w[static_cast<size_t>(i)] = 0.0;
  }
  SubNormalizedDist out(std::move(w));
  ExtendedReal d0 = divergence(std::span<const double>(out.weights()),
                               std::span<const double>(q.weights()), Alpha(0.0));
  return {std::move(out), d0};
}

std::vector<double> alpha_grid(bool include_negative) {
  std::vector<double> g;
  if (include_negative) g = {-8, -4, -2, -1, -0.5, -0.25, -0.1, -0.02};
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0, 8.0}) g.push_back(a);
  for (int k = 1; k <= 20; ++k) g.push_back(0.1 * k);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace tmon
