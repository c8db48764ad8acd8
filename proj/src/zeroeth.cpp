#include "tmon/zeroeth.hpp"

#include <cmath>
#include <random>

namespace tmon {

PassivityReport is_passive(const ProbDist& p, const Hamiltonian& h, double tol) {
  if (p.dim() != h.dim()) throw std::invalid_argument("is_passive: dimension mismatch");
  PassivityReport r;
  r.n_checked = 1;
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) {
      if (h[i] > h[j] + tol && p[i] > p[j] + tol) {
        r.passive = false;
        r.witness = {i, j};
        return r;
      }
    }
  return r;
}

PassivityReport is_completely_passive(const ProbDist& p, const Hamiltonian& h,
                                      int n_max) {
  if (n_max < 1) throw std::invalid_argument("is_completely_passive: n_max < 1");
  double dims = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    dims *= p.dim();
    if (dims > 1e6) throw std::invalid_argument("is_completely_passive: dimension overflow");
  }
  ProbDist power = p;
  Hamiltonian hp = h;
  for (int n = 1; n <= n_max; ++n) {
    PassivityReport r = is_passive(power, hp);
    if (!r.passive) {
      r.n_checked = n;
      return r;
    }
    if (n < n_max) {
      power = tensor(power, p);
      hp = tensor_sum(hp, h);
    }
  }
  PassivityReport r;
  r.n_checked = n_max;
  return r;
}

ExtractionStats extraction_simulation(const ProbDist& p, const Hamiltonian& h, int i,
                                      int j, int m, double alpha, int trials,
                                      std::uint64_t seed) {
  if (i < 0 || j < 0 || i >= p.dim() || j >= p.dim() || i == j)
    throw std::invalid_argument("extraction_simulation: bad level indices");
  if (!(h[i] > h[j]) || !(p[i] > p[j]))
    throw std::invalid_argument("extraction_simulation: need E_i > E_j and p_i > p_j");
  if (m < 1 || trials < 1) throw std::invalid_argument("extraction_simulation: bad sizes");

  const double pi = p[i], pj = p[j];
  const double hw = h[i] - h[j];
  const double expect = static_cast<double>(m) * (pi - pj);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double total_work = 0.0;
  int tail_hits = 0;
  for (int t = 0; t < trials; ++t) {
    long long x_t = 0;
    for (int k = 0; k < m; ++k) {
      double u = unif(rng);
      if (u < pi)
        ++x_t;
      else if (u < pi + pj)
        --x_t;
    }
    total_work += static_cast<double>(x_t) * hw;
    if (static_cast<double>(x_t) <= expect - alpha * m) ++tail_hits;
  }
  ExtractionStats s;
  s.mean_work = total_work / (static_cast<double>(trials) * m);
  s.empirical_tail = static_cast<double>(tail_hits) / trials;
  s.hoeffding_bound = std::exp(-alpha * alpha * m / 2.0);
  s.trials = trials;
  return s;
}

}  // namespace tmon
