#include "tmon/catalysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tmon/work.hpp"

namespace tmon {

TransitionReport trump_check(const ProbDist& x, const ProbDist& y, CheckMode mode) {
  auto [a, b] = zero_pad(x, y);
  Hamiltonian h = Hamiltonian::trivial(a.dim());
  ThermalContext ctx = make_context(1.0);
  return check_transition(a, b, h, ctx, mode);
}

bool verify_catalyst(const ProbDist& p, const ProbDist& p_prime, const Catalyst& c,
                     const Hamiltonian& h, const ThermalContext& ctx, double tol) {
  if (p.dim() != h.dim() || p_prime.dim() != h.dim() ||
      c.state.dim() != c.hamiltonian.dim())
    throw std::invalid_argument("verify_catalyst: dimension mismatch");
  ProbDist in = tensor(p, c.state);
  ProbDist out = tensor(p_prime, c.state);
  if (h.is_trivial() && c.hamiltonian.is_trivial()) {
    if (in.exact() && out.exact()) return majorizes(in, out, 0.0);
    return majorizes(in, out, tol);
  }
  Hamiltonian hj = tensor_sum(h, c.hamiltonian);
  return curve_dominates(thermo_curve(in, hj, ctx), thermo_curve(out, hj, ctx), tol);
}

SearchResult search_catalyst(const ProbDist& p, const ProbDist& p_prime,
                             const Hamiltonian& h, const ThermalContext& ctx,
                             int max_dim, int samples, std::uint64_t seed) {
  SearchResult res;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);

  auto try_catalyst = [&](ProbDist state) -> bool {
    ++res.attempts;
    const int d = state.dim();
    Catalyst c{std::move(state), Hamiltonian::trivial(d)};
    if (verify_catalyst(p, p_prime, c, h, ctx)) {
      res.found = true;
      res.catalyst = std::move(c);
      return true;
    }
    return false;
  };

  if (try_catalyst(ProbDist::uniform(1))) return res;
  for (int d = 2; d <= max_dim; ++d) {
    // seeded witnesses: the two-level catalysts known to unlock the classic
    // catalytic transitions, then the uniform state
    if (d == 2) {
      if (try_catalyst(ProbDist(std::vector<Rational>{Rational(3, 5), Rational(2, 5)})))
        return res;
    }
    if (try_catalyst(ProbDist::uniform(d))) return res;
    for (int s = 0; s < samples; ++s) {
      std::vector<double> w(static_cast<size_t>(d));
      double sum = 0.0;
      for (double& x : w) {
        x = expo(rng);
        sum += x;
      }
      for (double& x : w) x /= sum;
      if (try_catalyst(ProbDist(std::move(w), 1e-6))) return res;
    }
  }
  return res;
}

Catalyst tensor_catalyst(const ProbDist& p, const ProbDist& q, int n) {
  if (n < 2) throw std::invalid_argument("tensor_catalyst: n must be >= 2");
  if (p.dim() != q.dim()) throw std::invalid_argument("tensor_catalyst: dimension mismatch");
  double dim_est = n * std::pow(static_cast<double>(p.dim()), n - 1);
  if (dim_est > 1e6) throw std::invalid_argument("tensor_catalyst: dimension overflow");
  std::vector<ProbDist> blocks;
  blocks.reserve(static_cast<size_t>(n));
  for (int k = 0; k <= n - 1; ++k) {
    // block k holds p^(n-1-k) (x) q^(k)
    std::optional<ProbDist> blk;
    for (int r = 0; r < n - 1 - k; ++r) blk = blk ? tensor(*blk, p) : p;
    for (int r = 0; r < k; ++r) blk = blk ? tensor(*blk, q) : q;
    blocks.push_back(*blk);
  }
  std::vector<Rational> weights(static_cast<size_t>(n), Rational(1, n));
  ProbDist omega = direct_sum(blocks, weights);
  return {omega, Hamiltonian::trivial(omega.dim())};
}

Catalyst embezzler(int n) {
  if (n < 1) throw std::invalid_argument("embezzler: n must be >= 1");
  std::vector<Rational> w(static_cast<size_t>(n));
  Rational c(0);
  for (int j = 1; j <= n; ++j) c += Rational(1, j);
  for (int j = 1; j <= n; ++j) w[static_cast<size_t>(j - 1)] = Rational(1, j) / c;
  ProbDist state(std::move(w));
  return {state, Hamiltonian::trivial(n)};
}

EmbezzleResult embezzle_erase(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("embezzle_erase: m, n must be >= 1");
  if (static_cast<double>(m) * n > 4e6)
    throw std::invalid_argument("embezzle_erase: dimension overflow");
  Catalyst c = embezzler(n);
  const std::vector<double>& emb = c.state.weights();

  // joint spectrum of embezzler (x) uniform_m, sorted descending
  std::vector<double> joint;
  joint.reserve(static_cast<size_t>(n) * m);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < m; ++l) joint.push_back(emb[static_cast<size_t>(j)] / m);
  std::sort(joint.begin(), joint.end(), std::greater<>());

  // reordering unitary: the top n values land on (catalyst j, system |0>),
  // the remainder fills the system levels l >= 1 block by block; erasing the
  // system then sums each catalyst block
  std::vector<double> final_cat(static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) final_cat[static_cast<size_t>(j)] = joint[static_cast<size_t>(j)];
  size_t pos = static_cast<size_t>(n);
  for (int j = 0; j < n; ++j)
    for (int l = 1; l < m; ++l) final_cat[static_cast<size_t>(j)] += joint[pos++];

  double dist = l1_distance(final_cat, emb);
  double fid = 0.0;
  for (int j = 0; j < n; ++j)
    fid += std::sqrt(final_cat[static_cast<size_t>(j)] * emb[static_cast<size_t>(j)]);
  return {ProbDist(std::move(final_cat), 1e-6), dist, fid};
}

RegimeReport classify_regime(const ProbDist& c_in, const ProbDist& c_out,
                             const Hamiltonian& h_c, const ThermalContext& ctx,
                             double eps) {
  if (c_in.dim() != c_out.dim() || c_in.dim() != h_c.dim())
    throw std::invalid_argument("classify_regime: dimension mismatch");
  RegimeReport r;
  r.dim = c_in.dim();
  r.trace_distance = statistical_distance(c_in.span(), c_out.span());
  ExtendedReal dwork = work_distance(c_out, c_in, h_c, ctx);
  r.work_to_restore = -dwork;
  if (r.trace_distance == 0.0) {
    r.regime = Regime::kExact;
    return r;
  }
  if (r.work_to_restore <= ExtendedReal(eps)) {
    r.regime = Regime::kWorkEps;
    return r;
  }
  double log_n = std::log(static_cast<double>(r.dim));
  if (log_n > 0 && r.trace_distance <= eps / log_n) {
    r.regime = Regime::kExtensiveError;
    return r;
  }
  if (r.trace_distance <= eps) {
    r.regime = Regime::kEmbezzling;
    return r;
  }
  r.regime = Regime::kNone;
  return r;
}

}  // namespace tmon
