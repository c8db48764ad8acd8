#include "tmon/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tmon {

namespace {

double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace

ProbDist::ProbDist(std::vector<double> w, double tol) : w_(std::move(w)), mode_(Mode::kFloat) {
  if (w_.empty()) throw std::invalid_argument("ProbDist: dimension must be >= 1");
  double sum = 0.0;
  for (double& x : w_) {
    if (!std::isfinite(x)) throw std::invalid_argument("ProbDist: non-finite weight");
    if (x < 0) {
      if (x < -tol) throw std::invalid_argument("ProbDist: negative weight");
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument("ProbDist: weights sum to " + std::to_string(sum));
}

ProbDist::ProbDist(std::vector<Rational> w) : r_(std::move(w)), mode_(Mode::kRational) {
  if (r_.empty()) throw std::invalid_argument("ProbDist: dimension must be >= 1");
  Rational sum = 0;
  w_.reserve(r_.size());
  for (const Rational& x : r_) {
    if (x < 0) throw std::invalid_argument("ProbDist: negative weight");
    sum += x;
    w_.push_back(rational_to_double(x));
  }
  if (sum != 1) throw std::invalid_argument("ProbDist: rational weights must sum to exactly 1");
}

ProbDist ProbDist::uniform(int n) {
  if (n < 1) throw std::invalid_argument("uniform: n < 1");
  std::vector<Rational> w(static_cast<size_t>(n), Rational(1, n));
  return ProbDist(std::move(w));
}

ProbDist ProbDist::pure(int n, int atom) {
  if (n < 1 || atom < 0 || atom >= n) throw std::invalid_argument("pure: bad index");
  std::vector<Rational> w(static_cast<size_t>(n), Rational(0));
  w[static_cast<size_t>(atom)] = 1;
  return ProbDist(std::move(w));
}

const std::vector<Rational>& ProbDist::exact_weights() const {
  if (!exact()) throw std::logic_error("ProbDist: exact weights requested in float mode");
  return r_;
}

int ProbDist::rank() const {
  int r = 0;
  if (exact()) {
    for (const Rational& x : r_) r += (x != 0);
  } else {
    for (double x : w_) r += (x > 0.0);
  }
  return r;
}

double ProbDist::max_weight() const { return *std::max_element(w_.begin(), w_.end()); }
double ProbDist::min_weight() const { return *std::min_element(w_.begin(), w_.end()); }

Hamiltonian::Hamiltonian(std::vector<double> e) : levels(std::move(e)) {
  if (levels.empty()) throw std::invalid_argument("Hamiltonian: dimension must be >= 1");
  for (double x : levels)
    if (!std::isfinite(x)) throw std::invalid_argument("Hamiltonian: non-finite level");
}

bool Hamiltonian::is_trivial() const {
  return std::all_of(levels.begin(), levels.end(), [](double e) { return e == 0.0; });
}

ThermalContext make_context(double beta, double k) {
  if (!(beta > 0)) throw std::invalid_argument("ThermalContext: beta must be > 0");
  if (!(k > 0)) throw std::invalid_argument("ThermalContext: k must be > 0");
  return ThermalContext{beta, k};
}

double log_partition_function(const Hamiltonian& h, const ThermalContext& ctx) {
  // log-sum-exp with the minimum energy factored out.
  double emin = *std::min_element(h.levels.begin(), h.levels.end());
  double s = 0.0;
  for (double e : h.levels) s += std::exp(-ctx.beta * (e - emin));
  return -ctx.beta * emin + std::log(s);
}

double partition_function(const Hamiltonian& h, const ThermalContext& ctx) {
  return std::exp(log_partition_function(h, ctx));
}

ProbDist gibbs_state(const Hamiltonian& h, const ThermalContext& ctx) {
  double emin = *std::min_element(h.levels.begin(), h.levels.end());
  std::vector<double> g(h.levels.size());
  double s = 0.0;
  for (size_t i = 0; i < g.size(); ++i) {
    g[i] = std::exp(-ctx.beta * (h.levels[i] - emin));
    s += g[i];
  }
  for (double& x : g) x /= s;
  return ProbDist(std::move(g));
}

std::vector<int> beta_order(const ProbDist& p, const Hamiltonian& h,
                            const ThermalContext& ctx) {
  if (p.dim() != h.dim()) throw std::invalid_argument("beta_order: dimension mismatch");
  const int n = p.dim();
  std::vector<double> key(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    // log key: order of p_i e^{beta E_i}; zero weights sort last.
    key[static_cast<size_t>(i)] =
        p[i] > 0 ? std::log(p[i]) + ctx.beta * h[i] : -std::numeric_limits<double>::infinity();
  }
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    double ka = key[static_cast<size_t>(a)], kb = key[static_cast<size_t>(b)];
    if (ka != kb) return ka > kb;
    return a < b;
  });
  return idx;
}

ProbDist tensor(const ProbDist& a, const ProbDist& b) {
  if (a.exact() && b.exact()) {
    std::vector<Rational> w;
    w.reserve(static_cast<size_t>(a.dim()) * static_cast<size_t>(b.dim()));
    for (const Rational& x : a.exact_weights())
      for (const Rational& y : b.exact_weights()) w.push_back(x * y);
    return ProbDist(std::move(w));
  }
  std::vector<double> w;
  w.reserve(static_cast<size_t>(a.dim()) * static_cast<size_t>(b.dim()));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) w.push_back(a[i] * b[j]);
  // products of normalized vectors renormalize exactly in theory; pass a loose
  // tolerance so accumulated float error never rejects a valid product
  return ProbDist(std::move(w), 1e-6);
}

ProbDist tensor_power(const ProbDist& a, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n < 1");
  ProbDist out = a;
  for (int k = 1; k < n; ++k) out = tensor(out, a);
  return out;
}

Hamiltonian tensor_sum(const Hamiltonian& a, const Hamiltonian& b) {
  std::vector<double> e;
  e.reserve(a.levels.size() * b.levels.size());
  for (double x : a.levels)
    for (double y : b.levels) e.push_back(x + y);
  return Hamiltonian(std::move(e));
}

Hamiltonian tensor_power_sum(const Hamiltonian& a, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power_sum: n < 1");
  Hamiltonian out = a;
  for (int k = 1; k < n; ++k) out = tensor_sum(out, a);
  return out;
}

ProbDist direct_sum(const std::vector<ProbDist>& parts,
                    const std::vector<Rational>& block_weights) {
  if (parts.empty() || parts.size() != block_weights.size())
    throw std::invalid_argument("direct_sum: size mismatch");
  bool exact = std::all_of(parts.begin(), parts.end(),
                           [](const ProbDist& p) { return p.exact(); });
  if (exact) {
    std::vector<Rational> w;
    for (size_t k = 0; k < parts.size(); ++k)
      for (const Rational& x : parts[k].exact_weights()) w.push_back(block_weights[k] * x);
    return ProbDist(std::move(w));
  }
  std::vector<double> w;
  for (size_t k = 0; k < parts.size(); ++k) {
    double bw = rational_to_double(block_weights[k]);
    for (double x : parts[k].weights()) w.push_back(bw * x);
  }
  return ProbDist(std::move(w), 1e-6);
}

double statistical_distance(std::span<const double> a, std::span<const double> b) {
  return 0.5 * l1_distance(a, b);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

std::pair<ProbDist, ProbDist> zero_pad(const ProbDist& a, const ProbDist& b) {
  if (a.dim() == b.dim()) return {a, b};
  int n = std::max(a.dim(), b.dim());
  auto pad = [n](const ProbDist& p) {
    if (p.dim() == n) return p;
    if (p.exact()) {
      std::vector<Rational> w = p.exact_weights();
      w.resize(static_cast<size_t>(n), Rational(0));
      return ProbDist(std::move(w));
    }
    std::vector<double> w = p.weights();
    w.resize(static_cast<size_t>(n), 0.0);
    return ProbDist(std::move(w));
  };
  return {pad(a), pad(b)};
}

std::string to_string(ExtendedReal x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return std::to_string(x.value());
}

}  // namespace tmon
