#include "tmon/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simplex.hpp"

namespace tmon {

namespace {

using detail::LpResult;
using detail::LpStatus;

bool is_uniform(const ProbDist& p, double tol = 1e-12) {
  double u = 1.0 / p.dim();
  for (int i = 0; i < p.dim(); ++i)
    if (std::abs(p[i] - u) > tol) return false;
  return true;
}

Rational rational_ceil(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(r), den = denominator(r);
  cpp_int q = num / den;
  if (q * den != num && num > 0) ++q;
  return Rational(q);
}

}  // namespace

StochasticMatrix::StochasticMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("StochasticMatrix: bad shape");
}

StochasticMatrix StochasticMatrix::identity(int n) {
  StochasticMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

void StochasticMatrix::validate(double tol) const {
  for (int i = 0; i < cols_; ++i) {
    double s = 0.0;
    for (int j = 0; j < rows_; ++j) {
      if (at(j, i) < -tol) throw std::invalid_argument("StochasticMatrix: negative entry");
      s += at(j, i);
    }
    if (std::abs(s - 1.0) > tol)
      throw std::invalid_argument("StochasticMatrix: column sum " + std::to_string(s));
  }
}

void StochasticMatrix::renormalize_columns() {
  for (int i = 0; i < cols_; ++i) {
    double s = 0.0;
    for (int j = 0; j < rows_; ++j) {
      if (at(j, i) < 0) at(j, i) = 0.0;
      s += at(j, i);
    }
    if (s <= 0) throw std::invalid_argument("StochasticMatrix: zero column");
    for (int j = 0; j < rows_; ++j) at(j, i) /= s;
  }
}

ProbDist apply(const StochasticMatrix& m, const ProbDist& p) {
  if (m.cols() != p.dim()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<double> out(static_cast<size_t>(m.rows()), 0.0);
  for (int j = 0; j < m.rows(); ++j)
    for (int i = 0; i < m.cols(); ++i) out[static_cast<size_t>(j)] += m.at(j, i) * p[i];
  return ProbDist(std::move(out), 1e-6);
}

EmbeddingSpec::EmbeddingSpec(std::vector<int> d) : block_sizes(std::move(d)) {
  if (block_sizes.empty()) throw std::invalid_argument("EmbeddingSpec: empty");
  for (int x : block_sizes)
    if (x < 1) throw std::invalid_argument("EmbeddingSpec: block sizes must be >= 1");
}

int EmbeddingSpec::total() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

ProbDist EmbeddingSpec::gamma() const {
  int n = total();
  std::vector<Rational> w;
  w.reserve(block_sizes.size());
  for (int d : block_sizes) w.emplace_back(d, n);
  return ProbDist(std::move(w));
}

ProbDist embed(const EmbeddingSpec& spec, const ProbDist& p) {
  if (p.dim() != spec.dim()) throw std::invalid_argument("embed: dimension mismatch");
  if (p.exact()) {
    std::vector<Rational> w;
    w.reserve(static_cast<size_t>(spec.total()));
    for (int i = 0; i < p.dim(); ++i) {
      Rational v = p.exact_weights()[static_cast<size_t>(i)] /
                   spec.block_sizes[static_cast<size_t>(i)];
      for (int r = 0; r < spec.block_sizes[static_cast<size_t>(i)]; ++r) w.push_back(v);
    }
    return ProbDist(std::move(w));
  }
  std::vector<double> w;
  w.reserve(static_cast<size_t>(spec.total()));
  for (int i = 0; i < p.dim(); ++i)
    for (int r = 0; r < spec.block_sizes[static_cast<size_t>(i)]; ++r)
      w.push_back(p[i] / spec.block_sizes[static_cast<size_t>(i)]);
  return ProbDist(std::move(w), 1e-6);
}

ProbDist unembed(const EmbeddingSpec& spec, const ProbDist& p_fine) {
  if (p_fine.dim() != spec.total()) throw std::invalid_argument("unembed: dimension mismatch");
  if (p_fine.exact()) {
    std::vector<Rational> w;
    size_t pos = 0;
    for (int d : spec.block_sizes) {
      Rational s = 0;
      for (int r = 0; r < d; ++r) s += p_fine.exact_weights()[pos++];
      w.push_back(s);
    }
    return ProbDist(std::move(w));
  }
  std::vector<double> w;
  size_t pos = 0;
  for (int d : spec.block_sizes) {
    double s = 0;
    for (int r = 0; r < d; ++r) s += p_fine[static_cast<int>(pos++)];
    w.push_back(s);
  }
  return ProbDist(std::move(w), 1e-6);
}

RationalApproxResult rational_approx_channel(const ProbDist& q, long n_grid) {
  const int k = q.dim();
  for (int i = 0; i + 1 < k; ++i)
    if (q[i] < q[i + 1]) throw std::invalid_argument("rational_approx_channel: q not descending");
  if (q[k - 1] <= 0) throw std::invalid_argument("rational_approx_channel: q not full rank");
  if (!(q[k - 1] * q[k - 1] * n_grid > static_cast<double>(k) * k))
    throw std::invalid_argument("rational_approx_channel: N too small (need q_min > k/sqrt(N))");

  std::vector<Rational> qt(static_cast<size_t>(k));
  Rational partial = 0;
  for (int i = 0; i + 1 < k; ++i) {
    Rational value = q.exact() ? q.exact_weights()[static_cast<size_t>(i)] * n_grid
                               : Rational(static_cast<long long>(
                                     std::ceil(q[i] * static_cast<double>(n_grid) - 1e-9)));
    Rational rounded = q.exact() ? rational_ceil(value) : value;
    qt[static_cast<size_t>(i)] = rounded / n_grid;
    partial += qt[static_cast<size_t>(i)];
  }
  qt[static_cast<size_t>(k - 1)] = Rational(1) - partial;
  if (qt[static_cast<size_t>(k - 1)] <= 0)
    throw std::invalid_argument("rational_approx_channel: rounding exhausted the last entry");
  ProbDist q_tilde{std::vector<Rational>(qt)};

  StochasticMatrix e(k, k);
  double qk = q[k - 1];
  double delta = 0.0;
  std::vector<double> dj(static_cast<size_t>(k - 1));
  for (int j = 0; j + 1 < k; ++j) {
    dj[static_cast<size_t>(j)] = q_tilde[j] - q[j];
    delta += dj[static_cast<size_t>(j)];
  }
  for (int j = 0; j + 1 < k; ++j) {
    e.at(j, j) = 1.0;
    e.at(j, k - 1) = dj[static_cast<size_t>(j)] / qk;
  }
  e.at(k - 1, k - 1) = 1.0 - delta / qk;
  e.validate(1e-9);
  return {std::move(q_tilde), std::move(e)};
}

bool check_direct_sum(const StochasticMatrix& m, int split, const ProbDist& w,
                      const ProbDist& t, const ProbDist& t_prime, double tol) {
  const int n = w.dim();
  if (m.rows() != n || m.cols() != n || t.dim() != n || t_prime.dim() != n || split < 1 ||
      split >= n)
    throw std::invalid_argument("check_direct_sum: dimension mismatch");
  if (!w.full_rank()) throw std::invalid_argument("check_direct_sum: w must be full rank");
  for (int i = split; i < n; ++i)
    if (t[i] > tol || t_prime[i] > tol)
      throw std::invalid_argument("check_direct_sum: t, t' must live on the first indices");
  if (l1_distance(apply(m, w).weights(), w.weights()) > tol)
    throw std::invalid_argument("check_direct_sum: channel does not preserve w");
  if (l1_distance(apply(m, t).weights(), t_prime.weights()) > tol)
    throw std::invalid_argument("check_direct_sum: channel does not map t to t'");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      bool jb = j < split, ib = i < split;
      if (jb != ib && std::abs(m.at(j, i)) > tol) return false;
    }
  return true;
}

namespace {

template <class T>
std::vector<T> to_scalar(const ProbDist& p) {
  std::vector<T> out;
  out.reserve(static_cast<size_t>(p.dim()));
  if constexpr (std::is_same_v<T, Rational>) {
    for (const Rational& x : p.exact_weights()) out.push_back(x);
  } else {
    for (double x : p.weights()) out.push_back(x);
  }
  return out;
}

template <class T>
DMajResult dmaj_solve(const ProbDist& p, const ProbDist& q, const ProbDist& pp,
                      const ProbDist& qp, T tol) {
  const int k = p.dim(), kp = pp.dim();
  const int nvars = k * kp;
  const int nrows = k + 2 * kp;
  std::vector<T> a(static_cast<size_t>(nrows) * nvars, T(0));
  std::vector<T> b(static_cast<size_t>(nrows), T(0));
  std::vector<T> c(static_cast<size_t>(nvars), T(0));
  auto var = [kp](int j, int i) { return i * kp + j; };  // column i, output j
  std::vector<T> pv = to_scalar<T>(p), qv = to_scalar<T>(q), ppv = to_scalar<T>(pp),
                 qpv = to_scalar<T>(qp);
  int row = 0;
  for (int i = 0; i < k; ++i, ++row) {  // columns sum to one
    for (int j = 0; j < kp; ++j) a[static_cast<size_t>(row) * nvars + var(j, i)] = T(1);
    b[static_cast<size_t>(row)] = T(1);
  }
  for (int j = 0; j < kp; ++j, ++row) {  // L p = p'
    for (int i = 0; i < k; ++i) a[static_cast<size_t>(row) * nvars + var(j, i)] = pv[static_cast<size_t>(i)];
    b[static_cast<size_t>(row)] = ppv[static_cast<size_t>(j)];
  }
  for (int j = 0; j < kp; ++j, ++row) {  // L q = q'
    for (int i = 0; i < k; ++i) a[static_cast<size_t>(row) * nvars + var(j, i)] = qv[static_cast<size_t>(i)];
    b[static_cast<size_t>(row)] = qpv[static_cast<size_t>(j)];
  }
  LpResult<T> res = detail::solve_lp<T>(nrows, nvars, std::move(a), std::move(b),
                                        std::move(c), tol);
  if (res.status == LpStatus::kIterationLimit || res.status == LpStatus::kUnbounded)
    throw SolverError("lp_dmajorization: simplex did not converge");
  if (res.status == LpStatus::kInfeasible) return {false, std::nullopt};
  StochasticMatrix w(kp, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < kp; ++j) {
      if constexpr (std::is_same_v<T, Rational>) {
        w.at(j, i) = res.x[static_cast<size_t>(var(j, i))].template convert_to<double>();
      } else {
        w.at(j, i) = res.x[static_cast<size_t>(var(j, i))];
      }
    }
  w.renormalize_columns();
  return {true, std::move(w)};
}

}  // namespace

DMajResult lp_dmajorization(const ProbDist& p, const ProbDist& q, const ProbDist& p_prime,
                            const ProbDist& q_prime, bool exact) {
  if (p.dim() != q.dim() || p_prime.dim() != q_prime.dim())
    throw std::invalid_argument("lp_dmajorization: dimension mismatch");
  if (exact) {
    if (!(p.exact() && q.exact() && p_prime.exact() && q_prime.exact()))
      throw std::invalid_argument("lp_dmajorization: exact mode needs rational inputs");
    return dmaj_solve<Rational>(p, q, p_prime, q_prime, Rational(0));
  }
  return dmaj_solve<double>(p, q, p_prime, q_prime, 1e-8);
}

namespace {

// --- nearest-image machinery ---

struct SortedView {
  std::vector<double> values;  // descending
  std::vector<int> order;      // order[k] = original index of k-th largest
};

SortedView sort_desc(const ProbDist& p) {
  SortedView s;
  const int n = p.dim();
  s.order.resize(static_cast<size_t>(n));
  std::iota(s.order.begin(), s.order.end(), 0);
  std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    if (p[a] != p[b]) return p[a] > p[b];
    return a < b;
  });
  s.values.reserve(static_cast<size_t>(n));
  for (int i : s.order) s.values.push_back(p[i]);
  return s;
}

/// Doubly stochastic matrix mapping the descending x onto the descending y,
/// with y majorized by x; built as a chain of T-transforms.
std::vector<double> t_transform_chain(std::vector<double> xc, const std::vector<double>& y) {
  const int n = static_cast<int>(xc.size());
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1.0;
  const double eps = 1e-12;
  for (int step = 0; step < 4 * n; ++step) {
    int j = -1;
    for (int r = 0; r < n; ++r)
      if (xc[static_cast<size_t>(r)] < y[static_cast<size_t>(r)] - eps) {
        j = r;
        break;
      }
    if (j < 0) break;
    int i = -1;
    for (int r = j - 1; r >= 0; --r)
      if (xc[static_cast<size_t>(r)] > y[static_cast<size_t>(r)] + eps) {
        i = r;
        break;
      }
    if (i < 0) throw SolverError("nearest image: T-transform lost majorization");
    double delta = std::min(xc[static_cast<size_t>(i)] - y[static_cast<size_t>(i)],
                            y[static_cast<size_t>(j)] - xc[static_cast<size_t>(j)]);
    double lam = delta / (xc[static_cast<size_t>(i)] - xc[static_cast<size_t>(j)]);
    for (int col = 0; col < n; ++col) {
      double ri = m[static_cast<size_t>(i) * n + col];
      double rj = m[static_cast<size_t>(j) * n + col];
      m[static_cast<size_t>(i) * n + col] = (1 - lam) * ri + lam * rj;
      m[static_cast<size_t>(j) * n + col] = lam * ri + (1 - lam) * rj;
    }
    xc[static_cast<size_t>(i)] -= delta;
    xc[static_cast<size_t>(j)] += delta;
  }
  for (int r = 0; r < n; ++r)
    if (std::abs(xc[static_cast<size_t>(r)] - y[static_cast<size_t>(r)]) > 1e-8)
      throw SolverError("nearest image: T-transform chain did not converge");
  return m;
}

NearestImageResult nearest_uniform_fixed(const ProbDist& p, const ProbDist& target) {
  const int n = p.dim();
  SortedView xs = sort_desc(p);
  SortedView ts = sort_desc(target);
  std::vector<double> xprefix(static_cast<size_t>(n));
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += xs.values[static_cast<size_t>(i)];
    xprefix[static_cast<size_t>(i)] = acc;
  }
  // group equal target values; an optimal image is constant on each group
  std::vector<int> group_count;
  std::vector<double> group_value;
  for (int i = 0; i < n; ++i) {
    double v = ts.values[static_cast<size_t>(i)];
    if (!group_value.empty() &&
        std::abs(group_value.back() - v) <= 1e-12 * std::max(1.0, group_value.back())) {
      group_count.back()++;
    } else {
      group_value.push_back(v);
      group_count.push_back(1);
    }
  }
  const int g = static_cast<int>(group_value.size());
  // variables: y(g), u(g), v(g), prefix slacks (g-1), monotone slacks (g-1)
  const int nvars = 3 * g + 2 * (g - 1);
  const int nrows = g + (g - 1) + 1 + (g - 1);
  std::vector<double> a(static_cast<size_t>(nrows) * nvars, 0.0);
  std::vector<double> b(static_cast<size_t>(nrows), 0.0);
  std::vector<double> c(static_cast<size_t>(nvars), 0.0);
  auto yv = [](int i) { return i; };
  auto uv = [g](int i) { return g + i; };
  auto vv = [g](int i) { return 2 * g + i; };
  auto sv = [g](int i) { return 3 * g + i; };
  auto mv = [g](int i) { return 3 * g + (g - 1) + i; };
  for (int i = 0; i < g; ++i) {
    c[static_cast<size_t>(uv(i))] = group_count[static_cast<size_t>(i)];
    c[static_cast<size_t>(vv(i))] = group_count[static_cast<size_t>(i)];
  }
  int row = 0;
  for (int i = 0; i < g; ++i, ++row) {  // y - u + v = t
    a[static_cast<size_t>(row) * nvars + yv(i)] = 1;
    a[static_cast<size_t>(row) * nvars + uv(i)] = -1;
    a[static_cast<size_t>(row) * nvars + vv(i)] = 1;
    b[static_cast<size_t>(row)] = group_value[static_cast<size_t>(i)];
  }
  int cum = 0;
  for (int i = 0; i + 1 < g; ++i, ++row) {  // prefix caps at group boundaries
    cum += group_count[static_cast<size_t>(i)];
    for (int l = 0; l <= i; ++l)
      a[static_cast<size_t>(row) * nvars + yv(l)] = group_count[static_cast<size_t>(l)];
    a[static_cast<size_t>(row) * nvars + sv(i)] = 1;
    b[static_cast<size_t>(row)] = xprefix[static_cast<size_t>(cum - 1)];
  }
  {  // total mass
    for (int l = 0; l < g; ++l)
      a[static_cast<size_t>(row) * nvars + yv(l)] = group_count[static_cast<size_t>(l)];
    b[static_cast<size_t>(row)] = 1.0;
    ++row;
  }
  for (int i = 0; i + 1 < g; ++i, ++row) {  // descending group values
    a[static_cast<size_t>(row) * nvars + yv(i)] = 1;
    a[static_cast<size_t>(row) * nvars + yv(i + 1)] = -1;
    a[static_cast<size_t>(row) * nvars + mv(i)] = -1;
  }
  LpResult<double> res =
      detail::solve_lp<double>(nrows, nvars, std::move(a), std::move(b), std::move(c), 1e-10);
  if (res.status != LpStatus::kOptimal)
    throw SolverError("lp_nearest_image: sorted-form simplex failed");

  std::vector<double> y_sorted;
  y_sorted.reserve(static_cast<size_t>(n));
  for (int i = 0; i < g; ++i)
    for (int r = 0; r < group_count[static_cast<size_t>(i)]; ++r)
      y_sorted.push_back(std::max(res.x[static_cast<size_t>(yv(i))], 0.0));
  // absorb clipping residue into the last entry (it is tiny by LP tolerance)
  double mass = std::accumulate(y_sorted.begin(), y_sorted.end(), 0.0);
  y_sorted.back() += 1.0 - mass;

  std::vector<double> m = t_transform_chain(xs.values, y_sorted);
  StochasticMatrix w(n, n);
  for (int r = 0; r < n; ++r)
    for (int cidx = 0; cidx < n; ++cidx)
      w.at(ts.order[static_cast<size_t>(r)], xs.order[static_cast<size_t>(cidx)]) =
          m[static_cast<size_t>(r) * n + cidx];
  w.renormalize_columns();
  ProbDist image = apply(w, p);
  double l1 = l1_distance(image.weights(), target.weights());
  return {std::move(image), l1, std::move(w)};
}

NearestImageResult nearest_general_fixed(const ProbDist& p, const ProbDist& target,
                                         const ProbDist& fixed) {
  const int n = p.dim();
  if (n > 24)
    throw std::invalid_argument(
        "lp_nearest_image: general fixed points supported for dimension <= 24");
  // breakpoints of the positive-part criterion
  std::vector<double> taus;
  for (int i = 0; i < n; ++i)
    if (fixed[i] > 0) taus.push_back(p[i] / fixed[i]);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             taus.end());
  const int nb = static_cast<int>(taus.size());
  auto cap = [&](double tau) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::max(p[i] - tau * fixed[i], 0.0);
    return s;
  };
  // variables: y(n), u(n), v(n), s(n*nb), w(n*nb), z(nb)
  const int nvars = 3 * n + 2 * n * nb + nb;
  const int nrows = n + 1 + n * nb + nb;
  std::vector<double> a(static_cast<size_t>(nrows) * nvars, 0.0);
  std::vector<double> b(static_cast<size_t>(nrows), 0.0);
  std::vector<double> c(static_cast<size_t>(nvars), 0.0);
  auto yv = [](int i) { return i; };
  auto uv = [n](int i) { return n + i; };
  auto vv = [n](int i) { return 2 * n + i; };
  auto sv = [n](int i, int t) { return 3 * n + t * n + i; };
  auto wv = [n, nb](int i, int t) { return 3 * n + n * nb + t * n + i; };
  auto zv = [n, nb](int t) { return 3 * n + 2 * n * nb + t; };
  for (int i = 0; i < n; ++i) {
    c[static_cast<size_t>(uv(i))] = 1;
    c[static_cast<size_t>(vv(i))] = 1;
  }
  int row = 0;
  for (int i = 0; i < n; ++i, ++row) {
    a[static_cast<size_t>(row) * nvars + yv(i)] = 1;
    a[static_cast<size_t>(row) * nvars + uv(i)] = -1;
    a[static_cast<size_t>(row) * nvars + vv(i)] = 1;
    b[static_cast<size_t>(row)] = target[i];
  }
  {
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(row) * nvars + yv(i)] = 1;
    b[static_cast<size_t>(row)] = 1.0;
    ++row;
  }
  for (int t = 0; t < nb; ++t)
    for (int i = 0; i < n; ++i, ++row) {  // y_i - s_it + w_it = tau_t f_i
      a[static_cast<size_t>(row) * nvars + yv(i)] = 1;
      a[static_cast<size_t>(row) * nvars + sv(i, t)] = -1;
      a[static_cast<size_t>(row) * nvars + wv(i, t)] = 1;
      b[static_cast<size_t>(row)] = taus[static_cast<size_t>(t)] * fixed[i];
    }
  for (int t = 0; t < nb; ++t, ++row) {  // sum_i s_it + z_t = cap(tau_t)
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(row) * nvars + sv(i, t)] = 1;
    a[static_cast<size_t>(row) * nvars + zv(t)] = 1;
    b[static_cast<size_t>(row)] = cap(taus[static_cast<size_t>(t)]);
  }
  LpResult<double> res =
      detail::solve_lp<double>(nrows, nvars, std::move(a), std::move(b), std::move(c), 1e-10);
  if (res.status != LpStatus::kOptimal)
    throw SolverError("lp_nearest_image: breakpoint simplex failed");
  std::vector<double> y(static_cast<size_t>(n));
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    y[static_cast<size_t>(i)] = std::max(res.x[static_cast<size_t>(yv(i))], 0.0);
    mass += y[static_cast<size_t>(i)];
  }
  for (double& x : y) x /= mass;
  // recover the witness channel; nudge toward p's own image if the optimum
  // sits exactly on the boundary of the reachable set
  for (double theta : {0.0, 1e-7, 1e-5}) {
    std::vector<double> yt(y);
    for (int i = 0; i < n; ++i)
      yt[static_cast<size_t>(i)] = (1 - theta) * yt[static_cast<size_t>(i)] + theta * p[i];
    DMajResult dm = lp_dmajorization(p, fixed, ProbDist(std::vector<double>(yt), 1e-6), fixed);
    if (dm.feasible) {
      StochasticMatrix w = *dm.witness;
      ProbDist image = apply(w, p);
      double l1 = l1_distance(image.weights(), target.weights());
      return {std::move(image), l1, std::move(w)};
    }
  }
  throw SolverError("lp_nearest_image: could not certify the optimal image");
}

}  // namespace

NearestImageResult lp_nearest_image(const ProbDist& p, const ProbDist& target,
                                    const ProbDist& fixed) {
  if (p.dim() != target.dim() || p.dim() != fixed.dim())
    throw std::invalid_argument("lp_nearest_image: dimension mismatch");
  if (is_uniform(fixed)) return nearest_uniform_fixed(p, target);
  return nearest_general_fixed(p, target, fixed);
}

}  // namespace tmon
