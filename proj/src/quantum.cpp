#include "tmon/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tmon {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

struct EigenSystem {
  VectorXd values;   // ascending, clipped at zero
  MatrixXcd vectors;
};

EigenSystem decompose(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("quantum: eigendecomposition failed");
  EigenSystem s{es.eigenvalues(), es.eigenvectors()};
  for (int i = 0; i < s.values.size(); ++i)
    if (s.values(i) < kSupportTol) s.values(i) = 0.0;
  return s;
}

/// |<u_i|v_j>|^2 overlap table between two eigenbases.
Eigen::MatrixXd overlaps(const EigenSystem& a, const EigenSystem& b) {
  MatrixXcd inner = a.vectors.adjoint() * b.vectors;
  return inner.cwiseAbs2();
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("DensityMatrix: not square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  m_ = 0.5 * (m_ + m_.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
    throw std::invalid_argument("DensityMatrix: trace must be 1");
}

DensityMatrix DensityMatrix::diagonal(const ProbDist& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p.dim(), p.dim());
  for (int i = 0; i < p.dim(); ++i) m(i, i) = p[i];
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  double n = psi.norm();
  Eigen::VectorXcd v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

ProbDist DensityMatrix::diagonal_dist() const {
  std::vector<double> d(static_cast<size_t>(dim()));
  for (int i = 0; i < dim(); ++i) d[static_cast<size_t>(i)] = std::max(m_(i, i).real(), 0.0);
  return ProbDist(std::move(d), 1e-6);
}

ExtendedReal tilde_divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                              Alpha a) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("tilde_divergence: dimension mismatch");
  if (a.is_pos_inf() || a.is_neg_inf())
    throw std::invalid_argument("tilde_divergence: alpha must be finite");
  EigenSystem r = decompose(rho), s = decompose(sigma);
  Eigen::MatrixXd w = overlaps(r, s);
  const int n = rho.dim();

  auto sigma_mass_outside_rho = [&]() {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      if (r.values(i) > 0) continue;
      for (int j = 0; j < n; ++j) m += w(i, j) * s.values(j);
    }
    return m;
  };
  auto rho_mass_outside_sigma = [&]() {
    double m = 0.0;
    for (int j = 0; j < n; ++j) {
      if (s.values(j) > 0) continue;
      for (int i = 0; i < n; ++i) m += w(i, j) * r.values(i);
    }
    return m;
  };

  if (a.is_zero()) {
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
      if (r.values(i) == 0) continue;
      for (int j = 0; j < n; ++j) t += w(i, j) * s.values(j);
    }
    if (t <= 0) return ExtendedReal::infinity();
    return -std::log(t);
  }
  if (a.is_one()) {
    if (rho_mass_outside_sigma() > kSupportTol) return ExtendedReal::infinity();
    double t = 0.0;
    for (int i = 0; i < n; ++i)
      if (r.values(i) > 0) t += r.values(i) * std::log(r.values(i));
    for (int i = 0; i < n; ++i) {
      if (r.values(i) == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (s.values(j) == 0) continue;
        t -= w(i, j) * r.values(i) * std::log(s.values(j));
      }
    }
    return t;
  }
  const double al = a.v;
  if (al > 1.0 && rho_mass_outside_sigma() > kSupportTol) return ExtendedReal::infinity();
  if (al < 0.0 && sigma_mass_outside_rho() > kSupportTol) return ExtendedReal::infinity();
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    if (r.values(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (s.values(j) == 0) continue;
      t += w(i, j) * std::pow(r.values(i), al) * std::pow(s.values(j), 1.0 - al);
    }
  }
  if (t <= 0) return al > 1 || al < 0 ? ExtendedReal::neg_infinity() : ExtendedReal::infinity();
  double sgn = al >= 0 ? 1.0 : -1.0;
  return sgn * std::log(t) / (al - 1.0);
}

ExtendedReal hat_divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                            Alpha a) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("hat_divergence: dimension mismatch");
  if (a.is_neg_inf() || (!a.is_pos_inf() && a.v < 0.5))
    throw std::invalid_argument("hat_divergence: alpha must be >= 1/2");
  EigenSystem s = decompose(sigma);
  const int n = rho.dim();

  auto rho_mass_outside_sigma = [&]() {
    double m = 0.0;
    for (int j = 0; j < n; ++j) {
      if (s.values(j) > 0) continue;
      m += (s.vectors.col(j).adjoint() * rho.matrix() * s.vectors.col(j))(0, 0).real();
    }
    return m;
  };

  auto sigma_power = [&](double e) {
    Eigen::VectorXd d(n);
    for (int j = 0; j < n; ++j) d(j) = s.values(j) > 0 ? std::pow(s.values(j), e) : 0.0;
    return MatrixXcd(s.vectors * d.asDiagonal() * s.vectors.adjoint());
  };

  if (a.is_pos_inf()) {
    if (rho_mass_outside_sigma() > kSupportTol) return ExtendedReal::infinity();
    MatrixXcd m = sigma_power(-0.5) * rho.matrix() * sigma_power(-0.5);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
    return std::log(es.eigenvalues().maxCoeff());
  }
  if (a.is_one()) return tilde_divergence(rho, sigma, Alpha(1.0));

  const double al = a.v;
  const double e = (1.0 - al) / (2.0 * al);
  if (al > 1.0 && rho_mass_outside_sigma() > kSupportTol) return ExtendedReal::infinity();
  MatrixXcd m = sigma_power(e) * rho.matrix() * sigma_power(e);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    double lam = std::max(es.eigenvalues()(i), 0.0);
    if (lam > 0) t += std::pow(lam, al);
  }
  if (t <= 0) return al > 1 ? ExtendedReal::neg_infinity() : ExtendedReal::infinity();
  return std::log(t) / (al - 1.0);
}

ExtendedReal skew_divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                             Alpha a, double s, QuantumVariant variant) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("skew_divergence: s out of [0,1]");
  DensityMatrix gamma(s * rho.matrix() + (1.0 - s) * sigma.matrix());
  return variant == QuantumVariant::kHat ? hat_divergence(rho, gamma, a)
                                         : tilde_divergence(rho, gamma, a);
}

QuantumCheckReport quantum_second_law_check(const DensityMatrix& rho,
                                            const DensityMatrix& rho_prime,
                                            const Hamiltonian& h,
                                            const ThermalContext& ctx, double tol) {
  if (rho.dim() != h.dim() || rho_prime.dim() != h.dim())
    throw std::invalid_argument("quantum_second_law_check: dimension mismatch");
  DensityMatrix gibbs = DensityMatrix::diagonal(gibbs_state(h, ctx));
  QuantumCheckReport rep;

  auto holds = [tol](ExtendedReal lhs, ExtendedReal rhs, double* amount) {
    if (lhs.is_pos_inf()) return true;
    if (rhs.is_pos_inf()) {
      *amount = HUGE_VAL;
      return false;
    }
    *amount = rhs.value() - lhs.value();
    return *amount <= tol;
  };

  for (double al : {0.5, 0.6, 0.75, 0.9, 1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 8.0, HUGE_VAL}) {
    Alpha a = std::isinf(al) ? Alpha::inf() : Alpha(al);
    double amount = 0.0;
    if (!holds(hat_divergence(rho, gibbs, a), hat_divergence(rho_prime, gibbs, a), &amount)) {
      rep.hat_ok = false;
      rep.violations.push_back({"hat", al, amount});
    }
  }
  for (double al : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
    double amount = 0.0;
    if (!holds(hat_divergence(gibbs, rho, Alpha(al)),
               hat_divergence(gibbs, rho_prime, Alpha(al)), &amount)) {
      rep.hat_rev_ok = false;
      rep.violations.push_back({"hat-reversed", al, amount});
    }
  }
  for (double al : {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}) {
    double amount = 0.0;
    if (!holds(tilde_divergence(rho, gibbs, Alpha(al)),
               tilde_divergence(rho_prime, gibbs, Alpha(al)), &amount)) {
      rep.tilde_ok = false;
      rep.violations.push_back({"tilde", al, amount});
    }
  }
  return rep;
}

DensityMatrix dephase(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) throw std::invalid_argument("dephase: dimension mismatch");
  Eigen::MatrixXcd m = rho.matrix();
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (std::abs(h[i] - h[j]) > 1e-9) m(i, j) = 0.0;
  return DensityMatrix(std::move(m));
}

Eigen::MatrixXcd random_energy_preserving_unitary(const Hamiltonian& h_total,
                                                  std::uint64_t seed) {
  const int n = h_total.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // group indices into total-energy eigenspaces
  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return h_total[a] < h_total[b]; });
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  size_t start = 0;
  while (start < idx.size()) {
    size_t stop = start + 1;
    while (stop < idx.size() &&
           std::abs(h_total[idx[stop]] - h_total[idx[start]]) <= 1e-9)
      ++stop;
    const int b = static_cast<int>(stop - start);
    MatrixXcd g(b, b);
    for (int r = 0; r < b; ++r)
      for (int c = 0; c < b; ++c) g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(g);
    MatrixXcd q = qr.householderQ();
    MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < b; ++c) {
      std::complex<double> d = rmat(c, c);
      q.col(c) *= d / std::abs(d);
    }
    for (int r = 0; r < b; ++r)
      for (int c = 0; c < b; ++c)
        u(idx[start + static_cast<size_t>(r)], idx[start + static_cast<size_t>(c)]) = q(r, c);
    start = stop;
  }
  return u;
}

DensityMatrix thermal_op(const DensityMatrix& rho_s, const Hamiltonian& h_s,
                         const Hamiltonian& h_r, const ThermalContext& ctx,
                         const Eigen::MatrixXcd& u) {
  const int ds = rho_s.dim(), dr = h_r.dim();
  if (h_s.dim() != ds || u.rows() != ds * dr || u.cols() != ds * dr)
    throw std::invalid_argument("thermal_op: dimension mismatch");
  Hamiltonian ht = tensor_sum(h_s, h_r);
  Eigen::MatrixXcd hm = Eigen::MatrixXcd::Zero(ds * dr, ds * dr);
  for (int i = 0; i < ds * dr; ++i) hm(i, i) = ht[i];
  double scale = 1.0 + hm.cwiseAbs().maxCoeff();
  if ((u * hm - hm * u).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("thermal_op: unitary does not conserve energy");
  Eigen::MatrixXcd gibbs_r =
      DensityMatrix::diagonal(gibbs_state(h_r, ctx)).matrix();
  Eigen::MatrixXcd joint = kron(rho_s.matrix(), gibbs_r);
  Eigen::MatrixXcd out = u * joint * u.adjoint();
  return DensityMatrix(partial_trace_second(out, ds, dr), 1e-7);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd partial_trace_second(const Eigen::MatrixXcd& joint, int d_a, int d_b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d_a, d_a);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j)
      for (int k = 0; k < d_b; ++k) out(i, j) += joint(i * d_b + k, j * d_b + k);
  return out;
}

Eigen::MatrixXcd partial_trace_first(const Eigen::MatrixXcd& joint, int d_a, int d_b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d_b, d_b);
  for (int i = 0; i < d_b; ++i)
    for (int j = 0; j < d_b; ++j)
      for (int k = 0; k < d_a; ++k) out(i, j) += joint(k * d_b + i, k * d_b + j);
  return out;
}

}  // namespace tmon
