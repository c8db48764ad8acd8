#pragma once

// Small-dimension density-matrix layer: the two quantum Renyi divergence
// variants plus the skew family, the quantum second-law necessary conditions,
// dephasing, energy-preserving unitaries and thermal-operation simulation.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tmon/core.hpp"
#include "tmon/renyi.hpp"

namespace tmon {

/// Hermitian PSD trace-one matrix (tolerances 1e-9); eigenvalues below 1e-12
/// count as zero for support computations.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd m, double tol = kDefaultTol);
  static DensityMatrix diagonal(const ProbDist& p);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  ProbDist diagonal_dist() const;

 private:
  Eigen::MatrixXcd m_;
};

inline constexpr double kSupportTol = 1e-12;

/// S~_alpha(rho||sigma) = sgn(alpha)/(alpha-1) log tr rho^alpha sigma^{1-alpha},
/// via separate eigendecompositions; alpha = 1 is the relative entropy and
/// alpha = 0 is -log tr(Pi_rho sigma). Finite alpha only.
ExtendedReal tilde_divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                              Alpha a);

/// Sandwiched divergence
/// S_alpha = 1/(alpha-1) log tr (sigma^{(1-alpha)/2alpha} rho sigma^{(1-alpha)/2alpha})^alpha
/// for alpha >= 1/2; alpha = inf gives log ||sigma^{-1/2} rho sigma^{-1/2}||.
ExtendedReal hat_divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                            Alpha a);

enum class QuantumVariant { kHat, kTilde };

/// Divergence against the mixture gamma = s rho + (1-s) sigma.
ExtendedReal skew_divergence(const DensityMatrix& rho, const DensityMatrix& sigma,
                             Alpha a, double s, QuantumVariant variant);

struct QuantumViolation {
  const char* family;
  double alpha;
  double amount;
};

struct QuantumCheckReport {
  bool hat_ok = true;       // alpha >= 1/2
  bool hat_rev_ok = true;   // reversed arguments, 1/2 <= alpha <= 1
  bool tilde_ok = true;     // 0 <= alpha <= 2
  std::vector<QuantumViolation> violations;
  bool infeasible() const { return !(hat_ok && hat_rev_ok && tilde_ok); }
};

/// Samples the three necessary families on their alpha ranges; infeasible iff
/// any condition is violated beyond tol. Necessary conditions only: the
/// report never claims feasibility.
QuantumCheckReport quantum_second_law_check(const DensityMatrix& rho,
                                            const DensityMatrix& rho_prime,
                                            const Hamiltonian& h,
                                            const ThermalContext& ctx,
                                            double tol = kDefaultTol);

/// Zeroes matrix elements between distinct energy eigenvalues; degenerate
/// blocks survive untouched.
DensityMatrix dephase(const DensityMatrix& rho, const Hamiltonian& h);

/// Haar-random unitary on each total-energy eigenspace of the (diagonal)
/// Hamiltonian; commutes with it by construction.
Eigen::MatrixXcd random_energy_preserving_unitary(const Hamiltonian& h_total,
                                                  std::uint64_t seed);

/// tr_R [ U (rho_S (x) gibbs(H_R)) U^dagger ]; rejects U unless it commutes
/// with H_S + H_R within 1e-9.
DensityMatrix thermal_op(const DensityMatrix& rho_s, const Hamiltonian& h_s,
                         const Hamiltonian& h_r, const ThermalContext& ctx,
                         const Eigen::MatrixXcd& u);

// --- product-space helpers shared with the tests ---
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
/// Partial trace over the second factor of a dA x dB product space.
Eigen::MatrixXcd partial_trace_second(const Eigen::MatrixXcd& joint, int d_a, int d_b);
/// Partial trace over the first factor.
Eigen::MatrixXcd partial_trace_first(const Eigen::MatrixXcd& joint, int d_a, int d_b);

}  // namespace tmon
