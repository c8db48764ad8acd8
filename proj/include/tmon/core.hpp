#pragma once

// Foundational value types shared by the whole library: probability vectors
// (float or exact-rational), Hamiltonians, thermal contexts, extended-real
// arithmetic and beta-ordering. Everything here is an immutable value after
// construction; all operations are pure functions.

#include <cassert>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tmon {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kDefaultTol = 1e-9;

/// Real line extended with +/-inf, closed under the conventions 0/0 = 0 and
/// a/0 = sign(a)*inf. Comparisons are total: -inf < finite < +inf. NaN is a
/// programming error and is rejected on construction.
class ExtendedReal {
 public:
  ExtendedReal() : v_(0.0) {}
  ExtendedReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v)) throw std::invalid_argument("ExtendedReal: NaN");
  }

  static ExtendedReal infinity() { return ExtendedReal(HUGE_VAL); }
  static ExtendedReal neg_infinity() { return ExtendedReal(-HUGE_VAL); }

  double value() const { return v_; }
  bool finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  friend auto operator<=>(ExtendedReal a, ExtendedReal b) {
    return a.v_ <=> b.v_;
  }
  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }

  /// Sum; adding infinities of opposite sign is a programming error here.
  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.is_pos_inf() && b.is_neg_inf()) throw std::domain_error("inf + -inf");
    if (a.is_neg_inf() && b.is_pos_inf()) throw std::domain_error("-inf + inf");
    return ExtendedReal(a.v_ + b.v_);
  }
  friend ExtendedReal operator-(ExtendedReal a) { return ExtendedReal(-a.v_); }
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) { return a + (-b); }
  friend ExtendedReal operator*(double s, ExtendedReal a) {
    if (s == 0.0 && !a.finite()) throw std::domain_error("0 * inf");
    return ExtendedReal(s * a.v_);
  }

  /// Quotient with the conventions 0/0 = 0 and a/0 = sign(a)*inf.
  static ExtendedReal div(double a, double b) {
    if (b == 0.0) {
      if (a == 0.0) return ExtendedReal(0.0);
      return a > 0 ? infinity() : neg_infinity();
    }
    return ExtendedReal(a / b);
  }

  /// log with log 0 = -inf and log inf = inf.
  static ExtendedReal log(ExtendedReal x) {
    if (x.v_ < 0) throw std::domain_error("log of negative");
    if (x.v_ == 0.0) return neg_infinity();
    if (x.is_pos_inf()) return infinity();
    return ExtendedReal(std::log(x.v_));
  }

 private:
  double v_;
};

/// Finite probability vector. Float mode stores doubles and validates to
/// tolerance 1e-9; rational mode additionally carries exact weights that sum
/// to exactly one, used by the zero-tolerance comparison paths.
class ProbDist {
 public:
  enum class Mode { kFloat, kRational };

  explicit ProbDist(std::vector<double> w, double tol = kDefaultTol);
  explicit ProbDist(std::vector<Rational> w);

  static ProbDist uniform(int n);
  static ProbDist pure(int n, int atom);

  int dim() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[static_cast<size_t>(i)]; }
  const std::vector<double>& weights() const { return w_; }
  std::span<const double> span() const { return w_; }

  Mode mode() const { return mode_; }
  bool exact() const { return mode_ == Mode::kRational; }
  const std::vector<Rational>& exact_weights() const;

  /// Number of strictly positive weights.
  int rank() const;
  bool full_rank() const { return rank() == dim(); }
  double max_weight() const;
  double min_weight() const;

 private:
  std::vector<double> w_;
  std::vector<Rational> r_;
  Mode mode_;
};

/// Energy levels index-aligned with a ProbDist; degeneracy by repetition.
struct Hamiltonian {
  std::vector<double> levels;

  explicit Hamiltonian(std::vector<double> e);
  static Hamiltonian trivial(int n) { return Hamiltonian(std::vector<double>(n, 0.0)); }

  int dim() const { return static_cast<int>(levels.size()); }
  double operator[](int i) const { return levels[static_cast<size_t>(i)]; }
  bool is_trivial() const;
};

/// Inverse temperature and Boltzmann constant. kT = 1/beta in energy units.
struct ThermalContext {
  double beta;
  double k_boltzmann = 1.0;

  double kT() const { return 1.0 / beta; }
};

ThermalContext make_context(double beta, double k = 1.0);

double partition_function(const Hamiltonian& h, const ThermalContext& ctx);
double log_partition_function(const Hamiltonian& h, const ThermalContext& ctx);

/// Gibbs distribution e^{-beta E_i} / Z; invariant under constant energy shifts.
ProbDist gibbs_state(const Hamiltonian& h, const ThermalContext& ctx);

/// Permutation sigma sorting p_i e^{beta E_i} into non-increasing order,
/// ties broken by ascending original index. sigma[k] is the original index of
/// the k-th element in beta-order.
std::vector<int> beta_order(const ProbDist& p, const Hamiltonian& h,
                            const ThermalContext& ctx);

// --- small vector utilities used throughout ---

/// Tensor product, index convention (i, j) -> i * dim(b) + j. Exactness is
/// preserved when both factors are rational.
ProbDist tensor(const ProbDist& a, const ProbDist& b);
ProbDist tensor_power(const ProbDist& a, int n);

/// Product-space Hamiltonian with energies E_i + F_j, same index convention.
Hamiltonian tensor_sum(const Hamiltonian& a, const Hamiltonian& b);
Hamiltonian tensor_power_sum(const Hamiltonian& a, int n);

/// Weighted direct sum  w_1 p_1 (+) w_2 p_2 (+) ... ; weights must sum to 1.
ProbDist direct_sum(const std::vector<ProbDist>& parts,
                    const std::vector<Rational>& block_weights);

/// 0.5 * sum_i |a_i - b_i| (the statistical distance; also defined for
/// sub-normalized vectors).
double statistical_distance(std::span<const double> a, std::span<const double> b);
/// sum_i |a_i - b_i|.
double l1_distance(std::span<const double> a, std::span<const double> b);

/// Zero-pads the shorter of the two vectors (value copies).
std::pair<ProbDist, ProbDist> zero_pad(const ProbDist& a, const ProbDist& b);

std::string to_string(ExtendedReal x);

}  // namespace tmon
