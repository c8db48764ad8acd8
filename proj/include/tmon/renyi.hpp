#pragma once

// Classical Renyi divergences D_alpha and entropies H_alpha over the full
// real alpha line including the limit cases {-inf, 0, 1, +inf}, plus the
// smoothing strategies that collapse the alpha family to two checkable
// endpoint conditions.

#include <span>
#include <utility>
#include <vector>

#include "tmon/core.hpp"

namespace tmon {

/// Order parameter alpha in [-inf, +inf]; limit cases get closed forms, never
/// numerical limits.
struct Alpha {
  double v;
  Alpha(double value) : v(value) {  // NOLINT: implicit by design
    if (std::isnan(value)) throw std::invalid_argument("Alpha: NaN");
  }
  static Alpha inf() { return Alpha(HUGE_VAL); }
  static Alpha neg_inf() { return Alpha(-HUGE_VAL); }
  bool is_zero() const { return v == 0.0; }
  bool is_one() const { return v == 1.0; }
  bool is_pos_inf() const { return std::isinf(v) && v > 0; }
  bool is_neg_inf() const { return std::isinf(v) && v < 0; }
};

/// Vector of non-negative weights with total mass <= 1, produced by the
/// smoothing operations.
class SubNormalizedDist {
 public:
  explicit SubNormalizedDist(std::vector<double> w, double tol = kDefaultTol);
  int dim() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[static_cast<size_t>(i)]; }
  const std::vector<double>& weights() const { return w_; }
  double mass() const;

 private:
  std::vector<double> w_;
};

/// D_alpha(p||q) = sgn(alpha)/(alpha-1) log sum_i p_i^alpha q_i^{1-alpha},
/// with the support conventions 0/0 = 0 and a/0 = inf. The closed forms:
///   D_0 = -log sum_{i: p_i != 0} q_i,   D_1 = sum p_i log(p_i/q_i),
///   D_inf = log max_i p_i/q_i,          D_{-inf}(p||q) := D_inf(q||p).
/// The first argument may be sub-normalized.
ExtendedReal divergence(std::span<const double> p, std::span<const double> q, Alpha a);
ExtendedReal divergence(const ProbDist& p, const ProbDist& q, Alpha a);
ExtendedReal divergence(const SubNormalizedDist& p, const ProbDist& q, Alpha a);

namespace detail {
/// lim_{alpha -> -inf} D_alpha(p||q) = D_inf(q||p); +inf when p has a zero
/// against q's support (then every negative-alpha value is already +inf).
ExtendedReal divergence_limit_neg_inf(std::span<const double> p, std::span<const double> q);
}  // namespace detail

/// H_alpha(p) = sgn(alpha)/(1-alpha) log sum_i p_i^alpha, with
///   H_0 = log rank(p), H_1 Shannon, H_inf = -log p_max, H_{-inf} = log p_min.
/// For alpha < 0 any zero weight gives -inf.
ExtendedReal entropy(std::span<const double> p, Alpha a);
ExtendedReal entropy(const ProbDist& p, Alpha a);

/// Both sides of alpha sgn(1-alpha) D_{1-alpha}(p||q) =
/// (1-alpha) sgn(alpha) D_alpha(q||p); rejects alpha in {0, 1}.
std::pair<ExtendedReal, ExtendedReal> symmetry_check(const ProbDist& p,
                                                     const ProbDist& q, Alpha a);

struct SmoothResult {
  SubNormalizedDist dist;
  ExtendedReal value;
};

/// Cuts the ascending-sorted tail of cumulative mass <= eps; value is H_0 of
/// what is left.
SmoothResult smooth_h0(const ProbDist& p, double eps);

/// Levels the largest entries down to a common ceiling c (never below the
/// smallest entry), removing total mass at most eps; value is -log c.
SmoothResult smooth_hinf(const ProbDist& p, double eps);

/// Caps likelihood ratios at delta, with delta tuned by bisection so that the
/// removed mass equals eps; value is D_inf(p'||q) = log delta. Requires
/// supp(p) within supp(q).
SmoothResult smooth_d_inf(const ProbDist& p, const ProbDist& q, double eps);

/// Cuts the ascending-likelihood-ratio prefix of p-mass <= eps; value is
/// D_0(p'||q) of what is left.
SmoothResult smooth_d0(const ProbDist& p, const ProbDist& q, double eps);

/// The alpha grid used by property tests and the transition checkers:
/// {-8,-4,-2,-1,-0.5, 0, 0.25, 0.5, 0.75, 1, 1.5, 2, 4, 8} plus 20 uniform
/// points in [0,2]; negative part included on request. Infinite endpoints are
/// handled by closed forms, not by the grid.
std::vector<double> alpha_grid(bool include_negative);

}  // namespace tmon
