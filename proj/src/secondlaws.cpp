#include "tmon/secondlaws.hpp"

#include <algorithm>
#include <cmath>

namespace tmon {

namespace {

constexpr double kAlphaTol = 1e-6;
constexpr double kTaylorBand = 1e-6;

/// D_alpha(p||q) with a second-order bridge across the removable singularity
/// at alpha = 1 (the direct formula loses precision to cancellation there).
ExtendedReal divergence_smooth(std::span<const double> p, std::span<const double> q,
                               double alpha) {
  if (std::isinf(alpha))
    return alpha > 0 ? divergence(p, q, Alpha::inf())
                     : detail::divergence_limit_neg_inf(p, q);
  if (alpha != 1.0 && std::abs(alpha - 1.0) < kTaylorBand) {
    ExtendedReal d1 = divergence(p, q, Alpha(1.0));
    if (d1.finite()) {
      double var = 0.0;
      for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        double l = std::log(p[i]) - std::log(q[i]);
        var += p[i] * l * l;
      }
      var -= d1.value() * d1.value();
      return d1.value() + 0.5 * (alpha - 1.0) * var;
    }
    // supports incompatible: D_1 = +inf; alpha > 1 shares the divergence,
    // just below 1 the direct formula is well conditioned
    if (alpha > 1.0) return ExtendedReal::infinity();
  }
  return divergence(p, q, Alpha(alpha));
}

struct GapEvaluator {
  std::span<const double> p, g0, pp, g1;
  double kt;
  double offset;  // kT (ln Z1 - ln Z0)

  ExtendedReal operator()(double alpha) const {
    ExtendedReal da = divergence_smooth(p, g0, alpha);
    ExtendedReal db = divergence_smooth(pp, g1, alpha);
    // the family condition D_a(p) >= D_a(p') is satisfied whenever the left
    // side diverges, so inf - inf resolves to +inf here
    if (da.is_pos_inf()) return ExtendedReal::infinity();
    if (db.is_pos_inf()) return ExtendedReal::neg_infinity();
    return kt * (da.value() - db.value()) + offset;
  }
};

double golden_refine(const GapEvaluator& f, double a, double b, double fa_mid_hint) {
  (void)fa_mid_hint;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1).value(), f2 = f(x2).value();
  while (b - a > kAlphaTol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1).value();
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2).value();
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ExtendedReal free_energy(const ProbDist& p, const Hamiltonian& h,
                         const ThermalContext& ctx, Alpha a) {
  if (p.dim() != h.dim()) throw std::invalid_argument("free_energy: dimension mismatch");
  ProbDist g = gibbs_state(h, ctx);
  double kt = ctx.kT();
  ExtendedReal d = divergence(p, g, a);
  if (d.is_pos_inf()) return ExtendedReal::infinity();
  return -kt * log_partition_function(h, ctx) + kt * d.value();
}

GapScan scan_free_energy_gap(const ProbDist& p, const Hamiltonian& h0,
                             const ProbDist& p_prime, const Hamiltonian& h1,
                             const ThermalContext& ctx, bool include_negative,
                             std::optional<std::pair<double, double>> clamp) {
  if (p.dim() != h0.dim() || p_prime.dim() != h1.dim())
    throw std::invalid_argument("scan_free_energy_gap: dimension mismatch");
  ProbDist g0 = gibbs_state(h0, ctx);
  ProbDist g1 = gibbs_state(h1, ctx);
  double kt = ctx.kT();
  GapEvaluator eval{p.span(),
                    std::span<const double>(g0.weights()),
                    p_prime.span(),
                    std::span<const double>(g1.weights()),
                    kt,
                    kt * (log_partition_function(h1, ctx) - log_partition_function(h0, ctx))};

  std::vector<double> grid = alpha_grid(include_negative);
  for (double a : {16.0, 32.0, 64.0, 128.0, 256.0}) grid.push_back(a);
  if (include_negative)
    for (double a : {-16.0, -32.0, -64.0}) grid.push_back(a);
  double lo = include_negative ? -HUGE_VAL : 0.0;
  double hi = HUGE_VAL;
  if (clamp) {
    lo = std::max(lo, clamp->first);
    hi = std::min(hi, clamp->second);
    grid.push_back(clamp->first);
    grid.push_back(clamp->second);
  }
  std::erase_if(grid, [&](double a) { return a < lo || a > hi; });
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  GapScan scan;
  scan.min_gap = ExtendedReal::infinity();
  auto consider = [&](double alpha, ExtendedReal gap) {
    if (gap < scan.min_gap) {
      scan.min_gap = gap;
      scan.worst_alpha = alpha;
    }
  };

  std::vector<ExtendedReal> vals;
  vals.reserve(grid.size());
  for (double a : grid) {
    ExtendedReal gap = eval(a);
    vals.push_back(gap);
    scan.samples.push_back({a, gap});
    consider(a, gap);
  }
  // limit points
  if (hi == HUGE_VAL) {
    ExtendedReal gap = eval(HUGE_VAL);
    scan.samples.push_back({HUGE_VAL, gap});
    consider(HUGE_VAL, gap);
  }
  if (include_negative && lo == -HUGE_VAL) {
    ExtendedReal gap = eval(-HUGE_VAL);
    scan.samples.push_back({-HUGE_VAL, gap});
    consider(-HUGE_VAL, gap);
  }
  // golden-section refinement of interior local minima over finite brackets
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!vals[i].finite() || !vals[i - 1].finite() || !vals[i + 1].finite()) continue;
    if (vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1]) {
      double a_star = golden_refine(eval, grid[i - 1], grid[i + 1], vals[i].value());
      ExtendedReal gap = eval(a_star);
      consider(a_star, gap);
    }
  }
  return scan;
}

namespace {

TransitionReport report_from_scan(GapScan scan, double tol) {
  TransitionReport r;
  r.worst_alpha = scan.worst_alpha;
  r.margin = scan.min_gap;
  r.samples = std::move(scan.samples);
  r.marginal = scan.min_gap.finite() && std::abs(scan.min_gap.value()) < tol;
  r.verdict = (scan.min_gap >= ExtendedReal(-tol)) ? Verdict::kFeasible : Verdict::kInfeasible;
  return r;
}

}  // namespace

TransitionReport check_transition(const ProbDist& p, const ProbDist& p_prime,
                                  const Hamiltonian& h, const ThermalContext& ctx,
                                  CheckMode mode, double tol) {
  GapScan scan = scan_free_energy_gap(p, h, p_prime, h, ctx,
                                      mode == CheckMode::kExactAllAlpha);
  return report_from_scan(std::move(scan), tol);
}

TransitionReport check_switch_hamiltonian(const ProbDist& p, const Hamiltonian& h0,
                                          const ProbDist& p_prime, const Hamiltonian& h1,
                                          const ThermalContext& ctx, CheckMode mode,
                                          double tol) {
  GapScan scan = scan_free_energy_gap(p, h0, p_prime, h1, ctx,
                                      mode == CheckMode::kExactAllAlpha);
  return report_from_scan(std::move(scan), tol);
}

TransitionReport two_condition_check(const ProbDist& p, const ProbDist& p_prime,
                                     const Hamiltonian& h, const ThermalContext& ctx,
                                     double eps, double tol) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("two_condition_check: eps out of (0,1)");
  ProbDist g = gibbs_state(h, ctx);
  const double kt = ctx.kT();
  const double corr = std::log(1.0 / eps);

  // alpha >= 2: D_a(p||g) >= D_inf(smoothed p||g) - corr/(a-1) >= the target's
  // D_inf, provided the smoothed condition holds with margin corr
  SmoothResult sp = smooth_d_inf(p, g, eps);
  ExtendedReal dinf_target = divergence(p_prime, g, Alpha::inf());
  double hi_margin;
  if (dinf_target.is_pos_inf()) {
    hi_margin = -HUGE_VAL;
  } else {
    hi_margin = sp.value.value() - dinf_target.value() - corr;
  }

  // alpha <= 1/2: D_a(p||g) >= D_0(p||g) and the target is bounded by its
  // smoothed D_0 plus corr/(1-a) <= 2 corr
  SmoothResult st = smooth_d0(p_prime, g, eps);
  ExtendedReal d0_p = divergence(p, g, Alpha(0.0));
  double lo_margin = d0_p.value() - st.value.value() - 2.0 * corr;

  // the band [1/2, 2] is scanned directly
  GapScan band = scan_free_energy_gap(p, h, p_prime, h, ctx, false,
                                      std::make_pair(0.5, 2.0));

  TransitionReport r;
  r.samples = band.samples;
  ExtendedReal margin = ExtendedReal(kt * std::min(hi_margin, lo_margin));
  if (band.min_gap < margin) {
    margin = band.min_gap;
    r.worst_alpha = band.worst_alpha;
  } else {
    r.worst_alpha = hi_margin < lo_margin ? HUGE_VAL : 0.0;
  }
  r.margin = margin;
  r.marginal = margin.finite() && std::abs(margin.value()) < tol;
  r.verdict = (margin >= ExtendedReal(-tol)) ? Verdict::kSufficientPass : Verdict::kInconclusive;
  return r;
}

}  // namespace tmon
