#pragma once

// Majorization, thermo-majorization curves (beta-ordered Lorenz curves),
// curve comparison and the horizontal work rescaling.

#include <optional>
#include <vector>

#include "tmon/core.hpp"

namespace tmon {

/// Piecewise-linear concave curve through breakpoints
/// (sum e^{-beta E}, sum p) accumulated in beta-order, from (0,0) to (Z,1).
/// When built from rational weights and a trivial Hamiltonian the breakpoints
/// are also carried exactly (x steps of 1).
struct ThermoCurve {
  std::vector<double> xs;  // strictly increasing, xs.front() == 0
  std::vector<double> ys;  // non-decreasing,      ys.front() == 0
  std::optional<std::vector<Rational>> exact_xs;
  std::optional<std::vector<Rational>> exact_ys;

  double z() const { return xs.back(); }
  bool exact() const { return exact_xs.has_value(); }

  /// Piecewise-linear interpolation; clamps to the final value beyond Z.
  double value_at(double x) const;
  Rational exact_value_at(const Rational& x) const;
};

/// Classical majorization: all partial sums of the descending rearrangement of
/// x dominate those of y (dimensions zero-padded). Exact when both inputs are
/// rational, tolerance-based otherwise.
bool majorizes(const ProbDist& x, const ProbDist& y, double tol = kDefaultTol);

ThermoCurve thermo_curve(const ProbDist& p, const Hamiltonian& h,
                         const ThermalContext& ctx);

/// True iff curve a lies on or above curve b at every breakpoint of either
/// curve (sufficient by piecewise linearity). Throws if the total x-extents
/// differ beyond tolerance.
bool curve_dominates(const ThermoCurve& a, const ThermoCurve& b,
                     double tol = kDefaultTol);

/// Horizontal rescaling x -> e^{-beta W} x from adding the pure work state.
ThermoCurve scale_curve_by_work(const ThermoCurve& c, double w,
                                const ThermalContext& ctx);

}  // namespace tmon
