#pragma once

// Generalized free energies F_alpha and the feasibility checkers embodying
// the monotone family: exact catalysis over all real alpha, the borrowed-
// pure-qubit regime over alpha >= 0, changing Hamiltonians via the switch
// construction, and the smoothing-based two-condition sufficient check.

#include <optional>
#include <vector>

#include "tmon/core.hpp"
#include "tmon/renyi.hpp"

namespace tmon {

enum class Verdict { kFeasible, kInfeasible, kSufficientPass, kInconclusive };

struct AlphaSample {
  double alpha;  // +-HUGE_VAL for the limit points
  ExtendedReal gap;
};

struct TransitionReport {
  Verdict verdict;
  double worst_alpha = 0.0;
  ExtendedReal margin;  // minimum free-energy gap, energy units
  bool marginal = false;
  std::vector<AlphaSample> samples;
};

enum class CheckMode { kExactAllAlpha, kNonnegAlpha };

/// F_alpha(p, H) = -kT ln Z + kT D_alpha(p || gibbs), in energy units.
/// Thermal states and pure eigenstates make every member equal the standard
/// free energy.
ExtendedReal free_energy(const ProbDist& p, const Hamiltonian& h,
                         const ThermalContext& ctx, Alpha a);

struct GapScan {
  ExtendedReal min_gap;
  double worst_alpha = 0.0;
  std::vector<AlphaSample> samples;
};

/// Minimum over the alpha family of F_alpha(p, h0) - F_alpha(p', h1),
/// evaluated by closed forms at {0, 1, +inf} (and the alpha -> -inf limit
/// when the negative axis is included), the design grid, and golden-section
/// refinement of interior local minima to alpha-tolerance 1e-6. The cumulant
/// log sum p^a g^{1-a} is convex in alpha, so grid cells bracket the minima.
/// `clamp` restricts the scan to a closed alpha interval.
GapScan scan_free_energy_gap(
    const ProbDist& p, const Hamiltonian& h0, const ProbDist& p_prime,
    const Hamiltonian& h1, const ThermalContext& ctx, bool include_negative,
    std::optional<std::pair<double, double>> clamp = std::nullopt);

/// The second-laws decision: feasible iff the free-energy gap is >= -tol over
/// the whole checked family. kExactAllAlpha scans all real alpha (catalyst
/// returned exactly); kNonnegAlpha scans alpha >= 0 (borrowed pure qubit).
TransitionReport check_transition(const ProbDist& p, const ProbDist& p_prime,
                                  const Hamiltonian& h, const ThermalContext& ctx,
                                  CheckMode mode, double tol = kDefaultTol);

/// Same decision across a Hamiltonian change H0 -> H1 through the switch-bit
/// construction: compares F_alpha(p, H0) against F_alpha(p', H1).
TransitionReport check_switch_hamiltonian(const ProbDist& p, const Hamiltonian& h0,
                                          const ProbDist& p_prime, const Hamiltonian& h1,
                                          const ThermalContext& ctx, CheckMode mode,
                                          double tol = kDefaultTol);

/// One-directional sufficient check from the smoothing lemmas. The two
/// endpoint conditions carry their correction terms pinned at the band edges
/// alpha = 1/2 and alpha = 2 (so they rigorously cover [0,1/2] and [2,inf]),
/// and the remaining band [1/2,2] is scanned directly. Never reports
/// infeasible.
TransitionReport two_condition_check(const ProbDist& p, const ProbDist& p_prime,
                                     const Hamiltonian& h, const ThermalContext& ctx,
                                     double eps, double tol = kDefaultTol);

}  // namespace tmon
