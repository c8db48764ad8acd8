#pragma once

// Work accounting: the two-level wit battery, work distance, extractable work
// and work of formation, Landauer erasure with a memory, and the purity
// battery equivalence.

#include "tmon/core.hpp"
#include "tmon/secondlaws.hpp"

namespace tmon {

/// Two-level battery with energies (0, w); tau is its thermal state.
struct WitSpec {
  double w;
  Hamiltonian hamiltonian() const { return Hamiltonian({0.0, w}); }
  ProbDist tau(const ThermalContext& ctx) const {
    return gibbs_state(hamiltonian(), ctx);
  }
};

/// inf over alpha > 0 of [F_alpha(p) - F_alpha(p')]; energy units. The
/// alpha -> 0+ limit enters through the D_0 closed form.
ExtendedReal work_distance(const ProbDist& p, const ProbDist& p_prime,
                           const Hamiltonian& h, const ThermalContext& ctx);

/// kT D_0(p || gibbs): deterministic extractable work.
double w_ext(const ProbDist& p, const Hamiltonian& h, const ThermalContext& ctx);
/// kT D_inf(p || gibbs): deterministic work of formation.
double w_cost(const ProbDist& p, const Hamiltonian& h, const ThermalContext& ctx);

/// inf over alpha >= 0 of [H_alpha(joint) - H_alpha(marginal over the first
/// factor)] for a trivial Hamiltonian, in nats (multiply by kT for energy).
/// Negative values mean the reset gains work. Index convention: joint index
/// = iq * d_s + is.
ExtendedReal erasure_work(const ProbDist& joint, int d_q, int d_s);

/// n-qubit purity battery: lambda mixed qubits before/after.
struct LandauerBattery {
  int n_qubits;
  int lambda1;
  int lambda2;
};

/// kT ln2 (lambda1 - lambda2), the free-energy step of the purity battery.
double landauer_bound(const LandauerBattery& b, const ThermalContext& ctx);

/// Checks that the best integer purity-battery bound never exceeds the work
/// distance and matches it within one quantum kT ln 2, by sweeping battery
/// transitions through check_transition.
bool battery_equivalence_check(const ProbDist& p, const ProbDist& p_prime,
                               const Hamiltonian& h, const ThermalContext& ctx);

/// Appends the wit in |0> to the input and |W> to the output and delegates to
/// check_transition over alpha >= 0; equivalent to gap(alpha) >= W.
TransitionReport wit_transition_check(const ProbDist& p, const ProbDist& p_prime,
                                      const Hamiltonian& h, const ThermalContext& ctx,
                                      double w, double tol = kDefaultTol);

}  // namespace tmon
