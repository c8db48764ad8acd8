#include "tmon/work.hpp"

#include <algorithm>
#include <cmath>

namespace tmon {

ExtendedReal work_distance(const ProbDist& p, const ProbDist& p_prime,
                           const Hamiltonian& h, const ThermalContext& ctx) {
  GapScan scan = scan_free_energy_gap(p, h, p_prime, h, ctx, false);
  return scan.min_gap;
}

double w_ext(const ProbDist& p, const Hamiltonian& h, const ThermalContext& ctx) {
  ProbDist g = gibbs_state(h, ctx);
  return ctx.kT() * divergence(p, g, Alpha(0.0)).value();
}

double w_cost(const ProbDist& p, const Hamiltonian& h, const ThermalContext& ctx) {
  ProbDist g = gibbs_state(h, ctx);
  return ctx.kT() * divergence(p, g, Alpha::inf()).value();
}

ExtendedReal erasure_work(const ProbDist& joint, int d_q, int d_s) {
  if (d_q < 1 || d_s < 1 || joint.dim() != d_q * d_s)
    throw std::invalid_argument("erasure_work: dimensions do not factor the joint");
  std::vector<double> marg(static_cast<size_t>(d_q), 0.0);
  for (int iq = 0; iq < d_q; ++iq)
    for (int is = 0; is < d_s; ++is) marg[static_cast<size_t>(iq)] += joint[iq * d_s + is];
  ProbDist q(std::move(marg), 1e-6);
  // H_a(joint) - H_a(q) = [F_a(q, trivial) - F_a(joint, trivial)] / kT with
  // trivial Hamiltonians on the respective spaces
  ThermalContext unit = make_context(1.0);
  GapScan scan = scan_free_energy_gap(q, Hamiltonian::trivial(d_q), joint,
                                      Hamiltonian::trivial(joint.dim()), unit, false);
  return scan.min_gap;
}

double landauer_bound(const LandauerBattery& b, const ThermalContext& ctx) {
  if (b.lambda1 < 0 || b.lambda1 > b.n_qubits || b.lambda2 < 0 || b.lambda2 > b.n_qubits)
    throw std::invalid_argument("landauer_bound: lambda out of range");
  return ctx.kT() * std::log(2.0) * (b.lambda1 - b.lambda2);
}

namespace {

/// |0><0| ox 2^{-lambda} I on n qubits, as a distribution.
ProbDist purity_battery_state(int n_qubits, int lambda) {
  int dim = 1 << n_qubits;
  int mixed = 1 << lambda;
  std::vector<Rational> w(static_cast<size_t>(dim), Rational(0));
  for (int i = 0; i < mixed; ++i) w[static_cast<size_t>(i)] = Rational(1, mixed);
  return ProbDist(std::move(w));
}

}  // namespace

bool battery_equivalence_check(const ProbDist& p, const ProbDist& p_prime,
                               const Hamiltonian& h, const ThermalContext& ctx) {
  ExtendedReal wd = work_distance(p, p_prime, h, ctx);
  if (!wd.finite()) return false;
  const double quantum = ctx.kT() * std::log(2.0);
  const int best = static_cast<int>(std::floor(wd.value() / quantum + 1e-9));

  auto feasible_with_gain = [&](int lambda) {
    // net gain lambda = lambda1 - lambda2 pure qubits
    int l1 = std::max(lambda, 0), l2 = std::max(-lambda, 0);
    int n = std::max({l1, l2, 1});
    ProbDist wi = purity_battery_state(n, l1);
    ProbDist wf = purity_battery_state(n, l2);
    Hamiltonian hb = tensor_sum(h, Hamiltonian::trivial(1 << n));
    TransitionReport r = check_transition(tensor(p, wi), tensor(p_prime, wf), hb, ctx,
                                          CheckMode::kNonnegAlpha);
    return r.verdict == Verdict::kFeasible;
  };

  if (!feasible_with_gain(best)) return false;
  if (feasible_with_gain(best + 1)) return false;
  // the bound never exceeds the work distance and sits within one quantum
  int n = std::max(std::abs(best), 1);
  return landauer_bound({n, std::max(best, 0), std::max(-best, 0)}, ctx) <=
             wd.value() + 1e-9 &&
         wd.value() - best * quantum < quantum + 1e-9;
}

TransitionReport wit_transition_check(const ProbDist& p, const ProbDist& p_prime,
                                      const Hamiltonian& h, const ThermalContext& ctx,
                                      double w, double tol) {
  WitSpec wit{w};
  Hamiltonian joint = tensor_sum(h, wit.hamiltonian());
  ProbDist in = tensor(p, ProbDist::pure(2, 0));
  ProbDist out = tensor(p_prime, ProbDist::pure(2, 1));
  return check_transition(in, out, joint, ctx, CheckMode::kNonnegAlpha, tol);
}

}  // namespace tmon
