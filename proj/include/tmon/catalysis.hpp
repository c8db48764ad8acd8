#pragma once

// Trumping checks, explicit catalyst constructions (Jonathan-Plenio witness
// search, the tensor catalyst, the 1/j embezzler), randomized catalyst
// search, and the regime classifier for approximately cyclic processes.

#include <cstdint>
#include <optional>

#include "tmon/core.hpp"
#include "tmon/majorize.hpp"
#include "tmon/secondlaws.hpp"

namespace tmon {

/// A working body returned (approximately) unchanged; the trivial-Hamiltonian
/// case carries all-zero levels.
struct Catalyst {
  ProbDist state;
  Hamiltonian hamiltonian;
};

enum class Regime { kExact, kWorkEps, kExtensiveError, kEmbezzling, kNone };

struct RegimeReport {
  ExtendedReal work_to_restore;  // energy needed to restore the catalyst
  double trace_distance = 0.0;   // statistical distance in - out
  int dim = 0;
  Regime regime = Regime::kNone;
};

/// Catalytic-majorization check: delegates to check_transition with a trivial
/// Hamiltonian (uniform Gibbs state); inputs are zero-padded to a common
/// dimension first.
TransitionReport trump_check(const ProbDist& x, const ProbDist& y, CheckMode mode);

/// True iff the thermo-curve of p (x) c lies above that of p' (x) c, with
/// product Hamiltonians (energies add). Plain exact majorization when both
/// Hamiltonians are trivial and the states rational.
bool verify_catalyst(const ProbDist& p, const ProbDist& p_prime, const Catalyst& c,
                     const Hamiltonian& h, const ThermalContext& ctx,
                     double tol = kDefaultTol);

struct SearchResult {
  bool found = false;
  std::optional<Catalyst> catalyst;
  int attempts = 0;
};

/// Randomized trivial-Hamiltonian catalyst search: dimension-1 first, then
/// per dimension 2..max_dim the known two-level witnesses followed by
/// Dirichlet(1,...,1) samples. Deterministic under seed.
SearchResult search_catalyst(const ProbDist& p, const ProbDist& p_prime,
                             const Hamiltonian& h, const ThermalContext& ctx,
                             int max_dim, int samples, std::uint64_t seed);

/// omega = [p^(n-1) (+) p^(n-2) q (+) ... (+) q^(n-1)] / n, dimension
/// n d^{n-1}; throws if that exceeds 10^6.
Catalyst tensor_catalyst(const ProbDist& p, const ProbDist& q, int n);

/// The normalized 1/j distribution of dimension n.
Catalyst embezzler(int n);

struct EmbezzleResult {
  ProbDist final_catalyst;  // catalyst marginal after the reordering + erase
  double trace_dist;        // || final - embezzler(n) ||_1  (full L1)
  double fidelity;          // sum_j sqrt(final_j emb_j) >= 1 - trace_dist / 2
};

/// Erases a uniform m-level register against the embezzler: sorts the joint
/// spectrum descending, aligns the top n values with the catalyst-and-|0>
/// levels (the remaining values filling the other system levels in order),
/// then erases by summing each catalyst block.
EmbezzleResult embezzle_erase(int m, int n);

/// Labels the strongest approximately-cyclic regime whose bound holds:
/// exact equality, work-to-restore <= eps, trace distance <= eps / log N,
/// trace distance <= eps (embezzling); kNone when even that fails.
RegimeReport classify_regime(const ProbDist& c_in, const ProbDist& c_out,
                             const Hamiltonian& h_c, const ThermalContext& ctx,
                             double eps);

}  // namespace tmon
