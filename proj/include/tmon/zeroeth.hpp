#pragma once

// Passivity and complete passivity (the zeroeth law), population-inversion
// work extraction and its Hoeffding-bounded many-copy Monte Carlo.

#include <cstdint>
#include <optional>
#include <utility>

#include "tmon/core.hpp"

namespace tmon {

struct PassivityReport {
  bool passive = true;
  std::optional<std::pair<int, int>> witness;  // (i, j) with E_i > E_j, p_i > p_j
  int n_checked = 0;
};

/// Scans all level pairs; the first violating pair becomes the witness.
PassivityReport is_passive(const ProbDist& p, const Hamiltonian& h,
                           double tol = 1e-12);

/// Checks passivity of p^(x n) (energies adding) for n = 1..n_max; the
/// criterion quantifies over all n, so a passing report only claims
/// "passive up to n_checked".
PassivityReport is_completely_passive(const ProbDist& p, const Hamiltonian& h,
                                      int n_max);

struct ExtractionStats {
  double mean_work;       // per copy
  double empirical_tail;  // fraction of trials with x_T <= <x_T> - alpha m
  double hoeffding_bound; // exp(-alpha^2 m / 2)
  int trials;
};

/// Samples `trials` batches of m population-inversion outcomes (+1 w.p. p_i,
/// -1 w.p. p_j, 0 otherwise), work x_T (E_i - E_j) per batch. Requires
/// E_i > E_j and p_i > p_j. Deterministic per seed.
ExtractionStats extraction_simulation(const ProbDist& p, const Hamiltonian& h, int i,
                                      int j, int m, double alpha, int trials,
                                      std::uint64_t seed);

}  // namespace tmon
