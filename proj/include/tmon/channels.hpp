#pragma once

// Classical stochastic channels, the embedding maps Gamma/Gamma*, the
// rational-approximation channel, the direct-sum decomposition check, and the
// LP oracles that ground-truth the transformation criteria at small dimension.

#include <optional>
#include <vector>

#include "tmon/core.hpp"

namespace tmon {

/// Thrown when an LP backend fails (iteration limit, numerical breakdown);
/// distinct from a certified infeasibility verdict.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Column-stochastic transition matrix; entry (j, i) is P(i -> j).
class StochasticMatrix {
 public:
  StochasticMatrix(int rows, int cols);
  static StochasticMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int j, int i) const { return a_[static_cast<size_t>(j) * cols_ + i]; }
  double& at(int j, int i) { return a_[static_cast<size_t>(j) * cols_ + i]; }

  /// Throws unless all entries are >= -tol and every column sums to 1 +- tol.
  void validate(double tol = kDefaultTol) const;
  /// Clips negatives and rescales each column to sum exactly 1.
  void renormalize_columns();

 private:
  int rows_, cols_;
  std::vector<double> a_;
};

ProbDist apply(const StochasticMatrix& m, const ProbDist& p);

/// Block sizes d_i of the embedding Gamma(p) = (+)_i p_i eta_{d_i}.
struct EmbeddingSpec {
  std::vector<int> block_sizes;
  explicit EmbeddingSpec(std::vector<int> d);
  int total() const;
  int dim() const { return static_cast<int>(block_sizes.size()); }
  /// gamma = (d_1/N, ..., d_k/N), the state Gamma maps to the uniform one.
  ProbDist gamma() const;
};

/// Spreads p_i uniformly over d_i fine-grained copies.
ProbDist embed(const EmbeddingSpec& spec, const ProbDist& p);
/// Sums each block back; unembed(embed(p)) = p, exactly in rational mode.
ProbDist unembed(const EmbeddingSpec& spec, const ProbDist& p_fine);

struct RationalApproxResult {
  ProbDist q_tilde;
  StochasticMatrix channel;
};

/// Rounds a descending full-rank q up to the grid of denominators N (last
/// entry balancing) and builds the exact channel mapping q to the rounded
/// version: identity on the first k-1 indices, leakage Delta_j / q_k out of
/// the last. Requires q_min > k / sqrt(N).
RationalApproxResult rational_approx_channel(const ProbDist& q, long n_grid);

/// For a channel preserving a full-rank w and mapping t to t' (both supported
/// on the first `split` indices), decides block-diagonality of the matrix.
/// Precondition violations throw.
bool check_direct_sum(const StochasticMatrix& m, int split, const ProbDist& w,
                      const ProbDist& t, const ProbDist& t_prime,
                      double tol = 1e-8);

struct DMajResult {
  bool feasible;
  std::optional<StochasticMatrix> witness;
};

/// Feasibility of a single channel with L(p) = p' and L(q) = q', decided by a
/// phase-1 simplex at tolerance 1e-8. `exact` switches to rational pivoting
/// (intended for small instances).
DMajResult lp_dmajorization(const ProbDist& p, const ProbDist& q,
                            const ProbDist& p_prime, const ProbDist& q_prime,
                            bool exact = false);

struct NearestImageResult {
  ProbDist image;
  double l1_dist;
  StochasticMatrix witness;
};

/// Minimizes ||L(p) - target||_1 over stochastic L with L(fixed) = fixed.
/// With a uniform fixed point the program is solved in sorted coordinates
/// (prefix-sum form), which scales to a few hundred dimensions; the witness is
/// assembled from T-transforms. General fixed points use the
/// positive-part-breakpoint formulation and are limited to small dimensions.
NearestImageResult lp_nearest_image(const ProbDist& p, const ProbDist& target,
                                    const ProbDist& fixed);

}  // namespace tmon
