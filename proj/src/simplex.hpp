#pragma once

// Self-contained dense two-phase simplex on equality-form programs
//   min c.x   s.t.  A x = b,  x >= 0.
// Entering column by Dantzig pricing with a permanent switch to Bland's rule
// after a stall, which keeps the solver cycle-free; the ratio test always
// breaks ties by smallest basis index. Instantiated with double (tolerance
// 1e-9) and with exact rationals (tolerance 0).

#include <algorithm>
#include <vector>

namespace tmon::detail {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<T> x;
  T objective = T(0);
};

template <class T>
class SimplexSolver {
 public:
  SimplexSolver(int m, int n, std::vector<T> a, std::vector<T> b, std::vector<T> c,
                T tol)
      : m_(m), n_(n), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), tol_(tol) {}

  LpResult<T> solve(int max_iters = 0) {
    if (max_iters <= 0) max_iters = 200 * (m_ + n_) + 5000;
    build_phase1();
    LpResult<T> res;
    if (!iterate(max_iters)) {
      res.status = LpStatus::kIterationLimit;
      return res;
    }
    if (objective() > tol_) {
      res.status = LpStatus::kInfeasible;
      res.objective = objective();
      return res;
    }
    drive_out_artificials();
    load_costs_phase2();
    if (!iterate(max_iters)) {
      res.status = LpStatus::kIterationLimit;
      return res;
    }
    if (unbounded_) {
      res.status = LpStatus::kUnbounded;
      return res;
    }
    res.status = LpStatus::kOptimal;
    res.x.assign(static_cast<size_t>(n_), T(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<size_t>(i)] < n_)
        res.x[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = rhs(i);
    res.objective = objective();
    return res;
  }

 private:
  int m_, n_;
  std::vector<T> a_, b_, c_;
  T tol_;
  int width_ = 0;  // n_ + m_ artificials + 1 rhs column
  std::vector<T> t_;  // (m_+1) x width_ tableau, cost row last
  std::vector<int> basis_;
  bool phase2_ = false;
  bool unbounded_ = false;
  bool bland_ = false;

  T& at(int r, int col) { return t_[static_cast<size_t>(r) * width_ + col]; }
  const T& at(int r, int col) const { return t_[static_cast<size_t>(r) * width_ + col]; }
  T rhs(int r) const { return at(r, width_ - 1); }
  T objective() const { return -at(m_, width_ - 1); }

  void build_phase1() {
    width_ = n_ + m_ + 1;
    t_.assign(static_cast<size_t>(m_ + 1) * width_, T(0));
    basis_.resize(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      bool flip = b_[static_cast<size_t>(i)] < T(0);
      for (int j = 0; j < n_; ++j) {
        T v = a_[static_cast<size_t>(i) * n_ + j];
        at(i, j) = flip ? -v : v;
      }
      at(i, n_ + i) = T(1);
      at(i, width_ - 1) = flip ? -b_[static_cast<size_t>(i)] : b_[static_cast<size_t>(i)];
      basis_[static_cast<size_t>(i)] = n_ + i;
    }
    // phase-1 reduced costs: cost 1 on artificials, eliminated against basis
    for (int j = 0; j < width_; ++j) {
      T s(0);
      for (int i = 0; i < m_; ++i) s += at(i, j);
      at(m_, j) = (j >= n_ && j < n_ + m_ ? T(1) : T(0)) - s;
    }
    phase2_ = false;
    bland_ = false;
  }

  void load_costs_phase2() {
    for (int j = 0; j < width_; ++j) {
      T r = (j < n_) ? c_[static_cast<size_t>(j)] : T(0);
      for (int i = 0; i < m_; ++i) {
        int bj = basis_[static_cast<size_t>(i)];
        if (bj < n_) r -= c_[static_cast<size_t>(bj)] * at(i, j);
      }
      at(m_, j) = r;
    }
    // rhs column now carries minus the phase-2 objective value
    phase2_ = true;
    bland_ = false;
    unbounded_ = false;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j) {
        if (abs_of(at(i, j)) > tol_) {
          col = j;
          break;
        }
      }
      if (col >= 0) pivot(i, col);
      // a fully-zero row is a redundant constraint; its artificial stays basic
      // at value zero and is never eligible to grow
    }
  }

  static T abs_of(const T& v) { return v < T(0) ? -v : v; }

  bool iterate(int max_iters) {
    T last = objective();
    int stall = 0;
    for (int it = 0; it < max_iters; ++it) {
      int col = pick_entering();
      if (col < 0) return true;  // optimal
      int row = pick_leaving(col);
      if (row < 0) {
        unbounded_ = true;
        return true;
      }
      pivot(row, col);
      T cur = objective();
      if (cur < last - tol_) {
        stall = 0;
        last = cur;
      } else if (++stall > 100) {
        bland_ = true;
      }
    }
    return false;
  }

  int pick_entering() const {
    int limit = phase2_ ? n_ : n_ + m_;  // artificials never re-enter in phase 2
    if (bland_) {
      for (int j = 0; j < limit; ++j)
        if (at(m_, j) < -tol_) return j;
      return -1;
    }
    int best = -1;
    T bestv = -tol_;
    for (int j = 0; j < limit; ++j)
      if (at(m_, j) < bestv) {
        bestv = at(m_, j);
        best = j;
      }
    return best;
  }

  int pick_leaving(int col) const {
    int best = -1;
    T best_ratio(0);
    for (int i = 0; i < m_; ++i) {
      if (at(i, col) <= tol_) continue;
      T ratio = rhs(i) / at(i, col);
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio &&
           basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(best)])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(int row, int col) {
    T piv = at(row, col);
    for (int j = 0; j < width_; ++j) at(row, j) /= piv;
    at(row, col) = T(1);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      T f = at(i, col);
      if (f == T(0)) continue;
      for (int j = 0; j < width_; ++j) at(i, j) -= f * at(row, j);
      at(i, col) = T(0);
    }
    basis_[static_cast<size_t>(row)] = col;
  }
};

template <class T>
LpResult<T> solve_lp(int m, int n, std::vector<T> a, std::vector<T> b, std::vector<T> c,
                     T tol, int max_iters = 0) {
  SimplexSolver<T> s(m, n, std::move(a), std::move(b), std::move(c), tol);
  return s.solve(max_iters);
}

}  // namespace tmon::detail
