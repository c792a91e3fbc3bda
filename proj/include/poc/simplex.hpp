#pragma once

// Dense two-phase tableau simplex for
//
//     min / max  c^T x   s.t.  A x = b,  x >= 0
//
// templated on the scalar. With an exact field (boost mpq_rational) the
// optimum is exact; with double, comparisons use a fixed tolerance.
// Entering/leaving choices follow Bland's smallest-index rule, so the
// method terminates on degenerate problems.

#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace poc::lp {

enum class Sense { Min, Max };

enum class Status { Optimal, Infeasible, Unbounded };

template <class T>
struct SimplexResult {
  Status status = Status::Infeasible;
  T objective{};
  std::vector<T> x;
  std::size_t pivots = 0;
};

template <class T>
struct Tolerances {
  T pivot{};        // |a_ij| must exceed this to pivot on it
  T reduced_cost{};  // entering threshold
  T feasibility{};   // phase-1 optimum above this is infeasible
};

template <class T>
Tolerances<T> default_tolerances() {
  if constexpr (std::is_floating_point_v<T>) {
    return {T(1e-11), T(1e-11), T(1e-9)};
  } else {
    return {T(0), T(0), T(0)};
  }
}

namespace detail {

template <class T>
class Tableau {
 public:
  Tableau(const std::vector<std::vector<T>>& a, const std::vector<T>& b, Tolerances<T> tol)
      : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), width_(n_ + m_ + 1), tol_(tol) {
    cells_.assign((m_ + 1) * width_, T(0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw std::invalid_argument("simplex: ragged constraint matrix");
      const bool flip = b[i] < T(0);
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = flip ? T(-a[i][j]) : a[i][j];
      at(i, n_ + i) = T(1);
      rhs(i) = flip ? T(-b[i]) : b[i];
      basis_[i] = n_ + i;
    }
  }

  // Phase 1: minimize the sum of artificials. Returns false when infeasible.
  bool phase_one() {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = T(0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cost(j) -= at(i, j);
      cost(width_ - 1) -= rhs(i);
    }
    run(n_ + m_);
    // cost(rhs) holds -objective.
    if (-cost(width_ - 1) > tol_.feasibility) return false;
    drive_out_artificials();
    return true;
  }

  // Phase 2 on the original objective (always minimization here).
  Status phase_two(const std::vector<T>& c) {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = T(0);
    for (std::size_t j = 0; j < n_; ++j) cost(j) = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t bj = basis_[i];
      if (bj >= n_) continue;
      const T cb = c[bj];
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j < width_; ++j) cost(j) -= cb * at(i, j);
    }
    return run(n_) ? Status::Optimal : Status::Unbounded;
  }

  T objective() const { return T(-cells_[m_ * width_ + width_ - 1]); }

  std::vector<T> solution() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = cells_[i * width_ + width_ - 1];
    return x;
  }

  std::size_t pivots() const noexcept { return pivots_; }

 private:
  T& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
  T& rhs(std::size_t i) { return cells_[i * width_ + width_ - 1]; }
  T& cost(std::size_t j) { return cells_[m_ * width_ + j]; }

  // Iterates until no column below `limit` has negative reduced cost.
  // Returns false on an unbounded direction.
  bool run(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost(j) < -tol_.reduced_cost) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;

      std::size_t leave = m_;
      T best_ratio{};
      for (std::size_t i = 0; i < m_; ++i) {
        const T& a = at(i, enter);
        if (!(a > tol_.pivot)) continue;
        T ratio = rhs(i) / a;
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    const T inv = T(1) / at(r, c);
    T* row_r = &cells_[r * width_];
    for (std::size_t j = 0; j < width_; ++j) {
      if (row_r[j] != T(0)) row_r[j] *= inv;
    }
    row_r[c] = T(1);
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      T* row_i = &cells_[i * width_];
      const T factor = row_i[c];
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (row_r[j] != T(0)) row_i[j] -= factor * row_r[j];
      }
      row_i[c] = T(0);
    }
    basis_[r] = c;
  }

  // Replaces artificial basics (at level zero after a feasible phase 1)
  // with structural columns; rows with no structural entry are redundant
  // and stay inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const T& a = at(i, j);
        if (a > tol_.pivot || a < -tol_.pivot) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t m_, n_, width_;
  Tolerances<T> tol_;
  std::vector<T> cells_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

template <class T>
SimplexResult<T> simplex_solve(const std::vector<std::vector<T>>& a, const std::vector<T>& b, const std::vector<T>& c,
                               Sense sense, Tolerances<T> tol = default_tolerances<T>()) {
  if (a.size() != b.size()) throw std::invalid_argument("simplex: A and b disagree on row count");
  const std::size_t n = a.empty() ? c.size() : a.front().size();
  if (c.size() != n) throw std::invalid_argument("simplex: objective length mismatch");

  SimplexResult<T> result;
  detail::Tableau<T> tab(a, b, tol);
  if (!tab.phase_one()) {
    result.status = Status::Infeasible;
    result.pivots = tab.pivots();
    return result;
  }
  std::vector<T> cost = c;
  if (sense == Sense::Max)
    for (T& v : cost) v = -v;
  result.status = tab.phase_two(cost);
  result.pivots = tab.pivots();
  if (result.status != Status::Optimal) return result;
  result.objective = tab.objective();
  if (sense == Sense::Max) result.objective = -result.objective;
  result.x = tab.solution();
  return result;
}

}  // namespace poc::lp
