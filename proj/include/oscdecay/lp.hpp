#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oscdecay::lp {

// Dense two-phase tableau simplex with Bland's rule, templated on the
// scalar so the same code runs exactly over Rat and approximately over
// double. Sized for tiny problems (tens of rows/columns).
//
//   minimize c.x   subject to  A x (rel) b,  x >= 0
//
// rel[i] is one of '<', '=', '>' meaning <=, ==, >=.

template <typename T>
struct Tolerance {
  static T value() { return T(0); }  // exact types compare against zero
};

template <>
struct Tolerance<double> {
  static double value() { return 1e-9; }
};

enum class LpStatus { optimal, infeasible, unbounded };

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  T objective{};
  std::vector<T> x;  // structural variables only
};

template <typename T>
class SimplexTableau {
 public:
  SimplexTableau(const std::vector<std::vector<T>>& A, const std::vector<char>& rel,
                 const std::vector<T>& b, const std::vector<T>& c)
      : nrows_(A.size()), nstruct_(c.size()), cost_(c) {
    if (rel.size() != nrows_ || b.size() != nrows_)
      throw std::invalid_argument("lp: inconsistent problem dimensions");
    for (const auto& row : A)
      if (row.size() != nstruct_) throw std::invalid_argument("lp: ragged matrix");

    // Count slack columns; every row also gets an artificial to keep the
    // starting basis uniform (redundant artificials are driven out or left
    // basic at zero).
    std::size_t nslack = 0;
    for (char r : rel)
      if (r == '<' || r == '>') ++nslack;
    ncols_ = nstruct_ + nslack + nrows_;
    art0_ = nstruct_ + nslack;

    tab_.assign(nrows_, std::vector<T>(ncols_ + 1, T(0)));
    basis_.assign(nrows_, 0);
    std::size_t slack = nstruct_;
    for (std::size_t i = 0; i < nrows_; ++i) {
      T sign = (b[i] < T(0)) ? T(-1) : T(1);
      for (std::size_t j = 0; j < nstruct_; ++j) tab_[i][j] = sign * A[i][j];
      tab_[i][ncols_] = sign * b[i];
      if (rel[i] == '<' || rel[i] == '>') {
        tab_[i][slack] = sign * ((rel[i] == '<') ? T(1) : T(-1));
        ++slack;
      } else if (rel[i] != '=') {
        throw std::invalid_argument("lp: relation must be '<', '=' or '>'");
      }
      tab_[i][art0_ + i] = T(1);
      basis_[i] = art0_ + i;
    }
  }

  LpSolution<T> solve() {
    const T eps = Tolerance<T>::value();

    // Phase 1: minimize the sum of artificials.
    std::vector<T> phase1(ncols_, T(0));
    for (std::size_t j = art0_; j < ncols_; ++j) phase1[j] = T(1);
    if (!optimize(phase1, /*forbid_artificial_entering=*/false)) {
      // Phase-1 objective is bounded below by 0, so this cannot happen.
      throw std::logic_error("lp: phase 1 unbounded");
    }
    T infeas = objective_value(phase1);
    if (infeas > eps) return {LpStatus::infeasible, infeas, {}};

    // Drive artificials still in the basis out (or detect redundant rows).
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (basis_[i] < art0_) continue;
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < art0_; ++j) {
        if (abs_(tab_[i][j]) > eps) {
          enter = j;
          break;
        }
      }
      if (enter < ncols_) pivot(i, enter);
      // else: redundant row, artificial stays basic at value 0.
    }

    std::vector<T> phase2(ncols_, T(0));
    for (std::size_t j = 0; j < nstruct_; ++j) phase2[j] = cost_[j];
    if (!optimize(phase2, /*forbid_artificial_entering=*/true))
      return {LpStatus::unbounded, T(0), {}};

    LpSolution<T> sol;
    sol.status = LpStatus::optimal;
    sol.x.assign(nstruct_, T(0));
    for (std::size_t i = 0; i < nrows_; ++i)
      if (basis_[i] < nstruct_) sol.x[basis_[i]] = tab_[i][ncols_];
    sol.objective = objective_value(phase2);
    return sol;
  }

 private:
  static T abs_(const T& v) { return v < T(0) ? T(-v) : v; }

  T objective_value(const std::vector<T>& c) const {
    T obj(0);
    for (std::size_t i = 0; i < nrows_; ++i) obj += c[basis_[i]] * tab_[i][ncols_];
    return obj;
  }

  // Reduced cost of column j under objective c: c_j - c_B . B^{-1} A_j.
  T reduced_cost(const std::vector<T>& c, std::size_t j) const {
    T r = c[j];
    for (std::size_t i = 0; i < nrows_; ++i) r -= c[basis_[i]] * tab_[i][j];
    return r;
  }

  // Bland's rule; returns false on unboundedness.
  bool optimize(const std::vector<T>& c, bool forbid_artificial_entering) {
    const T eps = Tolerance<T>::value();
    for (;;) {
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (forbid_artificial_entering && j >= art0_) break;
        if (reduced_cost(c, j) < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == ncols_) return true;  // optimal
      std::size_t leave = nrows_;
      for (std::size_t i = 0; i < nrows_; ++i) {
        if (tab_[i][enter] > eps) {
          if (leave == nrows_) {
            leave = i;
            continue;
          }
          T lhs = tab_[i][ncols_] * tab_[leave][enter];
          T rhs = tab_[leave][ncols_] * tab_[i][enter];
          if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
        }
      }
      if (leave == nrows_) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    T p = tab_[row][col];
    for (std::size_t j = 0; j <= ncols_; ++j) tab_[row][j] /= p;
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (i == row) continue;
      T f = tab_[i][col];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t nrows_, nstruct_, ncols_ = 0, art0_ = 0;
  std::vector<T> cost_;
  std::vector<std::vector<T>> tab_;
  std::vector<std::size_t> basis_;
};

template <typename T>
LpSolution<T> solve_min(const std::vector<std::vector<T>>& A, const std::vector<char>& rel,
                        const std::vector<T>& b, const std::vector<T>& c) {
  return SimplexTableau<T>(A, rel, b, c).solve();
}

}  // namespace oscdecay::lp
