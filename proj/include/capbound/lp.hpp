#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capbound/rational.hpp"

namespace capbound {

enum class Rel { LE, GE };

// maximize objective . x  subject to  rows, x >= 0
struct LpProblem {
  struct Row {
    std::vector<Rational> coeffs;
    Rel rel = Rel::LE;
    Rational rhs;
  };
  int nvars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  void check_shape() const {
    if (nvars <= 0) throw std::invalid_argument("LpProblem: need at least one variable");
    if (static_cast<int>(objective.size()) != nvars)
      throw std::invalid_argument("LpProblem: objective size mismatch");
    if (rows.empty()) throw std::invalid_argument("LpProblem: need at least one constraint");
    for (const auto& r : rows)
      if (static_cast<int>(r.coeffs.size()) != nvars)
        throw std::invalid_argument("LpProblem: row size mismatch");
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Primal/dual pair with equal objectives: strong duality witnessed, not
// assumed. For Infeasible the farkas vector z satisfies z_i <= 0 on LE
// rows, z_i >= 0 on GE rows, sum_i z_i a_ij <= 0 per variable, and
// z . b > 0. For Unbounded, ray is a feasible improving direction.
struct LpCertificate {
  LpStatus status = LpStatus::Optimal;
  Rational objective;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> ray;
  std::vector<Rational> farkas;
};

namespace detail {

class SimplexTableau {
 public:
  explicit SimplexTableau(const LpProblem& p) : p_(p) {
    m_ = static_cast<int>(p.rows.size());
    nv_ = p.nvars;
    ncols_ = nv_ + 2 * m_ + 1;  // structural | slack | artificial | rhs
    t_.assign(m_, std::vector<Rational>(ncols_, Rational(0)));
    sigma_.assign(m_, 1);
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const auto& row = p.rows[i];
      Rational slack_sign = (row.rel == Rel::LE) ? Rational(1) : Rational(-1);
      int s = (row.rhs < 0) ? -1 : 1;
      // negate rows with negative rhs so phase 1 can start from artificials
      sigma_[i] = s;
      for (int j = 0; j < nv_; ++j) t_[i][j] = Rational(s) * row.coeffs[j];
      t_[i][nv_ + i] = Rational(s) * slack_sign;
      t_[i][nv_ + m_ + i] = 1;
      t_[i][ncols_ - 1] = Rational(s) * row.rhs;
      basis_[i] = nv_ + m_ + i;
    }
  }

  LpCertificate solve() {
    // phase 1: minimize the sum of artificials
    std::vector<Rational> cost1(ncols_ - 1, Rational(0));
    for (int i = 0; i < m_; ++i) cost1[nv_ + m_ + i] = 1;
    run(cost1, /*allow_unbounded=*/false);
    Rational phase1 = objective_value(cost1);
    if (phase1 > 0) return infeasible_certificate(cost1);

    pivot_out_artificials();

    // phase 2: minimize -objective
    std::vector<Rational> cost2(ncols_ - 1, Rational(0));
    for (int j = 0; j < nv_; ++j) cost2[j] = -p_.objective[j];
    int unbounded_col = run(cost2, /*allow_unbounded=*/true);
    if (unbounded_col >= 0) return unbounded_certificate(unbounded_col);
    return optimal_certificate(cost2);
  }

 private:
  // Bland's rule throughout: lowest eligible column, lowest basic index
  // on ratio ties. Returns -1 on optimality, else the unbounded column.
  int run(const std::vector<Rational>& cost, bool allow_unbounded) {
    for (;;) {
      std::vector<Rational> red = reduced_costs(cost);
      int enter = -1;
      for (int j = 0; j < ncols_ - 1; ++j) {
        if (j >= nv_ + m_ && basis_not(j)) continue;  // artificials never re-enter
        if (red[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][ncols_ - 1] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave]))
          best = ratio, leave = i;
      }
      if (leave < 0) {
        if (allow_unbounded) return enter;
        throw std::logic_error("simplex: phase 1 unbounded");
      }
      pivot(leave, enter);
    }
  }

  bool basis_not(int col) const {
    for (int b : basis_)
      if (b == col) return false;
    return true;
  }

  std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    std::vector<Rational> red(cost);
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < ncols_ - 1; ++j)
        if (t_[i][j] != 0) red[j] -= cb * t_[i][j];
    }
    return red;
  }

  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational z = 0;
    for (int i = 0; i < m_; ++i) z += cost[basis_[i]] * t_[i][ncols_ - 1];
    return z;
  }

  void pivot(int row, int col) {
    Rational pv = t_[row][col];
    for (auto& x : t_[row]) x /= pv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      Rational f = t_[i][col];
      for (int j = 0; j < ncols_; ++j)
        if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  // Degenerate artificials may linger in the basis at level zero; swap
  // them for any non-artificial column so phase-2 duals read cleanly.
  void pivot_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < nv_ + m_) continue;
      int col = -1;
      for (int j = 0; j < nv_ + m_; ++j)
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      if (col >= 0) pivot(i, col);
      // else: row is all-zero over real columns (redundant constraint);
      // the artificial stays basic at value zero, which is harmless
    }
  }

  // y_i = c_B B^{-1} e_i, read off the artificial columns.
  std::vector<Rational> basis_multipliers(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_, Rational(0));
    for (int i = 0; i < m_; ++i)
      for (int r = 0; r < m_; ++r)
        if (cost[basis_[r]] != 0 && t_[r][nv_ + m_ + i] != 0)
          y[i] += cost[basis_[r]] * t_[r][nv_ + m_ + i];
    return y;
  }

  LpCertificate optimal_certificate(const std::vector<Rational>& cost) {
    LpCertificate c;
    c.status = LpStatus::Optimal;
    c.primal.assign(nv_, Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nv_) c.primal[basis_[i]] = t_[i][ncols_ - 1];
    c.objective = -objective_value(cost);
    std::vector<Rational> y = basis_multipliers(cost);
    c.dual.assign(m_, Rational(0));
    for (int i = 0; i < m_; ++i) c.dual[i] = Rational(-sigma_[i]) * y[i];
    return c;
  }

  LpCertificate unbounded_certificate(int enter) {
    LpCertificate c;
    c.status = LpStatus::Unbounded;
    c.primal.assign(nv_, Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nv_) c.primal[basis_[i]] = t_[i][ncols_ - 1];
    c.ray.assign(nv_, Rational(0));
    if (enter < nv_) c.ray[enter] = 1;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nv_) c.ray[basis_[i]] = -t_[i][enter];
    return c;
  }

  LpCertificate infeasible_certificate(const std::vector<Rational>& cost) {
    LpCertificate c;
    c.status = LpStatus::Infeasible;
    std::vector<Rational> y = basis_multipliers(cost);
    // phase-1 dual at optimum: (1 - y_i) is the reduced cost of artificial i
    c.farkas.assign(m_, Rational(0));
    for (int i = 0; i < m_; ++i) c.farkas[i] = Rational(sigma_[i]) * y[i];
    return c;
  }

  const LpProblem& p_;
  int m_, nv_, ncols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<int> sigma_;
  std::vector<int> basis_;
};

}  // namespace detail

// True iff the certificate's invariants hold exactly against p; fully
// independent of the solver path.
inline bool verify_certificate(const LpProblem& p, const LpCertificate& c) {
  p.check_shape();
  const int m = static_cast<int>(p.rows.size());
  if (c.status == LpStatus::Optimal) {
    if (static_cast<int>(c.primal.size()) != p.nvars) return false;
    if (static_cast<int>(c.dual.size()) != m) return false;
    Rational pobj = 0;
    for (int j = 0; j < p.nvars; ++j) {
      if (c.primal[j] < 0) return false;
      pobj += p.objective[j] * c.primal[j];
    }
    for (const auto& row : p.rows) {
      Rational lhs = 0;
      for (int j = 0; j < p.nvars; ++j) lhs += row.coeffs[j] * c.primal[j];
      if (row.rel == Rel::LE ? lhs > row.rhs : lhs < row.rhs) return false;
    }
    Rational dobj = 0;
    for (int i = 0; i < m; ++i) {
      if (p.rows[i].rel == Rel::LE ? c.dual[i] < 0 : c.dual[i] > 0) return false;
      dobj += c.dual[i] * p.rows[i].rhs;
    }
    for (int j = 0; j < p.nvars; ++j) {
      Rational col = 0;
      for (int i = 0; i < m; ++i) col += c.dual[i] * p.rows[i].coeffs[j];
      if (col < p.objective[j]) return false;
    }
    return pobj == dobj && pobj == c.objective;
  }
  if (c.status == LpStatus::Unbounded) {
    if (static_cast<int>(c.ray.size()) != p.nvars) return false;
    Rational gain = 0;
    for (int j = 0; j < p.nvars; ++j) {
      if (c.ray[j] < 0) return false;
      gain += p.objective[j] * c.ray[j];
    }
    if (gain <= 0) return false;
    for (const auto& row : p.rows) {
      Rational lhs = 0;
      for (int j = 0; j < p.nvars; ++j) lhs += row.coeffs[j] * c.ray[j];
      if (row.rel == Rel::LE ? lhs > 0 : lhs < 0) return false;
    }
    return true;
  }
  // Infeasible: z with z.b > 0 yet z^T A <= 0 componentwise and signs
  // compatible with the relations, so no nonnegative x can exist.
  if (static_cast<int>(c.farkas.size()) != m) return false;
  Rational zb = 0;
  for (int i = 0; i < m; ++i) {
    if (p.rows[i].rel == Rel::LE ? c.farkas[i] > 0 : c.farkas[i] < 0) return false;
    zb += c.farkas[i] * p.rows[i].rhs;
  }
  if (zb <= 0) return false;
  for (int j = 0; j < p.nvars; ++j) {
    Rational col = 0;
    for (int i = 0; i < m; ++i) col += c.farkas[i] * p.rows[i].coeffs[j];
    if (col > 0) return false;
  }
  return true;
}

// Exact two-phase simplex, Bland's rule. The returned certificate is
// re-verified before being handed back; a verification failure is a hard
// error, never a silently accepted answer.
inline LpCertificate solve(const LpProblem& p) {
  p.check_shape();
  detail::SimplexTableau tableau(p);
  LpCertificate c = tableau.solve();
  if (!verify_certificate(p, c))
    throw std::logic_error("simplex: produced certificate failed verification");
  return c;
}

// One line per constraint: "coef... REL rhs" with rationals as p/q.
inline std::string serialize_lp(const LpProblem& p) {
  std::ostringstream out;
  out << "max";
  for (const auto& c : p.objective) out << ' ' << rat_str(c);
  out << '\n';
  for (const auto& row : p.rows) {
    bool first = true;
    for (const auto& c : row.coeffs) {
      if (!first) out << ' ';
      out << rat_str(c);
      first = false;
    }
    out << (row.rel == Rel::LE ? " <= " : " >= ") << rat_str(row.rhs) << '\n';
  }
  return out.str();
}

}  // namespace capbound
