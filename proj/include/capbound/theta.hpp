#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capbound/graph.hpp"

namespace capbound {

// Theta value with a certified enclosure. `primal` is a feasible point
// of the max <J,X> SDP achieving `lower`; `dual_t`/`dual_y` give the
// dual slack matrix Z = t I + sum_e y_e E_e - J >= 0 certifying `upper`.
struct ThetaResult {
  double value = 0;
  double lower = 0;
  double upper = 0;
  double tolerance = 0;
  bool converged = true;
  Eigen::MatrixXd primal;
  double dual_t = 0;
  std::vector<double> dual_y;  // aligned with graph.edges()
};

inline double theta_odd_cycle(int n) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("theta_odd_cycle: need odd n >= 3");
  double c = std::cos(std::numbers::pi / n);
  return n * c / (1 + c);
}

namespace detail {

inline bool psd_cholesky(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

// Largest step in (0,1] keeping m + a*d positive definite, by bisection
// over Cholesky tests.
inline double psd_step(const Eigen::MatrixXd& m, const Eigen::MatrixXd& d) {
  if (psd_cholesky(m + d)) return 1.0;
  double lo = 0, hi = 1;
  for (int it = 0; it < 40; ++it) {
    double mid = (lo + hi) / 2;
    if (psd_cholesky(m + mid * d))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace detail

// Lovasz theta via the SDP  max <J,X>  s.t.  tr X = 1, X_ij = 0 on
// edges, X >= 0. Feasible-start interior point (HKM direction): X = I/n
// and Z(t=n+1, y=0) are strictly feasible, so only complementarity has
// to be driven to zero. The returned interval is certified outward:
// the primal witness is projected back to exact feasibility and the dual
// slack is shifted by its most negative eigenvalue.
inline ThetaResult lovasz_theta(const Graph& g, double tolerance = 1e-7) {
  if (g.n() > 64) throw std::invalid_argument("lovasz_theta: n > 64");
  if (tolerance < 1e-9 || tolerance > 1e-3)
    throw std::invalid_argument("lovasz_theta: tolerance outside [1e-9, 1e-3]");
  const int n = g.n();
  ThetaResult res;
  res.tolerance = tolerance;
  if (n == 1) {
    res.value = res.lower = res.upper = 1.0;
    res.primal = Eigen::MatrixXd::Ones(1, 1);
    res.dual_t = 1.0;
    return res;
  }
  auto es = g.edges();
  const int ne = static_cast<int>(es.size());
  const int m = 1 + ne;  // trace constraint + one per edge

  Eigen::MatrixXd J = Eigen::MatrixXd::Ones(n, n);
  Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n) / n;
  double t = n + 1.0;
  std::vector<double> y(ne, 0.0);

  auto dual_slack = [&]() {
    Eigen::MatrixXd Z = t * Eigen::MatrixXd::Identity(n, n) - J;
    for (int e = 0; e < ne; ++e) {
      Z(es[e].first, es[e].second) += y[e];
      Z(es[e].second, es[e].first) += y[e];
    }
    return Z;
  };

  const int max_iter = 200;
  const double sigma = 0.25;
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd Z = dual_slack();
    double mu = (X * Z).trace() / n;
    if (mu < 1e-12) break;

    Eigen::MatrixXd Zi = Z.llt().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd W = X * Zi;  // appears in every Schur entry

    // Schur system M dy = r, M_kl = tr(A_k X A_l Z^-1)
    Eigen::MatrixXd M(m, m);
    Eigen::VectorXd r(m);
    double smu = sigma * mu;
    M(0, 0) = W.trace();
    r(0) = smu * Zi.trace() - X.trace();
    for (int e = 0; e < ne; ++e) {
      auto [i, j] = es[e];
      M(0, 1 + e) = W(i, j) + W(j, i);
      M(1 + e, 0) = W(i, j) + W(j, i);
      r(1 + e) = 2.0 * smu * Zi(i, j) - 2.0 * X(i, j);
      for (int f = 0; f < ne; ++f) {
        auto [k, l] = es[f];
        M(1 + e, 1 + f) =
            X(j, k) * Zi(l, i) + X(j, l) * Zi(k, i) + X(i, k) * Zi(l, j) + X(i, l) * Zi(k, j);
      }
    }

    Eigen::VectorXd dy = M.partialPivLu().solve(r);
    if (!dy.allFinite()) break;  // Schur system degenerated; certify the current iterate

    Eigen::MatrixXd dZ = dy(0) * Eigen::MatrixXd::Identity(n, n);
    for (int e = 0; e < ne; ++e) {
      dZ(es[e].first, es[e].second) += dy(1 + e);
      dZ(es[e].second, es[e].first) += dy(1 + e);
    }
    Eigen::MatrixXd dXraw = smu * Zi - X - X * dZ * Zi;
    Eigen::MatrixXd dX = (dXraw + dXraw.transpose()) / 2;

    double ap = 0.98 * detail::psd_step(X, dX);
    double ad = 0.98 * detail::psd_step(Z, dZ);
    X += ap * dX;
    t += ad * dy(0);
    for (int e = 0; e < ne; ++e) y[e] += ad * dy(1 + e);

    // keep the primal exactly feasible: zero edge slots, renormalize
    // trace, and repair definiteness if the projection broke it
    for (auto [i, j] : es) X(i, j) = X(j, i) = 0.0;
    X /= X.trace();
    if (!detail::psd_cholesky(X)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X);
      double lam = eig.eigenvalues().minCoeff();
      double delta = std::max(0.0, -lam) * (1 + 1e-9) + 1e-14;
      X = (X + delta * Eigen::MatrixXd::Identity(n, n)) / (1 + n * delta);
    }
    if (ap < 1e-10 && ad < 1e-10) break;
  }

  // certified lower bound: mix with I/n until the witness is PSD
  Eigen::MatrixXd Xw = (X + X.transpose()) / 2;
  for (auto [i, j] : es) Xw(i, j) = Xw(j, i) = 0.0;
  Xw /= Xw.trace();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Xw);
    double lam = eig.eigenvalues().minCoeff();
    if (lam < 0) {
      double delta = -lam * (1 + 1e-9) + 1e-15;
      Xw = (Xw + delta * Eigen::MatrixXd::Identity(n, n)) / (1 + n * delta);
    }
  }
  res.primal = Xw;
  res.lower = (J.cwiseProduct(Xw)).sum();

  // certified upper bound: shift t by the most negative eigenvalue of Z
  Eigen::MatrixXd Z = dual_slack();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Z);
    double lam = eig.eigenvalues().minCoeff();
    double shift = lam < 0 ? -lam * (1 + 1e-9) + 1e-15 : 0.0;
    res.dual_t = t + shift;
  }
  res.upper = res.dual_t;
  res.dual_y = y;
  res.value = (res.lower + res.upper) / 2;
  res.converged = (res.upper - res.lower) <= 2 * tolerance;
  return res;
}

}  // namespace capbound
