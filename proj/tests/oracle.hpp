#pragma once

// Independent reference computations used only by tests. Nothing here calls the
// library's inference or integration code.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "helmfuzz/fuzzy.hpp"

namespace oracle {

inline double triangle(double a, double b, double c, double x) {
  if (x <= a || x >= c) return x == b ? 1.0 : 0.0;
  return x <= b ? (x - a) / (b - a) : (c - x) / (c - b);
}

/// Direct 49-rule Mamdani loop with dense trapezoidal centroid (default 1e5 samples).
inline double brute_force_rudder(const helmfuzz::fuzzy::FisDefinition& fis, double psi_err, double r_err,
                                 std::size_t samples = 100000) {
  const auto& P = fis.psi_error.sets;
  const auto& R = fis.r_error.sets;
  const auto& U = fis.rudder.sets;
  const double e = std::min(std::max(psi_err, P[0].b), P[6].b);
  const double ed = std::min(std::max(r_err, R[0].b), R[6].b);

  struct Fired {
    std::size_t out;
    double w;
  };
  std::vector<Fired> fired;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      const double w = std::min(triangle(P[i].a, P[i].b, P[i].c, e), triangle(R[j].a, R[j].b, R[j].c, ed));
      if (w > 0.0) fired.push_back({static_cast<std::size_t>(fis.rules.out[i][j]), w});
    }
  }
  const double lo = U[0].a;
  const double hi = U[6].c;
  const double h = (hi - lo) / static_cast<double>(samples - 1);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double z = lo + h * static_cast<double>(k);
    double mu = 0.0;
    for (const auto& f : fired) mu = std::max(mu, std::min(f.w, triangle(U[f.out].a, U[f.out].b, U[f.out].c, z)));
    const double wt = (k == 0 || k + 1 == samples) ? 0.5 : 1.0;
    num += wt * mu * z;
    den += wt * mu;
  }
  return num / den;
}

/// Steady state of x' = A x + B u for a 2x2 system by Cramer's rule.
inline std::pair<double, double> steady_state(const std::array<std::array<double, 2>, 2>& a,
                                              const std::array<double, 2>& b, double u) {
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double rhs0 = -b[0] * u;
  const double rhs1 = -b[1] * u;
  return {(rhs0 * a[1][1] - a[0][1] * rhs1) / det, (a[0][0] * rhs1 - rhs0 * a[1][0]) / det};
}

/// Largest real part of the eigenvalues of a 2x2 matrix.
inline double max_real_eigenvalue(const std::array<std::array<double, 2>, 2>& a) {
  const double tr = a[0][0] + a[1][1];
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) return 0.5 * tr;
  return 0.5 * (tr + std::sqrt(disc));
}

/// Critically damped step response from rest: psi_d(t) / psi_cmd.
inline double critical_step(double omega_n, double t) {
  return 1.0 - (1.0 + omega_n * t) * std::exp(-omega_n * t);
}

}  // namespace oracle
