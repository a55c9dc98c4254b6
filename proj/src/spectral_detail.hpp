#pragma once

// Internal helpers shared by the finite transfer-operator code and the
// Nystrom discretization. Both paths must produce identical numbers when the
// node system coincides with a finite alphabet, so every depth-2 quantity is
// computed here and nowhere else.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "infodyn/common.hpp"
#include "infodyn/symbolic.hpp"

namespace infodyn::detail {

struct EigenTriple {
  double lambda = 0.0;
  std::vector<double> h;    // right eigenvector, sum h.rho = 1
  std::vector<double> rho;  // adjoint fixed probability
};

/// Leading eigen-triple of a nonnegative primitive matrix by power iteration
/// on both sides. Deterministic all-ones start; iterates until the relative
/// residual max|Bv - lambda v| / max(1, lambda) drops below tol, throwing
/// ConvergenceFailure at the iteration cap.
inline std::vector<double> power_fixed_direction(const std::vector<double>& b,
                                                 std::size_t n, bool transpose,
                                                 double tol, std::size_t cap,
                                                 double& lambda_out) {
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n, 0.0);
  double lambda = 0.0;
  for (std::size_t it = 0; it < cap; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += (transpose ? b[j * n + i] : b[i * n + j]) * v[j];
      y[i] = acc;
    }
    double total = 0.0;
    for (double x : y) total += x;
    lambda = total;  // sum v = 1 is maintained
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      resid = std::max(resid, std::abs(y[i] - lambda * v[i]));
    if (total <= 0.0 || !std::isfinite(total))
      throw ConvergenceFailure("power iteration: non-positive or non-finite iterate");
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / total;
    if (resid <= tol * std::max(1.0, std::abs(lambda))) {
      lambda_out = lambda;
      return v;
    }
  }
  throw ConvergenceFailure("power iteration: residual above tolerance after cap");
}

inline EigenTriple power_triple(const std::vector<double>& b, std::size_t n,
                                double tol = 1e-12, std::size_t cap = 100000) {
  EigenTriple t;
  if (n == 1) {
    t.lambda = b[0];
    if (!(t.lambda > 0.0) || !std::isfinite(t.lambda))
      throw ConvergenceFailure("transfer operator: non-positive weight");
    t.h = {1.0};
    t.rho = {1.0};
    return t;
  }
  double lam_h = 0.0, lam_rho = 0.0;
  std::vector<double> h = power_fixed_direction(b, n, false, tol, cap, lam_h);
  std::vector<double> rho = power_fixed_direction(b, n, true, tol, cap, lam_rho);
  // rho already sums to 1; fix the eigenfunction scale so sum h.rho = 1.
  double hr = 0.0;
  for (std::size_t i = 0; i < n; ++i) hr += h[i] * rho[i];
  for (std::size_t i = 0; i < n; ++i) h[i] /= hr;
  t.lambda = lam_h;
  t.h = std::move(h);
  t.rho = std::move(rho);
  return t;
}

/// Transfer matrix of a depth-2 table: B[j][i] = exp(tab(i,j)) w_i, acting on
/// functions of the leading symbol by prepending i against the weights.
inline std::vector<double> build_transfer_k2(const std::vector<double>& tab,
                                             std::size_t d,
                                             const std::vector<double>& w) {
  std::vector<double> b(d * d, 0.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) b[j * d + i] = std::exp(tab[i * d + j]) * w[i];
  return b;
}

/// Abar(i,j) = tab(i,j) + log h_i - log h_j - log lambda.
inline std::vector<double> normalize_table_k2(const std::vector<double>& tab,
                                              std::size_t d,
                                              const std::vector<double>& h,
                                              double lambda) {
  std::vector<double> abar(d * d, 0.0);
  const double loglam = std::log(lambda);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      abar[i * d + j] = tab[i * d + j] + std::log(h[i]) - std::log(h[j]) - loglam;
  return abar;
}

/// G(i,j) = exp(Abar(i,j)) w_i with every column rescaled to sum exactly 1.
/// The raw sums are 1 up to the eigen residual; a column off by more than
/// 1e-8 indicates a normalization bug upstream.
inline std::vector<double> jacobian_from_normalized(const std::vector<double>& abar,
                                                    std::size_t d,
                                                    const std::vector<double>& w) {
  std::vector<double> g(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g[i * d + j] = std::exp(abar[i * d + j]) * w[i];
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += g[i * d + j];
    if (std::abs(s - 1.0) > 1e-8)
      throw ConvergenceFailure("normalized kernel column off by " +
                               std::to_string(s - 1.0));
    for (std::size_t i = 0; i < d; ++i) g[i * d + j] /= s;
  }
  return g;
}

/// Stationary node-density m with G m = m: the fixed point of the
/// row-stochastic chain G^T.
inline std::vector<double> stationary_from_kernel(const std::vector<double>& g,
                                                  std::size_t d) {
  std::vector<std::vector<double>> rows(d, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) rows[j][i] = g[i * d + j];
  return stationary_distribution(StochasticMatrix(std::move(rows)));
}

/// -int Abar dmu over 2-cylinders, with mu2(i,j) = G(i,j) m_j.
inline double two_cylinder_entropy(const std::vector<double>& abar,
                                   const std::vector<double>& g, std::size_t d,
                                   const std::vector<double>& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) acc += g[i * d + j] * m[j] * abar[i * d + j];
  return -acc;
}

/// int (Abar - Abar o transpose) dmu over 2-cylinders.
inline double two_cylinder_ep(const std::vector<double>& abar,
                              const std::vector<double>& g, std::size_t d,
                              const std::vector<double>& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      acc += g[i * d + j] * m[j] * (abar[i * d + j] - abar[j * d + i]);
  return acc;
}

}  // namespace infodyn::detail
