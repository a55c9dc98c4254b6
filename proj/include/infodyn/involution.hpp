#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "infodyn/common.hpp"
#include "infodyn/symbolic.hpp"
#include "infodyn/thermo.hpp"

namespace infodyn {

/// Involution kernel for a depth <= 2 potential A, together with the dual
/// potential it produces.
///
/// W is a depth-(1,1) kernel coupling the first past symbol y1 and the first
/// future symbol x1. It satisfies the cocycle identity
///
///   a_minus(y1, y2) = A(y1, x1) + W(y2, y1) - W(y1, x1)   for every x1,
///
/// where a_minus is the dual potential expressed on the one-sided space via
/// the past/future conjugation. The kernel is not unique: adding g(y1) to W
/// shifts a_minus by the coboundary g(y2) - g(y1). The canonical choice
/// W = A (gauge 0) gives a_minus(i,j) = A(j,i).
struct InvolutionData {
  std::vector<std::vector<double>> w;  // w[y1][x1]
  Potential a_minus;                   // depth 2, on the one-sided space
  std::vector<double> gauge;           // g per symbol; 0 for the canonical kernel
};

/// Canonical involution kernel (gauge 0). Depth-1 potentials are lifted to
/// depth 2 first.
InvolutionData involution_kernel(const Potential& A);

/// Gauge-adjusted kernel: W(y1,x1) = A(y1,x1) + g(y1),
/// a_minus(i,j) = A(j,i) + g(j) - g(i).
InvolutionData involution_kernel(const Potential& A, std::vector<double> gauge);

struct SymmetryResult {
  bool symmetric = false;                    // in the coboundary class
  bool strict = false;                       // plain transpose equality
  std::optional<std::vector<double>> gauge;  // witness when symmetric
};

/// Whether A equals its dual for some involution kernel, i.e. whether there
/// is a gauge vector g with A(i,j) = A(j,i) + g(j) - g(i) for all i,j
/// (within tol). The witness is returned when one exists.
SymmetryResult is_symmetric(const Potential& A, const AprioriWeights& nu,
                            double tol = 1e-10);

/// Closed-form entropy production of a Markov measure,
///   sum_{i,j} pi_i p_ij log(pi_i p_ij / (pi_j p_ji)),
/// +infinity when some transition is one-way (p_ij > 0, p_ji = 0).
ExtReal entropy_production_markov(const MarkovMeasure& mu);

/// Entropy production through the potential route: normalize A, take the
/// dual of the normalized potential, and integrate Abar - Abar_minus against
/// the equilibrium 2-cylinder marginal. Agrees with the closed form on the
/// equilibrium chain within 1e-10.
double entropy_production_potential(const Potential& A, const AprioriWeights& nu);

/// Pressure-gap form of the specific information gain of eta relative to the
/// equilibrium of A:  log lambda_A - int A d(eta) - h^nu(eta). Nonnegative by
/// the variational principle; zero iff eta is the equilibrium.
double specific_gain(const MarkovMeasure& eta, const Potential& A,
                     const AprioriWeights& nu);

enum class GainRoute { pressure_formula, cylinder_sum, orbit_monte_carlo };

struct GainReport {
  ExtReal value;
  GainRoute route = GainRoute::pressure_formula;
  std::size_t n = 1;
  double stderr_value = 0.0;  // Monte Carlo only
};

/// Finite-depth cylinder estimate of the specific information gain:
///   (1/n) sum over all d^n words of eta(C) log(eta(C)/mu(C)).
/// Exhaustive enumeration; requires n >= 2 and d^n <= 1e7
/// (EnumerationTooLarge beyond). +infinity when eta charges a mu-null word.
GainReport cylinder_gain_estimate(const MarkovMeasure& eta, const MarkovMeasure& mu,
                                  std::size_t n);

/// Per-trial exponents (1/n) log(eta(C_n(x)) / mu(C_n(x))) along orbits
/// sampled from eta. Per-trial substreams are derived from (seed, trial
/// index), so the result does not depend on evaluation order. An orbit that
/// crosses a mu-null transition yields IEEE +inf in its slot.
std::vector<double> orbit_gain_trials(const MarkovMeasure& eta, const MarkovMeasure& mu,
                                      std::size_t n, std::size_t trials,
                                      std::uint64_t seed);

/// Pointwise (SMB-type) estimate: mean and standard error of the per-trial
/// exponents; the +infinity sentinel when any orbit leaves the support of mu.
GainReport orbit_gain_estimate(const MarkovMeasure& eta, const MarkovMeasure& mu,
                               std::size_t n, std::size_t trials, std::uint64_t seed);

/// (lambda_A, lambda_{A-}) from two independent spectral solves; the two
/// leading eigenvalues agree within 1e-10.
std::pair<double, double> dual_eigenvalue_check(const Potential& A,
                                                const AprioriWeights& nu);

}  // namespace infodyn
