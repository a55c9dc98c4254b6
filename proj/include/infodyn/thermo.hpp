#pragma once

#include <cstddef>
#include <vector>

#include "infodyn/common.hpp"
#include "infodyn/symbolic.hpp"

namespace infodyn {

/// Strictly positive weight vector on the alphabet, defining the integral in
/// the transfer operator. Total mass need not be 1: counting weights (all
/// ones) recover Kolmogorov-Sinai entropy, probability weights give the
/// relative entropy h^nu <= 0.
class AprioriWeights {
 public:
  explicit AprioriWeights(std::vector<double> w);

  static AprioriWeights counting(std::size_t d);
  static AprioriWeights uniform(std::size_t d);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const { return w_; }
  double total_mass() const;
  bool is_probability(double tol = 1e-12) const;

 private:
  std::vector<double> w_;
};

/// Locally constant potential of depth k on the shift space over d symbols:
/// the value on a point is determined by its first k symbols, stored as a
/// table of d^k finite reals (row-major, first symbol most significant).
class Potential {
 public:
  Potential(std::size_t d, std::size_t k, std::vector<double> table);

  static Potential constant(std::size_t d, std::size_t k, double c);

  /// Depth-2 log-Jacobian of a Markov measure: A(i,j) = log(pi_i p_ij / pi_j).
  /// Requires strictly positive transitions (the table must be finite).
  static Potential log_jacobian(const MarkovMeasure& mu);

  std::size_t alphabet_size() const { return d_; }
  std::size_t depth() const { return k_; }
  const std::vector<double>& table() const { return tab_; }

  /// Value on the cylinder of a word of length >= k (extra symbols ignored).
  double operator()(const Word& w) const;
  /// Depth-2 accessor.
  double at(std::size_t i, std::size_t j) const { return tab_[i * d_ + j]; }

  Potential transpose() const;         // depth <= 2: A(i,j) -> A(j,i)
  Potential shifted(double c) const;   // A + c

 private:
  std::size_t d_;
  std::size_t k_;
  std::vector<double> tab_;
};

/// Leading eigendata of the transfer operator L_{A,nu}: simple positive
/// eigenvalue lambda, positive eigenfunction h and adjoint-fixed probability
/// rho on words of length k-1, normalized so that sum h.rho = 1.
struct SpectralData {
  double lambda = 0.0;
  std::vector<double> h;
  std::vector<double> rho;

  double pressure() const;  // log lambda
};

/// One application of the transfer operator:
///   (L f)(u) = sum_a exp(A(a.u)) f(a . u_1..u_{k-2}) nu_a,
/// where f is a table on words of length k-1 (a single scalar when k = 1).
std::vector<double> transfer_apply(const Potential& A, const AprioriWeights& nu,
                                   const std::vector<double>& f);

/// Power iteration for the eigen-triple of L_{A,nu}. Deterministic all-ones
/// start, internal residual 1e-12, iteration cap 1e5; throws
/// ConvergenceFailure when the cap is reached first.
SpectralData spectral_data(const Potential& A, const AprioriWeights& nu);

/// nu-normalization: Abar = A + log h - log h.sigma - log lambda. The result
/// has the same depth and satisfies is_normalized(Abar, nu).
Potential normalize_potential(const Potential& A, const SpectralData& s);

/// True iff max over suffix words u of |sum_a exp(A(a.u)) nu_a - 1| <= 1e-10.
bool is_normalized(const Potential& A, const AprioriWeights& nu);

/// The nu-equilibrium measure of A. For depth k <= 2 this is a Markov measure
/// on the d symbols; deeper potentials are recoded to the alphabet of
/// (k-1)-blocks (d^{k-1} symbols) and the block Markov measure is returned.
/// exp(Abar(i,j)) nu_i is its prepend-conditional mu(|i,j]) / mu(|j]).
MarkovMeasure equilibrium_measure(const Potential& A, const AprioriWeights& nu);

/// Relative entropy h^nu(mu) = -int log J dmu with J the nu-Jacobian of mu;
/// in closed form ks_entropy(mu) + sum_i pi_i log nu_i. Counting weights give
/// ks_entropy, uniform probability weights give ks_entropy - log d.
double relative_entropy(const MarkovMeasure& mu, const AprioriWeights& nu);

/// int A d(eta) for a Markov eta and depth <= 2 potential, via the 2-cylinder
/// marginal. Depth-1 potentials integrate against the stationary vector.
double integrate(const Potential& A, const MarkovMeasure& eta);

}  // namespace infodyn
