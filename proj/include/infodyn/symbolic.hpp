#pragma once

#include <cstdint>
#include <vector>

#include "infodyn/common.hpp"

namespace infodyn {

/// A finite word over the alphabet {0,...,d-1}; denotes the cylinder set of
/// all one-sided sequences starting with these symbols.
using Word = std::vector<int>;

/// Row-stochastic d x d matrix. Rows must sum to 1 within 1e-12, entries >= 0,
/// and d >= 2.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::vector<std::vector<double>> rows);

  std::size_t size() const { return d_; }
  double operator()(std::size_t i, std::size_t j) const { return p_[i * d_ + j]; }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t d_;
  std::vector<double> p_;  // row-major
};

/// Fixed point of m, i.e. the probability row vector pi with pi m = pi.
///
/// Direct dense eigenproblem for d <= 64; power iteration on the lazy chain
/// (m + I)/2 beyond, to residual 1e-13. Throws ReducibleChain when the
/// eigenvalue-1 multiplicity exceeds 1 (within 1e-8) or the fixed point is
/// not strictly positive.
std::vector<double> stationary_distribution(const StochasticMatrix& m);

/// Shift-invariant Markov measure: transition matrix plus its stationary
/// vector. Construction enforces stationarity (residual 1e-10), positivity
/// of the stationary vector, and uniqueness of the fixed point.
class MarkovMeasure {
 public:
  /// Computes the stationary vector from the transitions.
  explicit MarkovMeasure(StochasticMatrix p);

  /// Uses the supplied stationary vector after validating it.
  MarkovMeasure(StochasticMatrix p, std::vector<double> stationary);

  std::size_t alphabet_size() const { return p_.size(); }
  const StochasticMatrix& transitions() const { return p_; }
  const std::vector<double>& stationary() const { return pi_; }

 private:
  MarkovMeasure(StochasticMatrix p, std::vector<double> pi, bool check_unique);

  StochasticMatrix p_;
  std::vector<double> pi_;
};

/// mu(|w_1,...,w_n]) = pi_{w_1} p_{w_1 w_2} ... p_{w_{n-1} w_n}.
double cylinder_mass(const MarkovMeasure& mu, const Word& w);

/// Time reversal: the push-forward of the past-coordinate restriction of the
/// natural extension, a Markov measure with q_{ij} = pi_j p_{ji} / pi_i and
/// the same stationary vector. Cylinder masses of the result are those of mu
/// on reversed words.
MarkovMeasure reverse_measure(const MarkovMeasure& mu);

/// Length-n word with the law of the n-cylinder marginal of mu.
/// Deterministic given the seed (inverse-CDF sampling from a fixed PRNG).
Word sample_orbit(const MarkovMeasure& mu, std::size_t n, std::uint64_t seed);

/// Kolmogorov-Sinai entropy, nats: -sum_ij pi_i p_ij log p_ij.
double ks_entropy(const MarkovMeasure& mu);

}  // namespace infodyn
