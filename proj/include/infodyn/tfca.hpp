#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infodyn/common.hpp"
#include "infodyn/thermo.hpp"

namespace infodyn {

enum class QuadratureRule { midpoint, gauss_legendre, explicit_nodes };

/// Discretization of an a-priori probability on the alphabet [0,1]: strictly
/// increasing nodes with positive weights summing to 1 within 1e-14.
class QuadratureMeasure {
 public:
  static QuadratureMeasure midpoint(std::size_t n);
  static QuadratureMeasure gauss_legendre(std::size_t n);
  static QuadratureMeasure explicit_nodes(std::vector<double> nodes,
                                          std::vector<double> weights);

  QuadratureRule rule() const { return rule_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  QuadratureMeasure(QuadratureRule rule, std::vector<double> nodes,
                    std::vector<double> weights);

  QuadratureRule rule_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Potential on [0,1]^2 depending on the first two coordinates: a closed-form
/// parametric family, or a table of values on a fixed node grid.
class ContinuousPotential {
 public:
  static ContinuousPotential constant(double c);
  /// f(x1) = a x1 + b x1^2 (independent of the second coordinate).
  static ContinuousPotential separable(double a, double b);
  /// alpha x1 x2 + beta x1 + gamma x2.
  static ContinuousPotential bilinear(double alpha, double beta, double gamma);
  /// alpha cos(2 pi (x1 - x2)); symmetric under coordinate swap.
  static ContinuousPotential cosine_coupling(double alpha);
  /// Values tabulated on nodes x nodes of the quadrature it will be used with.
  static ContinuousPotential grid(std::vector<std::vector<double>> values);

  bool is_grid() const { return kind_ == Kind::grid; }
  std::string family() const;

  /// Value at a node pair. Grid potentials require index lookup, so the
  /// quadrature size must match the tabulated grid.
  double value(const QuadratureMeasure& q, std::size_t i, std::size_t j) const;

 private:
  enum class Kind { constant, separable, bilinear, cosine, grid };
  ContinuousPotential(Kind k, std::vector<double> par,
                      std::vector<std::vector<double>> tab);

  Kind kind_;
  std::vector<double> par_;
  std::vector<std::vector<double>> tab_;
};

/// Normalized equilibrium kernel on quadrature nodes: column-normalized
/// G[i][j] = exp(Abar(a_i,a_j)) w_i and the stationary node-density.
struct TfcaEquilibrium {
  std::vector<std::vector<double>> kernel;  // G, column-normalized
  std::vector<double> density;              // stationary, sums to 1
};

/// Nystrom discretization of the transfer operator: the matrix
/// B[j][i] = exp(A(a_i,a_j)) w_i, eigen-solved exactly as in the finite
/// theory. Requires at least 8 nodes for parametric families (grid potentials
/// carry their own size).
SpectralData nystrom_spectral(const ContinuousPotential& A, const QuadratureMeasure& q);

TfcaEquilibrium tfca_equilibrium(const ContinuousPotential& A, const QuadratureMeasure& q);

/// Relative entropy of the equilibrium, h^nu(mu_A) = -int Abar dmu_A
/// evaluated on the node grid; always <= 0 up to roundoff.
double tfca_entropy(const ContinuousPotential& A, const QuadratureMeasure& q);

/// Entropy production at node level:
/// sum_{i,j} mu2(i,j) [Abar(a_i,a_j) - Abar(a_j,a_i)] >= 0.
double tfca_entropy_production(const ContinuousPotential& A, const QuadratureMeasure& q);

}  // namespace infodyn
