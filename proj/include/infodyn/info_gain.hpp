#pragma once

#include <cstddef>
#include <vector>

#include "infodyn/common.hpp"

namespace infodyn {

/// Probability table pi on X x Y (d rows, r columns), total mass 1 within
/// 1e-12. Marginals are recomputed on demand, never stored.
class JointDistribution {
 public:
  explicit JointDistribution(std::vector<std::vector<double>> table);

  std::size_t x_size() const { return d_; }
  std::size_t y_size() const { return r_; }
  double operator()(std::size_t x, std::size_t y) const { return t_[x * r_ + y]; }

  std::vector<double> x_marginal() const;  // P[x] = sum_y pi[x][y]
  std::vector<double> y_marginal() const;  // Q[y] = sum_x pi[x][y]

 private:
  std::size_t d_, r_;
  std::vector<double> t_;  // row-major [x][y]
};

/// Family of probabilities on X indexed by y: table nuhat[y][x], each row a
/// probability vector (1e-12).
class ProbabilityKernel {
 public:
  explicit ProbabilityKernel(std::vector<std::vector<double>> rows);

  /// The kernel that ignores y: nuhat[y] = nu for all y.
  static ProbabilityKernel constant(const std::vector<double>& nu, std::size_t r);

  std::size_t y_size() const { return r_; }
  std::size_t x_size() const { return d_; }
  double operator()(std::size_t y, std::size_t x) const { return t_[y * d_ + x]; }

 private:
  std::size_t r_, d_;
  std::vector<double> t_;  // row-major [y][x]
};

/// Column-normalized Jacobian of a joint: J[x][y] = pi[x][y] / Q[y] where
/// Q[y] > 0. Columns with Q[y] = 0 are filled uniformly and flagged; they
/// carry no pi-mass and are excluded from entropy sums.
struct JacobianTable {
  std::size_t d = 0, r = 0;
  std::vector<double> j;               // row-major [x][y]
  std::vector<unsigned char> zero_q;   // per-column flag

  double operator()(std::size_t x, std::size_t y) const { return j[x * r + y]; }
};

/// -sum p log p in the given base; requires sum p = 1 within 1e-12.
double shannon_entropy(const std::vector<double>& p, LogBase base = LogBase::natural);

JacobianTable joint_jacobian(const JointDistribution& pi);

/// H(pi) = sum_y Q[y] S(column y of J) = -sum pi log J.
double conditional_entropy(const JointDistribution& pi, LogBase base = LogBase::natural);

/// IG(pi, P) = S(P) - H(pi), the mutual information of the two marginals.
/// Evaluated through both closed forms (marginal-entropy difference and
/// sum pi log(pi / P.Q)), asserting agreement within 1e-12 nats.
double information_gain(const JointDistribution& pi, LogBase base = LogBase::natural);

/// D_KL(P | nu) = sum P log(P / nu); +infinity when P is not absolutely
/// continuous with respect to nu.
ExtReal kl_divergence(const std::vector<double>& p, const std::vector<double>& nu);

/// Information gain against an a-priori probability kernel:
///   IG(pi, nuhat) = D_KL(pi | nuhat dQ)
///                 = sum_{x,y} pi[x][y] log(pi[x][y] / (nuhat[y][x] Q[y])).
/// Zero exactly when pi disintegrates as nuhat dQ; +infinity when pi charges
/// a point the kernel does not.
ExtReal kernel_information_gain(const JointDistribution& pi, const ProbabilityKernel& k);

/// Kernel-tilt identity: the gain against the kernel exp(phi0).nu, computed
/// as -int phi0 dpi + IG(pi, nu-constant kernel). phi0 is a d x r table
/// ([x][y]) that must be nu-normalized per y (sum_x exp(phi0[x][y]) nu[x] = 1
/// within 1e-10), otherwise NotNormalized is thrown.
ExtReal ig_shift(const JointDistribution& pi, const std::vector<double>& nu,
                 const std::vector<std::vector<double>>& phi0,
                 LogBase base = LogBase::natural);

/// Variational characterization of -H(pi): maximizes sum f.pi over functions
/// normalized per column (sum_x e^{f(x,y)} = 1 for each y), via ascent in the
/// parameterization f = g - log sum_x e^g. Every iterate is feasible, so the
/// returned value never exceeds -H(pi); it converges to it within 1e-6 in
/// nats under the defaults.
double variational_entropy_oracle(const JointDistribution& pi,
                                  std::size_t iters = 200, double step = 1.0);

}  // namespace infodyn
