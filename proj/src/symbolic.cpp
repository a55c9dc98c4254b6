#include "infodyn/symbolic.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace infodyn {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kStationaryTol = 1e-10;
constexpr double kEigenOneTol = 1e-8;
constexpr std::size_t kDirectEigenLimit = 64;

Eigen::MatrixXd to_eigen(const StochasticMatrix& m) {
  const std::size_t d = m.size();
  Eigen::MatrixXd a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = m(i, j);
  return a;
}

// Fixed point via the dense eigenproblem of the transposed matrix. Counts the
// eigenvalue-1 multiplicity to detect reducible chains; periodic irreducible
// chains keep their other unit-circle eigenvalues away from 1.
std::vector<double> stationary_direct(const StochasticMatrix& m) {
  const std::size_t d = m.size();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m).transpose());
  if (solver.info() != Eigen::Success)
    throw ReducibleChain("stationary_distribution: eigensolver failed");

  const auto& vals = solver.eigenvalues();
  int at_one = 0;
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    const double dist = std::abs(vals[static_cast<Eigen::Index>(i)] - std::complex<double>(1.0, 0.0));
    if (dist < kEigenOneTol) ++at_one;
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  if (at_one > 1)
    throw ReducibleChain("stationary_distribution: eigenvalue-1 multiplicity > 1");
  if (best_dist > kEigenOneTol)
    throw ReducibleChain("stationary_distribution: no unit eigenvalue found");

  Eigen::VectorXcd vec = solver.eigenvectors().col(static_cast<Eigen::Index>(best));
  std::vector<double> pi(d, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    pi[i] = vec[static_cast<Eigen::Index>(i)].real();
    total += pi[i];
  }
  if (total < 0.0) {
    for (double& x : pi) x = -x;
    total = -total;
  }
  if (total <= 0.0)
    throw ReducibleChain("stationary_distribution: degenerate fixed point");
  for (double& x : pi) x /= total;
  for (double x : pi)
    if (!(x > 0.0))
      throw ReducibleChain("stationary_distribution: fixed point not strictly positive");
  return pi;
}

// Large alphabets: power iteration on the lazy chain (m + I)/2, which has the
// same fixed point and no periodicity.
std::vector<double> stationary_power(const StochasticMatrix& m) {
  const std::size_t d = m.size();
  std::vector<double> v(d, 1.0 / static_cast<double>(d));
  std::vector<double> next(d, 0.0);
  for (std::size_t it = 0; it < 2000000; ++it) {
    for (std::size_t j = 0; j < d; ++j) next[j] = 0.5 * v[j];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) next[j] += 0.5 * v[i] * m(i, j);
    double total = 0.0;
    for (double x : next) total += x;
    for (double& x : next) x /= total;
    v.swap(next);
    double resid = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double vp = 0.0;
      for (std::size_t i = 0; i < d; ++i) vp += v[i] * m(i, j);
      resid = std::max(resid, std::abs(vp - v[j]));
    }
    if (resid <= 1e-13) {
      for (double x : v)
        if (!(x > 0.0))
          throw ReducibleChain("stationary_distribution: fixed point not strictly positive");
      return v;
    }
  }
  throw ReducibleChain("stationary_distribution: power iteration did not converge");
}

double stationarity_residual(const StochasticMatrix& p, const std::vector<double>& pi) {
  const std::size_t d = p.size();
  double resid = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += pi[i] * p(i, j);
    resid = std::max(resid, std::abs(acc - pi[j]));
  }
  return resid;
}

}  // namespace

StochasticMatrix::StochasticMatrix(std::vector<std::vector<double>> rows) {
  d_ = rows.size();
  if (d_ < 2) throw Error("StochasticMatrix: alphabet size must be >= 2");
  p_.assign(d_ * d_, 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    if (rows[i].size() != d_) throw Error("StochasticMatrix: matrix must be square");
    double sum = 0.0;
    for (std::size_t j = 0; j < d_; ++j) {
      const double x = rows[i][j];
      if (!(x >= 0.0) || !std::isfinite(x))
        throw Error("StochasticMatrix: entries must be finite and >= 0");
      p_[i * d_ + j] = x;
      sum += x;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
      throw Error("StochasticMatrix: row " + std::to_string(i) + " sums to " +
                  std::to_string(sum));
  }
}

std::vector<std::vector<double>> StochasticMatrix::rows() const {
  std::vector<std::vector<double>> out(d_, std::vector<double>(d_, 0.0));
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) out[i][j] = p_[i * d_ + j];
  return out;
}

std::vector<double> stationary_distribution(const StochasticMatrix& m) {
  return m.size() <= kDirectEigenLimit ? stationary_direct(m) : stationary_power(m);
}

MarkovMeasure::MarkovMeasure(StochasticMatrix p)
    : MarkovMeasure(std::move(p), {}, false) {}

MarkovMeasure::MarkovMeasure(StochasticMatrix p, std::vector<double> stationary)
    : MarkovMeasure(std::move(p), std::move(stationary), true) {}

MarkovMeasure::MarkovMeasure(StochasticMatrix p, std::vector<double> pi, bool supplied)
    : p_(std::move(p)), pi_(std::move(pi)) {
  const std::size_t d = p_.size();
  if (!supplied) {
    pi_ = stationary_distribution(p_);  // also enforces uniqueness
    return;
  }
  if (pi_.size() != d) throw Error("MarkovMeasure: stationary vector size mismatch");
  double total = 0.0;
  for (double x : pi_) {
    if (!(x > 0.0)) throw Error("MarkovMeasure: stationary vector must be positive");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error("MarkovMeasure: stationary vector must sum to 1");
  if (stationarity_residual(p_, pi_) > kStationaryTol)
    throw Error("MarkovMeasure: supplied vector is not stationary");
  if (d <= kDirectEigenLimit) (void)stationary_direct(p_);  // uniqueness check
}

double cylinder_mass(const MarkovMeasure& mu, const Word& w) {
  const std::size_t d = mu.alphabet_size();
  if (w.empty()) throw Error("cylinder_mass: word must be nonempty");
  for (int s : w)
    if (s < 0 || static_cast<std::size_t>(s) >= d)
      throw Error("cylinder_mass: symbol out of range");
  double mass = mu.stationary()[static_cast<std::size_t>(w[0])];
  for (std::size_t t = 0; t + 1 < w.size(); ++t)
    mass *= mu.transitions()(static_cast<std::size_t>(w[t]),
                             static_cast<std::size_t>(w[t + 1]));
  return mass;
}

MarkovMeasure reverse_measure(const MarkovMeasure& mu) {
  const std::size_t d = mu.alphabet_size();
  const auto& pi = mu.stationary();
  std::vector<std::vector<double>> q(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      q[i][j] = pi[j] * mu.transitions()(j, i) / pi[i];
      sum += q[i][j];
    }
    for (std::size_t j = 0; j < d; ++j) q[i][j] /= sum;
  }
  return MarkovMeasure(StochasticMatrix(std::move(q)), pi);
}

Word sample_orbit(const MarkovMeasure& mu, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_orbit: length must be >= 1");
  const std::size_t d = mu.alphabet_size();
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  // Inverse-CDF sampling keeps the draw bit-reproducible across platforms.
  auto draw = [&](auto&& prob_of) {
    const double u = unit();
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < d; ++s) {
      acc += prob_of(s);
      if (u < acc) return static_cast<int>(s);
    }
    return static_cast<int>(d - 1);
  };
  Word w(n, 0);
  w[0] = draw([&](std::size_t s) { return mu.stationary()[s]; });
  for (std::size_t t = 1; t < n; ++t) {
    const auto prev = static_cast<std::size_t>(w[t - 1]);
    w[t] = draw([&](std::size_t s) { return mu.transitions()(prev, s); });
  }
  return w;
}

double ks_entropy(const MarkovMeasure& mu) {
  const std::size_t d = mu.alphabet_size();
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      acc += mu.stationary()[i] * xlogx(mu.transitions()(i, j));
  return -acc;
}

}  // namespace infodyn
