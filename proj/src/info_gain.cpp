#include "infodyn/info_gain.hpp"

#include <algorithm>
#include <cmath>

namespace infodyn {

namespace {

constexpr double kMassTol = 1e-12;

void check_probability(const std::vector<double>& p, const char* who) {
  if (p.empty()) throw Error(std::string(who) + ": empty vector");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw Error(std::string(who) + ": entries must be finite and >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kMassTol)
    throw Error(std::string(who) + ": probabilities must sum to 1");
}

}  // namespace

JointDistribution::JointDistribution(std::vector<std::vector<double>> table) {
  d_ = table.size();
  if (d_ == 0) throw Error("JointDistribution: empty table");
  r_ = table[0].size();
  if (r_ == 0) throw Error("JointDistribution: empty rows");
  t_.assign(d_ * r_, 0.0);
  double total = 0.0;
  for (std::size_t x = 0; x < d_; ++x) {
    if (table[x].size() != r_) throw Error("JointDistribution: ragged table");
    for (std::size_t y = 0; y < r_; ++y) {
      const double v = table[x][y];
      if (!(v >= 0.0) || !std::isfinite(v))
        throw Error("JointDistribution: entries must be finite and >= 0");
      t_[x * r_ + y] = v;
      total += v;
    }
  }
  if (std::abs(total - 1.0) > kMassTol)
    throw Error("JointDistribution: total mass must be 1");
}

std::vector<double> JointDistribution::x_marginal() const {
  std::vector<double> p(d_, 0.0);
  for (std::size_t x = 0; x < d_; ++x)
    for (std::size_t y = 0; y < r_; ++y) p[x] += t_[x * r_ + y];
  return p;
}

std::vector<double> JointDistribution::y_marginal() const {
  std::vector<double> q(r_, 0.0);
  for (std::size_t x = 0; x < d_; ++x)
    for (std::size_t y = 0; y < r_; ++y) q[y] += t_[x * r_ + y];
  return q;
}

ProbabilityKernel::ProbabilityKernel(std::vector<std::vector<double>> rows) {
  r_ = rows.size();
  if (r_ == 0) throw Error("ProbabilityKernel: empty family");
  d_ = rows[0].size();
  t_.assign(r_ * d_, 0.0);
  for (std::size_t y = 0; y < r_; ++y) {
    if (rows[y].size() != d_) throw Error("ProbabilityKernel: ragged table");
    check_probability(rows[y], "ProbabilityKernel");
    for (std::size_t x = 0; x < d_; ++x) t_[y * d_ + x] = rows[y][x];
  }
}

ProbabilityKernel ProbabilityKernel::constant(const std::vector<double>& nu,
                                              std::size_t r) {
  check_probability(nu, "ProbabilityKernel::constant");
  return ProbabilityKernel(std::vector<std::vector<double>>(r, nu));
}

double shannon_entropy(const std::vector<double>& p, LogBase base) {
  check_probability(p, "shannon_entropy");
  double acc = 0.0;
  for (double x : p) acc += xlogx(x);
  return -acc * log_base_factor(base);
}

JacobianTable joint_jacobian(const JointDistribution& pi) {
  JacobianTable out;
  out.d = pi.x_size();
  out.r = pi.y_size();
  out.j.assign(out.d * out.r, 0.0);
  out.zero_q.assign(out.r, 0);
  const std::vector<double> q = pi.y_marginal();
  for (std::size_t y = 0; y < out.r; ++y) {
    if (q[y] > 0.0) {
      for (std::size_t x = 0; x < out.d; ++x) out.j[x * out.r + y] = pi(x, y) / q[y];
    } else {
      out.zero_q[y] = 1;
      for (std::size_t x = 0; x < out.d; ++x)
        out.j[x * out.r + y] = 1.0 / static_cast<double>(out.d);
    }
  }
  return out;
}

double conditional_entropy(const JointDistribution& pi, LogBase base) {
  const std::vector<double> q = pi.y_marginal();
  double acc = 0.0;
  for (std::size_t x = 0; x < pi.x_size(); ++x)
    for (std::size_t y = 0; y < pi.y_size(); ++y) {
      const double v = pi(x, y);
      if (v > 0.0) acc += v * std::log(v / q[y]);
    }
  return -acc * log_base_factor(base);
}

double information_gain(const JointDistribution& pi, LogBase base) {
  const std::vector<double> p = pi.x_marginal();
  const std::vector<double> q = pi.y_marginal();
  const double route_entropy =
      shannon_entropy(p, LogBase::natural) - conditional_entropy(pi, LogBase::natural);
  double route_mutual = 0.0;
  for (std::size_t x = 0; x < pi.x_size(); ++x)
    for (std::size_t y = 0; y < pi.y_size(); ++y) {
      const double v = pi(x, y);
      if (v > 0.0) route_mutual += v * std::log(v / (p[x] * q[y]));
    }
  if (std::abs(route_entropy - route_mutual) > 1e-12)
    throw Error("information_gain: the two evaluation routes disagree");
  return route_entropy * log_base_factor(base);
}

ExtReal kl_divergence(const std::vector<double>& p, const std::vector<double>& nu) {
  check_probability(p, "kl_divergence");
  check_probability(nu, "kl_divergence");
  if (p.size() != nu.size()) throw Error("kl_divergence: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && nu[i] == 0.0) return ExtReal::infinity();
    if (p[i] > 0.0) acc += p[i] * std::log(p[i] / nu[i]);
  }
  return acc;
}

ExtReal kernel_information_gain(const JointDistribution& pi, const ProbabilityKernel& k) {
  if (k.x_size() != pi.x_size() || k.y_size() != pi.y_size())
    throw Error("kernel_information_gain: shape mismatch");
  const std::vector<double> q = pi.y_marginal();
  double acc = 0.0;
  for (std::size_t x = 0; x < pi.x_size(); ++x)
    for (std::size_t y = 0; y < pi.y_size(); ++y) {
      const double v = pi(x, y);
      if (v == 0.0) continue;
      const double ref = k(y, x) * q[y];
      if (ref == 0.0) return ExtReal::infinity();
      acc += v * std::log(v / ref);
    }
  return acc;
}

ExtReal ig_shift(const JointDistribution& pi, const std::vector<double>& nu,
                 const std::vector<std::vector<double>>& phi0, LogBase base) {
  check_probability(nu, "ig_shift");
  if (nu.size() != pi.x_size()) throw Error("ig_shift: weight size mismatch");
  if (phi0.size() != pi.x_size()) throw Error("ig_shift: phi0 must be d x r");
  for (const auto& row : phi0)
    if (row.size() != pi.y_size()) throw Error("ig_shift: phi0 must be d x r");
  for (std::size_t y = 0; y < pi.y_size(); ++y) {
    double sum = 0.0;
    for (std::size_t x = 0; x < pi.x_size(); ++x) sum += std::exp(phi0[x][y]) * nu[x];
    if (std::abs(sum - 1.0) > 1e-10)
      throw NotNormalized("ig_shift: phi0 is not nu-normalized at column " +
                          std::to_string(y));
  }
  const ExtReal base_gain =
      kernel_information_gain(pi, ProbabilityKernel::constant(nu, pi.y_size()));
  if (base_gain.is_infinite()) return base_gain;
  double tilt = 0.0;
  for (std::size_t x = 0; x < pi.x_size(); ++x)
    for (std::size_t y = 0; y < pi.y_size(); ++y) tilt += pi(x, y) * phi0[x][y];
  return ExtReal((base_gain.value() - tilt) * log_base_factor(base));
}

double variational_entropy_oracle(const JointDistribution& pi, std::size_t iters,
                                  double step) {
  if (iters < 1) throw Error("variational_entropy_oracle: iters must be >= 1");
  if (!(step > 0.0) || step > 1.0)
    throw Error("variational_entropy_oracle: step must lie in (0, 1]");
  const std::size_t d = pi.x_size();
  const std::size_t r = pi.y_size();
  const std::vector<double> q = pi.y_marginal();

  // Ascent in the unconstrained parameterization f = g - log sum_x e^g.
  // Each step moves g toward the per-column maximizer log(pi/Q) (clipped to
  // keep it finite where pi vanishes); every iterate is exactly normalized,
  // so the running value never exceeds -H(pi).
  constexpr double kLogFloor = -700.0;
  std::vector<double> target(d * r, 0.0);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < r; ++y) {
      if (q[y] > 0.0 && pi(x, y) > 0.0)
        target[x * r + y] = std::max(std::log(pi(x, y) / q[y]), kLogFloor);
      else
        target[x * r + y] = kLogFloor;
    }

  std::vector<double> g(d * r, 0.0);
  double value = 0.0;
  for (std::size_t it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += step * (target[i] - g[i]);
    value = 0.0;
    for (std::size_t y = 0; y < r; ++y) {
      double colmax = g[y];
      for (std::size_t x = 1; x < d; ++x) colmax = std::max(colmax, g[x * r + y]);
      double z = 0.0;
      for (std::size_t x = 0; x < d; ++x) z += std::exp(g[x * r + y] - colmax);
      const double logz = colmax + std::log(z);
      for (std::size_t x = 0; x < d; ++x)
        if (pi(x, y) > 0.0) value += pi(x, y) * (g[x * r + y] - logz);
    }
  }
  return value;
}

}  // namespace infodyn
