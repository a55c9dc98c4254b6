#include "infodyn/involution.hpp"

#include <algorithm>
#include <cmath>

#include "spectral_detail.hpp"

namespace infodyn {

namespace {

Potential as_depth2(const Potential& a) {
  if (a.depth() > 2) throw Error("involution machinery requires depth <= 2");
  if (a.depth() == 2) return a;
  const std::size_t d = a.alphabet_size();
  std::vector<double> tab(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tab[i * d + j] = a.table()[i];
  return Potential(d, 2, std::move(tab));
}

struct NormalizedSystem {
  std::vector<double> abar;  // depth-2 table
  std::vector<double> g;     // column-normalized kernel
  std::vector<double> m;     // stationary
};

NormalizedSystem normalized_system(const Potential& a, const AprioriWeights& nu) {
  const Potential a2 = as_depth2(a);
  const std::size_t d = a2.alphabet_size();
  const SpectralData s = spectral_data(a2, nu);
  NormalizedSystem out;
  out.abar = detail::normalize_table_k2(a2.table(), d, s.h, s.lambda);
  out.g = detail::jacobian_from_normalized(out.abar, d, nu.values());
  out.m = detail::stationary_from_kernel(out.g, d);
  return out;
}

double mean_exponent_stderr(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const auto n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

}  // namespace

InvolutionData involution_kernel(const Potential& a) {
  return involution_kernel(a, std::vector<double>(a.alphabet_size(), 0.0));
}

InvolutionData involution_kernel(const Potential& a, std::vector<double> gauge) {
  const Potential a2 = as_depth2(a);
  const std::size_t d = a2.alphabet_size();
  if (gauge.size() != d) throw Error("involution_kernel: gauge size mismatch");
  std::vector<std::vector<double>> w(d, std::vector<double>(d, 0.0));
  for (std::size_t y1 = 0; y1 < d; ++y1)
    for (std::size_t x1 = 0; x1 < d; ++x1) w[y1][x1] = a2.at(y1, x1) + gauge[y1];
  std::vector<double> minus(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      minus[i * d + j] = a2.at(j, i) + gauge[j] - gauge[i];
  return InvolutionData{std::move(w), Potential(d, 2, std::move(minus)),
                        std::move(gauge)};
}

SymmetryResult is_symmetric(const Potential& a, const AprioriWeights& nu, double tol) {
  (void)nu;  // the coboundary class does not depend on the a priori choice
  const Potential a2 = as_depth2(a);
  const std::size_t d = a2.alphabet_size();
  // A(i,j) - A(j,i) must be the coboundary g(j) - g(i); anchor g(0) = 0.
  std::vector<double> g(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) g[j] = a2.at(0, j) - a2.at(j, 0);
  double worst = 0.0, worst_strict = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = a2.at(i, j) - a2.at(j, i);
      worst = std::max(worst, std::abs(diff - (g[j] - g[i])));
      worst_strict = std::max(worst_strict, std::abs(diff));
    }
  SymmetryResult r;
  r.strict = worst_strict <= tol;
  r.symmetric = worst <= tol;
  if (r.symmetric) r.gauge = std::move(g);
  return r;
}

ExtReal entropy_production_markov(const MarkovMeasure& mu) {
  const std::size_t d = mu.alphabet_size();
  const auto& pi = mu.stationary();
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double fwd = mu.transitions()(i, j);
      const double bwd = mu.transitions()(j, i);
      if (fwd > 0.0 && bwd == 0.0) return ExtReal::infinity();
      if (fwd > 0.0)
        acc += pi[i] * fwd * std::log(pi[i] * fwd / (pi[j] * bwd));
    }
  return acc;
}

double entropy_production_potential(const Potential& a, const AprioriWeights& nu) {
  const NormalizedSystem sys = normalized_system(a, nu);
  return detail::two_cylinder_ep(sys.abar, sys.g, a.alphabet_size(), sys.m);
}

double specific_gain(const MarkovMeasure& eta, const Potential& a,
                     const AprioriWeights& nu) {
  if (eta.alphabet_size() != a.alphabet_size())
    throw Error("specific_gain: alphabet size mismatch");
  const SpectralData s = spectral_data(a, nu);
  return s.pressure() - integrate(a, eta) - relative_entropy(eta, nu);
}

GainReport cylinder_gain_estimate(const MarkovMeasure& eta, const MarkovMeasure& mu,
                                  std::size_t n) {
  const std::size_t d = eta.alphabet_size();
  if (mu.alphabet_size() != d)
    throw Error("cylinder_gain_estimate: alphabet size mismatch");
  if (n < 2) throw Error("cylinder_gain_estimate: depth must be >= 2");
  double words = 1.0;
  for (std::size_t t = 0; t < n; ++t) words *= static_cast<double>(d);
  if (words > 1e7)
    throw EnumerationTooLarge("cylinder_gain_estimate: d^n exceeds 1e7");

  double acc = 0.0;
  bool infinite = false;
  // Depth-first over all words, pruning eta-null subtrees (they contribute 0)
  // and mu-null subtrees with eta mass (they force +infinity).
  auto rec = [&](auto&& self, std::size_t pos, int last, double em, double mm) -> void {
    if (infinite || em == 0.0) return;
    if (mm == 0.0) {
      infinite = true;
      return;
    }
    if (pos == n) {
      acc += em * std::log(em / mm);
      return;
    }
    for (std::size_t s = 0; s < d; ++s) {
      const double estep = pos == 0 ? eta.stationary()[s]
                                    : eta.transitions()(static_cast<std::size_t>(last), s);
      const double mstep = pos == 0 ? mu.stationary()[s]
                                    : mu.transitions()(static_cast<std::size_t>(last), s);
      self(self, pos + 1, static_cast<int>(s), em * estep, mm * mstep);
    }
  };
  rec(rec, 0, -1, 1.0, 1.0);

  GainReport r;
  r.route = GainRoute::cylinder_sum;
  r.n = n;
  r.value = infinite ? ExtReal::infinity()
                     : ExtReal(acc / static_cast<double>(n));
  return r;
}

std::vector<double> orbit_gain_trials(const MarkovMeasure& eta, const MarkovMeasure& mu,
                                      std::size_t n, std::size_t trials,
                                      std::uint64_t seed) {
  const std::size_t d = eta.alphabet_size();
  if (mu.alphabet_size() != d)
    throw Error("orbit_gain_estimate: alphabet size mismatch");
  if (n < 1) throw Error("orbit_gain_estimate: length must be >= 1");
  if (trials < 2) throw Error("orbit_gain_estimate: at least 2 trials required");

  std::vector<double> exponents(trials, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    const Word w = sample_orbit(eta, n, detail::substream_seed(seed, t));
    double log_eta = std::log(eta.stationary()[static_cast<std::size_t>(w[0])]);
    const double mu0 = mu.stationary()[static_cast<std::size_t>(w[0])];
    bool escaped = (mu0 == 0.0);
    double log_mu = escaped ? 0.0 : std::log(mu0);
    for (std::size_t p = 0; p + 1 < n && !escaped; ++p) {
      const auto from = static_cast<std::size_t>(w[p]);
      const auto to = static_cast<std::size_t>(w[p + 1]);
      log_eta += std::log(eta.transitions()(from, to));
      const double step = mu.transitions()(from, to);
      if (step == 0.0)
        escaped = true;
      else
        log_mu += std::log(step);
    }
    exponents[t] = escaped ? std::numeric_limits<double>::infinity()
                           : (log_eta - log_mu) / static_cast<double>(n);
  }
  return exponents;
}

GainReport orbit_gain_estimate(const MarkovMeasure& eta, const MarkovMeasure& mu,
                               std::size_t n, std::size_t trials, std::uint64_t seed) {
  const std::vector<double> exponents = orbit_gain_trials(eta, mu, n, trials, seed);

  GainReport r;
  r.route = GainRoute::orbit_monte_carlo;
  r.n = n;
  for (double x : exponents)
    if (std::isinf(x)) {
      r.value = ExtReal::infinity();
      return r;
    }
  double mean = 0.0;
  for (double x : exponents) mean += x;
  mean /= static_cast<double>(exponents.size());
  r.value = mean;
  r.stderr_value = mean_exponent_stderr(exponents, mean);
  return r;
}

std::pair<double, double> dual_eigenvalue_check(const Potential& a,
                                                const AprioriWeights& nu) {
  const double lam = spectral_data(as_depth2(a), nu).lambda;
  const double lam_minus = spectral_data(involution_kernel(a).a_minus, nu).lambda;
  return {lam, lam_minus};
}

}  // namespace infodyn
