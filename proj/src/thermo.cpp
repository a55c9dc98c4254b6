#include "infodyn/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "spectral_detail.hpp"

namespace infodyn {

namespace {

constexpr double kNormalizedTol = 1e-10;

std::size_t checked_pow(std::size_t d, std::size_t k) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < k; ++t) {
    if (n > 100000000 / d) throw Error("Potential: table too large");
    n *= d;
  }
  return n;
}

// Depth-1 potentials enter the depth-2 machinery as tables constant in the
// second symbol.
Potential lift_to_depth2(const Potential& a) {
  const std::size_t d = a.alphabet_size();
  std::vector<double> tab(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tab[i * d + j] = a.table()[i];
  return Potential(d, 2, std::move(tab));
}

// Transfer matrix for depth k >= 2 on the alphabet of (k-1)-blocks:
// B[U][V] = exp(A(v1 . u)) nu_{v1} when the blocks overlap compatibly.
// For k = 2 this is the dense d x d matrix of the shared builder.
std::vector<double> block_transfer(const Potential& a, const AprioriWeights& nu) {
  const std::size_t d = a.alphabet_size();
  const std::size_t k = a.depth();
  const std::size_t dim = checked_pow(d, k - 1);
  std::vector<double> b(dim * dim, 0.0);
  for (std::size_t u = 0; u < dim; ++u)
    for (std::size_t s = 0; s < d; ++s) {
      const std::size_t v = s * (dim / d) + u / d;
      b[u * dim + v] = std::exp(a.table()[s * dim + u]) * nu[s];
    }
  return b;
}

void require_same_alphabet(const Potential& a, const AprioriWeights& nu) {
  if (a.alphabet_size() != nu.size())
    throw Error("alphabet size mismatch between potential and weights");
}

MarkovMeasure equilibrium_from_kernel(const std::vector<double>& g, std::size_t dim) {
  const std::vector<double> m = detail::stationary_from_kernel(g, dim);
  std::vector<std::vector<double>> p(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      p[i][j] = g[i * dim + j] * m[j] / m[i];
      sum += p[i][j];
    }
    for (std::size_t j = 0; j < dim; ++j) p[i][j] /= sum;
  }
  return MarkovMeasure(StochasticMatrix(std::move(p)), m);
}

}  // namespace

AprioriWeights::AprioriWeights(std::vector<double> w) : w_(std::move(w)) {
  if (w_.size() < 2) throw Error("AprioriWeights: alphabet size must be >= 2");
  for (double x : w_)
    if (!(x > 0.0) || !std::isfinite(x))
      throw Error("AprioriWeights: weights must be finite and > 0");
}

AprioriWeights AprioriWeights::counting(std::size_t d) {
  return AprioriWeights(std::vector<double>(d, 1.0));
}

AprioriWeights AprioriWeights::uniform(std::size_t d) {
  return AprioriWeights(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

double AprioriWeights::total_mass() const {
  double s = 0.0;
  for (double x : w_) s += x;
  return s;
}

bool AprioriWeights::is_probability(double tol) const {
  return std::abs(total_mass() - 1.0) <= tol;
}

Potential::Potential(std::size_t d, std::size_t k, std::vector<double> table)
    : d_(d), k_(k), tab_(std::move(table)) {
  if (d_ < 2) throw Error("Potential: alphabet size must be >= 2");
  if (k_ < 1) throw Error("Potential: depth must be >= 1");
  if (tab_.size() != checked_pow(d_, k_))
    throw Error("Potential: table must have d^k entries");
  for (double x : tab_)
    if (!std::isfinite(x)) throw Error("Potential: table entries must be finite");
}

Potential Potential::constant(std::size_t d, std::size_t k, double c) {
  return Potential(d, k, std::vector<double>(checked_pow(d, k), c));
}

Potential Potential::log_jacobian(const MarkovMeasure& mu) {
  const std::size_t d = mu.alphabet_size();
  std::vector<double> tab(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double p = mu.transitions()(i, j);
      if (!(p > 0.0))
        throw Error("Potential::log_jacobian: requires strictly positive transitions");
      tab[i * d + j] = std::log(mu.stationary()[i] * p / mu.stationary()[j]);
    }
  return Potential(d, 2, std::move(tab));
}

double Potential::operator()(const Word& w) const {
  if (w.size() < k_) throw Error("Potential: word shorter than the depth");
  std::size_t idx = 0;
  for (std::size_t t = 0; t < k_; ++t) {
    const int s = w[t];
    if (s < 0 || static_cast<std::size_t>(s) >= d_)
      throw Error("Potential: symbol out of range");
    idx = idx * d_ + static_cast<std::size_t>(s);
  }
  return tab_[idx];
}

Potential Potential::transpose() const {
  if (k_ > 2) throw Error("Potential::transpose: depth must be <= 2");
  if (k_ == 1) return lift_to_depth2(*this).transpose();
  std::vector<double> tab(d_ * d_, 0.0);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) tab[i * d_ + j] = tab_[j * d_ + i];
  return Potential(d_, 2, std::move(tab));
}

Potential Potential::shifted(double c) const {
  std::vector<double> tab = tab_;
  for (double& x : tab) x += c;
  return Potential(d_, k_, std::move(tab));
}

double SpectralData::pressure() const { return std::log(lambda); }

std::vector<double> transfer_apply(const Potential& a, const AprioriWeights& nu,
                                   const std::vector<double>& f) {
  require_same_alphabet(a, nu);
  const std::size_t d = a.alphabet_size();
  const std::size_t k = a.depth();
  const std::size_t dim = checked_pow(d, k - 1);
  if (f.size() != dim)
    throw Error("transfer_apply: f must be indexed by words of length depth-1");
  std::vector<double> out(dim, 0.0);
  for (std::size_t u = 0; u < dim; ++u) {
    double acc = 0.0;
    for (std::size_t s = 0; s < d; ++s)
      acc += std::exp(a.table()[s * dim + u]) * nu[s] * f[s * (dim / d) + u / d];
    out[u] = acc;
  }
  return out;
}

SpectralData spectral_data(const Potential& a, const AprioriWeights& nu) {
  require_same_alphabet(a, nu);
  const std::size_t d = a.alphabet_size();
  const std::size_t k = a.depth();
  detail::EigenTriple t;
  if (k == 1) {
    double lambda = 0.0;
    for (std::size_t s = 0; s < d; ++s) lambda += std::exp(a.table()[s]) * nu[s];
    t = detail::power_triple({lambda}, 1);
  } else if (k == 2) {
    t = detail::power_triple(detail::build_transfer_k2(a.table(), d, nu.values()), d);
  } else {
    t = detail::power_triple(block_transfer(a, nu), checked_pow(d, k - 1));
  }
  SpectralData s;
  s.lambda = t.lambda;
  s.h = std::move(t.h);
  s.rho = std::move(t.rho);
  return s;
}

Potential normalize_potential(const Potential& a, const SpectralData& s) {
  const std::size_t d = a.alphabet_size();
  const std::size_t k = a.depth();
  const std::size_t dim = checked_pow(d, k - 1);
  if (s.h.size() != dim || s.rho.size() != dim)
    throw Error("normalize_potential: spectral data does not match the potential");
  if (k == 2)
    return Potential(d, 2, detail::normalize_table_k2(a.table(), d, s.h, s.lambda));
  std::vector<double> tab(a.table().size(), 0.0);
  const double loglam = std::log(s.lambda);
  for (std::size_t w = 0; w < tab.size(); ++w) {
    const std::size_t prefix = w / d;
    const std::size_t suffix = w % dim;
    tab[w] = a.table()[w] + std::log(s.h[prefix]) - std::log(s.h[suffix]) - loglam;
  }
  return Potential(d, k, std::move(tab));
}

bool is_normalized(const Potential& a, const AprioriWeights& nu) {
  require_same_alphabet(a, nu);
  const std::size_t d = a.alphabet_size();
  const std::size_t dim = checked_pow(d, a.depth() - 1);
  double worst = 0.0;
  for (std::size_t u = 0; u < dim; ++u) {
    double sum = 0.0;
    for (std::size_t s = 0; s < d; ++s) sum += std::exp(a.table()[s * dim + u]) * nu[s];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst <= kNormalizedTol;
}

MarkovMeasure equilibrium_measure(const Potential& a, const AprioriWeights& nu) {
  require_same_alphabet(a, nu);
  if (a.depth() == 1) return equilibrium_measure(lift_to_depth2(a), nu);
  const std::size_t d = a.alphabet_size();
  const SpectralData s = spectral_data(a, nu);
  const Potential abar = normalize_potential(a, s);
  if (a.depth() == 2) {
    const std::vector<double> g =
        detail::jacobian_from_normalized(abar.table(), d, nu.values());
    return equilibrium_from_kernel(g, d);
  }
  // Blocks of length k-1 with overlapping-prepend transitions.
  const std::size_t dim = checked_pow(d, a.depth() - 1);
  std::vector<double> g(dim * dim, 0.0);
  for (std::size_t u = 0; u < dim; ++u)
    for (std::size_t s2 = 0; s2 < d; ++s2) {
      const std::size_t v = s2 * (dim / d) + u / d;
      g[v * dim + u] = std::exp(abar.table()[s2 * dim + u]) * nu[s2];
    }
  for (std::size_t u = 0; u < dim; ++u) {
    double sum = 0.0;
    for (std::size_t v = 0; v < dim; ++v) sum += g[v * dim + u];
    for (std::size_t v = 0; v < dim; ++v) g[v * dim + u] /= sum;
  }
  return equilibrium_from_kernel(g, dim);
}

double relative_entropy(const MarkovMeasure& mu, const AprioriWeights& nu) {
  if (mu.alphabet_size() != nu.size())
    throw Error("relative_entropy: alphabet size mismatch");
  double acc = ks_entropy(mu);
  for (std::size_t i = 0; i < nu.size(); ++i)
    acc += mu.stationary()[i] * std::log(nu[i]);
  return acc;
}

double integrate(const Potential& a, const MarkovMeasure& eta) {
  if (a.alphabet_size() != eta.alphabet_size())
    throw Error("integrate: alphabet size mismatch");
  const std::size_t d = a.alphabet_size();
  if (a.depth() == 1) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += eta.stationary()[i] * a.table()[i];
    return acc;
  }
  if (a.depth() == 2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        acc += eta.stationary()[i] * eta.transitions()(i, j) * a.at(i, j);
    return acc;
  }
  // Exhaustive k-cylinder sum; table sizes are already bounded.
  double acc = 0.0;
  Word w(a.depth(), 0);
  auto rec = [&](auto&& self, std::size_t pos, double mass) -> void {
    if (mass == 0.0) return;
    if (pos == a.depth()) {
      acc += mass * a(w);
      return;
    }
    for (std::size_t s = 0; s < d; ++s) {
      w[pos] = static_cast<int>(s);
      const double step =
          pos == 0 ? eta.stationary()[s]
                   : eta.transitions()(static_cast<std::size_t>(w[pos - 1]), s);
      self(self, pos + 1, mass * step);
    }
  };
  rec(rec, 0, 1.0);
  return acc;
}

}  // namespace infodyn
