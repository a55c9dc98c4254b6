#pragma once

// Seeded instance generators shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "infodyn/symbolic.hpp"
#include "infodyn/thermo.hpp"

namespace testutil {

inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Strictly positive row-stochastic matrix (hence irreducible and aperiodic).
inline infodyn::StochasticMatrix random_stochastic(std::size_t d, std::mt19937_64& rng,
                                                   double floor = 0.05) {
  std::vector<std::vector<double>> rows(d, std::vector<double>(d, 0.0));
  for (auto& row : rows) {
    double sum = 0.0;
    for (auto& x : row) {
      x = floor + unit_draw(rng);
      sum += x;
    }
    for (auto& x : row) x /= sum;
  }
  return infodyn::StochasticMatrix(rows);
}

inline infodyn::MarkovMeasure random_chain(std::size_t d, std::mt19937_64& rng,
                                           double floor = 0.05) {
  return infodyn::MarkovMeasure(random_stochastic(d, rng, floor));
}

inline infodyn::Potential random_potential(std::size_t d, std::size_t k,
                                           std::mt19937_64& rng, double lo = -1.0,
                                           double hi = 1.0) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < k; ++t) n *= d;
  std::vector<double> tab(n, 0.0);
  for (auto& x : tab) x = lo + (hi - lo) * unit_draw(rng);
  return infodyn::Potential(d, k, std::move(tab));
}

inline std::vector<double> random_probability(std::size_t n, std::mt19937_64& rng,
                                              double floor = 0.05) {
  std::vector<double> p(n, 0.0);
  double sum = 0.0;
  for (auto& x : p) {
    x = floor + unit_draw(rng);
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return p;
}

/// Symmetric-up-to-gauge potential: S(i,j) = S(j,i) plus a coboundary.
inline infodyn::Potential random_symmetric_class_potential(std::size_t d,
                                                           std::mt19937_64& rng) {
  std::vector<double> tab(d * d, 0.0);
  std::vector<double> g(d, 0.0);
  for (auto& x : g) x = -1.0 + 2.0 * unit_draw(rng);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const double s = -1.0 + 2.0 * unit_draw(rng);
      tab[i * d + j] = s;
      tab[j * d + i] = s;
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tab[i * d + j] += g[j] - g[i];
  return infodyn::Potential(d, 2, std::move(tab));
}

}  // namespace testutil
