#include "infodyn/tfca.hpp"

#include <algorithm>
#include <cmath>

#include "spectral_detail.hpp"

namespace infodyn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Node table of a parametric or tabulated potential.
std::vector<double> node_table(const ContinuousPotential& a, const QuadratureMeasure& q) {
  const std::size_t n = q.size();
  std::vector<double> tab(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tab[i * n + j] = a.value(q, i, j);
  return tab;
}

void check_node_count(const ContinuousPotential& a, const QuadratureMeasure& q) {
  // Parametric families on generic rules need enough nodes for a meaningful
  // discretization; tabulated grids and explicit node sets fix their own size.
  if (!a.is_grid() && q.rule() != QuadratureRule::explicit_nodes && q.size() < 8)
    throw Error("tfca: at least 8 quadrature nodes required");
}

struct NodeSystem {
  std::vector<double> abar;
  std::vector<double> g;
  std::vector<double> m;
};

NodeSystem node_system(const ContinuousPotential& a, const QuadratureMeasure& q) {
  check_node_count(a, q);
  const std::size_t n = q.size();
  const std::vector<double> tab = node_table(a, q);
  const detail::EigenTriple t =
      detail::power_triple(detail::build_transfer_k2(tab, n, q.weights()), n);
  NodeSystem sys;
  sys.abar = detail::normalize_table_k2(tab, n, t.h, t.lambda);
  sys.g = detail::jacobian_from_normalized(sys.abar, n, q.weights());
  sys.m = detail::stationary_from_kernel(sys.g, n);
  return sys;
}

}  // namespace

QuadratureMeasure::QuadratureMeasure(QuadratureRule rule, std::vector<double> nodes,
                                     std::vector<double> weights)
    : rule_(rule), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() < 2 || nodes_.size() != weights_.size())
    throw Error("QuadratureMeasure: need at least 2 matching nodes/weights");
  double total = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] >= 0.0) || !(nodes_[i] <= 1.0))
      throw Error("QuadratureMeasure: nodes must lie in [0,1]");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw Error("QuadratureMeasure: nodes must be strictly increasing");
    if (!(weights_[i] > 0.0))
      throw Error("QuadratureMeasure: weights must be positive");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-14)
    throw Error("QuadratureMeasure: weights must sum to 1");
}

QuadratureMeasure QuadratureMeasure::midpoint(std::size_t n) {
  if (n < 2) throw Error("QuadratureMeasure: need at least 2 nodes");
  std::vector<double> nodes(n, 0.0), weights(n, 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    nodes[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return QuadratureMeasure(QuadratureRule::midpoint, std::move(nodes), std::move(weights));
}

QuadratureMeasure QuadratureMeasure::gauss_legendre(std::size_t n) {
  if (n < 2) throw Error("QuadratureMeasure: need at least 2 nodes");
  std::vector<std::pair<double, double>> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Newton from the Chebyshev initial guess on [-1,1].
    double x = std::cos(kPi * (static_cast<double>(k) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    // Weight for the unit interval (half of the [-1,1] weight).
    pts[k] = {0.5 * (x + 1.0), 1.0 / ((1.0 - x * x) * dp * dp)};
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> nodes(n, 0.0), weights(n, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    nodes[k] = pts[k].first;
    weights[k] = pts[k].second;
    total += weights[k];
  }
  for (double& w : weights) w /= total;
  return QuadratureMeasure(QuadratureRule::gauss_legendre, std::move(nodes),
                           std::move(weights));
}

QuadratureMeasure QuadratureMeasure::explicit_nodes(std::vector<double> nodes,
                                                    std::vector<double> weights) {
  return QuadratureMeasure(QuadratureRule::explicit_nodes, std::move(nodes),
                           std::move(weights));
}

ContinuousPotential::ContinuousPotential(Kind k, std::vector<double> par,
                                         std::vector<std::vector<double>> tab)
    : kind_(k), par_(std::move(par)), tab_(std::move(tab)) {}

ContinuousPotential ContinuousPotential::constant(double c) {
  return ContinuousPotential(Kind::constant, {c}, {});
}

ContinuousPotential ContinuousPotential::separable(double a, double b) {
  return ContinuousPotential(Kind::separable, {a, b}, {});
}

ContinuousPotential ContinuousPotential::bilinear(double alpha, double beta,
                                                  double gamma) {
  return ContinuousPotential(Kind::bilinear, {alpha, beta, gamma}, {});
}

ContinuousPotential ContinuousPotential::cosine_coupling(double alpha) {
  return ContinuousPotential(Kind::cosine, {alpha}, {});
}

ContinuousPotential ContinuousPotential::grid(std::vector<std::vector<double>> values) {
  const std::size_t n = values.size();
  if (n < 2) throw Error("ContinuousPotential::grid: need at least a 2x2 table");
  for (const auto& row : values) {
    if (row.size() != n) throw Error("ContinuousPotential::grid: table must be square");
    for (double v : row)
      if (!std::isfinite(v)) throw Error("ContinuousPotential::grid: non-finite value");
  }
  return ContinuousPotential(Kind::grid, {}, std::move(values));
}

std::string ContinuousPotential::family() const {
  switch (kind_) {
    case Kind::constant:
      return "constant";
    case Kind::separable:
      return "separable";
    case Kind::bilinear:
      return "bilinear";
    case Kind::cosine:
      return "cosine";
    default:
      return "grid";
  }
}

double ContinuousPotential::value(const QuadratureMeasure& q, std::size_t i,
                                  std::size_t j) const {
  if (kind_ == Kind::grid) {
    if (tab_.size() != q.size())
      throw Error("ContinuousPotential::grid: table size must match the quadrature");
    return tab_[i][j];
  }
  const double x1 = q.nodes()[i];
  const double x2 = q.nodes()[j];
  switch (kind_) {
    case Kind::constant:
      return par_[0];
    case Kind::separable:
      return par_[0] * x1 + par_[1] * x1 * x1;
    case Kind::bilinear:
      return par_[0] * x1 * x2 + par_[1] * x1 + par_[2] * x2;
    default:
      return par_[0] * std::cos(2.0 * kPi * (x1 - x2));
  }
}

SpectralData nystrom_spectral(const ContinuousPotential& a, const QuadratureMeasure& q) {
  check_node_count(a, q);
  const std::size_t n = q.size();
  const detail::EigenTriple t =
      detail::power_triple(detail::build_transfer_k2(node_table(a, q), n, q.weights()), n);
  SpectralData s;
  s.lambda = t.lambda;
  s.h = t.h;
  s.rho = t.rho;
  return s;
}

TfcaEquilibrium tfca_equilibrium(const ContinuousPotential& a, const QuadratureMeasure& q) {
  const NodeSystem sys = node_system(a, q);
  const std::size_t n = q.size();
  TfcaEquilibrium out;
  out.kernel.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.kernel[i][j] = sys.g[i * n + j];
  out.density = sys.m;
  return out;
}

double tfca_entropy(const ContinuousPotential& a, const QuadratureMeasure& q) {
  const NodeSystem sys = node_system(a, q);
  return detail::two_cylinder_entropy(sys.abar, sys.g, q.size(), sys.m);
}

double tfca_entropy_production(const ContinuousPotential& a, const QuadratureMeasure& q) {
  const NodeSystem sys = node_system(a, q);
  return detail::two_cylinder_ep(sys.abar, sys.g, q.size(), sys.m);
}

}  // namespace infodyn
