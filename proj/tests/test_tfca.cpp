#include "doctest.h"

#include <cmath>

#include "infodyn/involution.hpp"
#include "infodyn/tfca.hpp"
#include "spectral_detail.hpp"
#include "test_util.hpp"

using namespace infodyn;

namespace {

double separable_f(double a, double b, double x) { return a * x + b * x * x; }

}  // namespace

TEST_CASE("quadrature measures") {
  SUBCASE("midpoint") {
    const QuadratureMeasure q = QuadratureMeasure::midpoint(16);
    CHECK(q.size() == 16);
    CHECK(q.nodes().front() == doctest::Approx(1.0 / 32.0));
    double sum = 0.0;
    for (double w : q.weights()) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("gauss-legendre integrates polynomials of high degree") {
    const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(12);
    double sum = 0.0, quartic = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      sum += q.weights()[i];
      quartic += q.weights()[i] * std::pow(q.nodes()[i], 14);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(quartic == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(q.nodes()[i] > q.nodes()[i - 1]);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(QuadratureMeasure::explicit_nodes({0.5, 0.2}, {0.5, 0.5}), Error);
    CHECK_THROWS_AS(QuadratureMeasure::explicit_nodes({0.0, 1.0}, {0.7, 0.7}), Error);
    CHECK_NOTHROW(QuadratureMeasure::explicit_nodes({0.0, 1.0}, {0.5, 0.5}));
  }
}

TEST_CASE("nystrom spectral data") {
  SUBCASE("zero potential") {
    const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(16);
    const SpectralData s = nystrom_spectral(ContinuousPotential::constant(0.0), q);
    CHECK(s.lambda == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t i = 0; i < q.size(); ++i) {
      CHECK(s.h[i] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(s.rho[i] == doctest::Approx(q.weights()[i]).epsilon(1e-12));
    }
  }

  SUBCASE("separable potentials have closed-form eigenvalue and flat h") {
    const double a = 0.8, b = -0.4;
    const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(24);
    const SpectralData s = nystrom_spectral(ContinuousPotential::separable(a, b), q);
    double lam = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
      lam += q.weights()[i] * std::exp(separable_f(a, b, q.nodes()[i]));
    CHECK(s.lambda == doctest::Approx(lam).epsilon(1e-12));
    for (double h : s.h) CHECK(h == doctest::Approx(1.0).epsilon(1e-11));
  }

  SUBCASE("constants shift the pressure") {
    const QuadratureMeasure q = QuadratureMeasure::midpoint(16);
    const SpectralData s = nystrom_spectral(ContinuousPotential::constant(-0.3), q);
    CHECK(s.lambda == doctest::Approx(std::exp(-0.3)).epsilon(1e-13));
  }

  SUBCASE("too few nodes for a parametric family") {
    CHECK_THROWS_AS(nystrom_spectral(ContinuousPotential::constant(0.0),
                                     QuadratureMeasure::midpoint(4)),
                    Error);
  }
}

TEST_CASE("tfca equilibrium") {
  SUBCASE("separable potentials give a product law independent of the suffix") {
    const double a = 0.5, b = 0.3;
    const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(20);
    const TfcaEquilibrium eq =
        tfca_equilibrium(ContinuousPotential::separable(a, b), q);
    const SpectralData s = nystrom_spectral(ContinuousPotential::separable(a, b), q);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double expect =
          q.weights()[i] * std::exp(separable_f(a, b, q.nodes()[i])) / s.lambda;
      CHECK(eq.density[i] == doctest::Approx(expect).epsilon(1e-10));
      for (std::size_t j = 0; j < q.size(); ++j)
        CHECK(eq.kernel[i][j] == doctest::Approx(expect).epsilon(1e-10));
    }
  }

  SUBCASE("zero potential gives the product of the weights") {
    const QuadratureMeasure q = QuadratureMeasure::midpoint(12);
    const TfcaEquilibrium eq = tfca_equilibrium(ContinuousPotential::constant(0.0), q);
    for (std::size_t i = 0; i < q.size(); ++i)
      CHECK(eq.density[i] == doctest::Approx(q.weights()[i]).epsilon(1e-12));
  }

  SUBCASE("bilinear with alpha = 0 degenerates to the separable case") {
    const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(16);
    const TfcaEquilibrium b0 =
        tfca_equilibrium(ContinuousPotential::bilinear(0.0, 0.7, 0.2), q);
    // beta x1 + gamma x2 is cohomologous to (beta + gamma) x1, so the
    // equilibrium matches that separable potential.
    const TfcaEquilibrium sep =
        tfca_equilibrium(ContinuousPotential::separable(0.9, 0.0), q);
    for (std::size_t i = 0; i < q.size(); ++i)
      CHECK(b0.density[i] == doctest::Approx(sep.density[i]).epsilon(1e-9));
  }

  SUBCASE("kernel columns are normalized") {
    const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(16);
    const TfcaEquilibrium eq =
        tfca_equilibrium(ContinuousPotential::bilinear(0.9, -0.4, 0.6), q);
    for (std::size_t j = 0; j < q.size(); ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) col += eq.kernel[i][j];
      CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("tfca relative entropy") {
  const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(24);

  SUBCASE("zero and constant potentials have zero entropy") {
    CHECK(std::abs(tfca_entropy(ContinuousPotential::constant(0.0), q)) <= 1e-12);
    CHECK(std::abs(tfca_entropy(ContinuousPotential::constant(1.3), q)) <= 1e-12);
  }

  SUBCASE("separable closed form") {
    const double a = 0.6, b = -0.2;
    const ContinuousPotential pot = ContinuousPotential::separable(a, b);
    const SpectralData s = nystrom_spectral(pot, q);
    const TfcaEquilibrium eq = tfca_equilibrium(pot, q);
    double mean_f = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
      mean_f += eq.density[i] * separable_f(a, b, q.nodes()[i]);
    CHECK(tfca_entropy(pot, q) ==
          doctest::Approx(std::log(s.lambda) - mean_f).epsilon(1e-11));
  }

  SUBCASE("never positive") {
    CHECK(tfca_entropy(ContinuousPotential::bilinear(1.2, -0.5, 0.8), q) <= 1e-10);
    CHECK(tfca_entropy(ContinuousPotential::cosine_coupling(0.7), q) <= 1e-10);
  }
}

TEST_CASE("tfca entropy production") {
  const QuadratureMeasure q = QuadratureMeasure::gauss_legendre(32);

  SUBCASE("swap-symmetric potentials produce nothing") {
    CHECK(std::abs(tfca_entropy_production(ContinuousPotential::cosine_coupling(0.8), q)) <=
          1e-10);
    CHECK(std::abs(tfca_entropy_production(ContinuousPotential::constant(0.4), q)) <=
          1e-12);
  }

  SUBCASE("separable potentials have reversible product equilibria") {
    const ContinuousPotential pot = ContinuousPotential::separable(0.9, -0.3);
    const TfcaEquilibrium eq = tfca_equilibrium(pot, q);
    // closed form: sum_i,j m_i m_j [Abar(i,j) - Abar(j,i)] telescopes to 0
    CHECK(std::abs(tfca_entropy_production(pot, q)) <= 1e-10);
    // the kernel is genuinely a product, so this is detailed balance
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(eq.kernel[i][j] * eq.density[j] ==
              doctest::Approx(eq.kernel[j][i] * eq.density[i]).epsilon(1e-10));
  }

  SUBCASE("asymmetric bilinear couplings are irreversible but nonnegative") {
    const double ep =
        tfca_entropy_production(ContinuousPotential::bilinear(1.1, 0.8, -0.6), q);
    CHECK(ep >= -1e-10);
  }
}

TEST_CASE("quadrature refinement and rule independence") {
  const ContinuousPotential pot = ContinuousPotential::bilinear(0.7, 0.3, -0.4);

  SUBCASE("Gauss-Legendre eigenvalue refinement 32 -> 64") {
    const double l32 = nystrom_spectral(pot, QuadratureMeasure::gauss_legendre(32)).lambda;
    const double l64 = nystrom_spectral(pot, QuadratureMeasure::gauss_legendre(64)).lambda;
    CHECK(std::abs(l32 - l64) / l64 <= 1e-6);
  }

  SUBCASE("midpoint and Gauss-Legendre agree at 64 nodes for smooth families") {
    const QuadratureMeasure mid = QuadratureMeasure::midpoint(64);
    const QuadratureMeasure gl = QuadratureMeasure::gauss_legendre(64);
    for (const ContinuousPotential& a :
         {ContinuousPotential::bilinear(0.25, 0.15, 0.1),
          ContinuousPotential::cosine_coupling(0.3)}) {
      CHECK(std::abs(nystrom_spectral(a, mid).lambda - nystrom_spectral(a, gl).lambda) <=
            1e-5);
      CHECK(std::abs(tfca_entropy(a, mid) - tfca_entropy(a, gl)) <= 1e-5);
      CHECK(std::abs(tfca_entropy_production(a, mid) -
                     tfca_entropy_production(a, gl)) <= 1e-5);
    }
  }
}

TEST_CASE("two-point node systems reproduce the finite theory exactly") {
  std::mt19937_64 rng(231);
  const QuadratureMeasure q01 = QuadratureMeasure::explicit_nodes({0.0, 1.0}, {0.5, 0.5});
  const AprioriWeights half({0.5, 0.5});
  for (int rep = 0; rep < 5; ++rep) {
    const Potential a = testutil::random_potential(2, 2, rng);
    const ContinuousPotential grid = ContinuousPotential::grid(
        {{a.at(0, 0), a.at(0, 1)}, {a.at(1, 0), a.at(1, 1)}});

    const SpectralData fin = spectral_data(a, half);
    const SpectralData node = nystrom_spectral(grid, q01);
    CHECK(node.lambda == fin.lambda);
    CHECK(node.h == fin.h);
    CHECK(node.rho == fin.rho);

    const MarkovMeasure eq = equilibrium_measure(a, half);
    const TfcaEquilibrium teq = tfca_equilibrium(grid, q01);
    CHECK(teq.density == eq.stationary());

    CHECK(tfca_entropy_production(grid, q01) == entropy_production_potential(a, half));

    // entropy: same shared kernel arithmetic, fed from the public finite ops
    const Potential abar = normalize_potential(a, fin);
    const auto g = detail::jacobian_from_normalized(abar.table(), 2, half.values());
    CHECK(tfca_entropy(grid, q01) ==
          detail::two_cylinder_entropy(abar.table(), g, 2, eq.stationary()));
    CHECK(tfca_entropy(grid, q01) ==
          doctest::Approx(relative_entropy(eq, half)).epsilon(1e-12));
  }
}

TEST_CASE("node-level variational inequality") {
  std::mt19937_64 rng(241);
  const QuadratureMeasure q = QuadratureMeasure::midpoint(8);
  const ContinuousPotential pot = ContinuousPotential::bilinear(1.3, -0.7, 0.5);
  // The node system is literally a finite-alphabet transfer operator, so
  // node-supported Markov measures obey the finite variational principle.
  std::vector<double> tab(q.size() * q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      tab[i * q.size() + j] = pot.value(q, i, j);
  const Potential node_pot(q.size(), 2, tab);
  const AprioriWeights node_w(q.weights());
  const double pressure = std::log(nystrom_spectral(pot, q).lambda);
  for (int rep = 0; rep < 50; ++rep) {
    const MarkovMeasure eta = testutil::random_chain(q.size(), rng, 0.01);
    CHECK(integrate(node_pot, eta) + relative_entropy(eta, node_w) <= pressure + 1e-8);
  }
}
