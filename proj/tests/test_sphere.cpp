#include "doctest.h"

#include "macroreal/sphere.hpp"
#include "macroreal/spin.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace macroreal;
using spin::Direction;
using spin::SpinSpace;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double four_pi = 4.0 * std::numbers::pi;

double integrate_function(const sphere::SphereGrid& grid,
                          const std::function<double(double, double)>& f) {
    double total = 0.0;
    for (int p = 0; p < grid.polar_count(); ++p) {
        for (int a = 0; a < grid.azimuth_count(); ++a) {
            total += grid.node_weight(p) * f(grid.node_theta(p), grid.node_phi(a));
        }
    }
    return total;
}

// Quadrature rebuild of rho from a sampled distribution: sum_i w_i f_i |Omega_i><Omega_i|.
spin::Matrix reconstruct_density(const SpinSpace& space, const sphere::SphereDistribution& f) {
    const sphere::SphereGrid& grid = f.grid();
    const int dim = space.dim();
    spin::Matrix rho = spin::Matrix::Zero(dim, dim);
    for (int p = 0; p < grid.polar_count(); ++p) {
        for (int a = 0; a < grid.azimuth_count(); ++a) {
            const Direction dir(grid.node_theta(p), grid.node_phi(a));
            spin::Vector omega(dim);
            for (int i = 0; i < dim; ++i) omega(i) = spin::coherent_amplitude(space, i, dir);
            rho += grid.node_weight(p) * f.values()(p * grid.azimuth_count() + a) *
                   (omega * omega.adjoint());
        }
    }
    return rho;
}

}  // namespace

TEST_CASE("grid: weights, constants, analytic polar integrals") {
    const SpinSpace space(10);
    const auto grid = sphere::make_grid(space, 2.0);

    double weight_sum = 0.0;
    for (int p = 0; p < grid.polar_count(); ++p) {
        weight_sum += grid.node_weight(p) * grid.azimuth_count();
    }
    CHECK(weight_sum == doctest::Approx(four_pi).epsilon(1e-12));

    CHECK(integrate_function(grid, [](double, double) { return 1.0; }) ==
          doctest::Approx(four_pi).epsilon(1e-12));
    CHECK(integrate_function(grid, [](double t, double) { return std::cos(t) * std::cos(t); }) ==
          doctest::Approx(four_pi / 3.0).epsilon(1e-12));

    // Exactness through the declared band limit, zero for odd/azimuthal modes.
    for (int k = 2; k <= grid.band_limit(); k += 10) {
        const double got =
            integrate_function(grid, [&](double t, double) { return std::pow(std::cos(t), k); });
        const double expected = (k % 2 == 0) ? four_pi / (k + 1.0) : 0.0;
        CHECK(got == doctest::Approx(expected).epsilon(1e-11));
    }
    CHECK(integrate_function(grid, [](double t, double p) {
              return std::sin(t) * std::sin(t) * std::cos(2.0 * p);
          }) == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));

    CHECK_THROWS_AS(sphere::make_grid(space, 0.5), std::invalid_argument);
}

TEST_CASE("q_function: coherent peak, uniform background, normalization") {
    const SpinSpace space(20);  // j = 10
    const auto grid = sphere::make_grid(space, 2.0);
    const auto plus = spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1));
    const auto q = sphere::q_function(plus, grid);

    // Pointwise law Q = (2j+1)/4pi cos^{4j}(theta/2)
    for (int p = 0; p < grid.polar_count(); p += 7) {
        const double theta = grid.node_theta(p);
        const double expected = 21.0 / four_pi * std::pow(std::cos(0.5 * theta), 40);
        for (int a = 0; a < grid.azimuth_count(); a += 13) {
            CHECK(q.values()(p * grid.azimuth_count() + a) ==
                  doctest::Approx(expected).epsilon(1e-10).scale(1.0));
        }
    }
    // Peak value at the pole
    CHECK(sphere::husimi_value(space, plus.entries(), Direction(0.0, 0.0)) ==
          doctest::Approx(21.0 / four_pi).epsilon(1e-12));

    const auto uniform = sphere::q_function(spin::DensityMatrix::maximally_mixed(space), grid);
    for (int i = 0; i < uniform.values().size(); i += 17) {
        CHECK(uniform.values()(i) == doctest::Approx(1.0 / four_pi).epsilon(1e-12));
    }

    auto gen = oracles::rng(7);
    for (int two_j : {2, 10, 20, 100}) {
        const SpinSpace s(two_j);
        const auto g = sphere::make_grid(s, 2.0);
        const spin::DensityMatrix rho(s, oracles::random_density(s.dim(), gen));
        const auto qr = sphere::q_function(rho, g);
        CHECK(sphere::integrate(qr) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(qr.values().minCoeff() >= -1e-10);
    }
}

TEST_CASE("coherent-state resolution of the identity by quadrature") {
    for (int two_j : {2, 11, 40}) {
        const SpinSpace space(two_j);
        const auto grid = sphere::make_grid(space, 2.0);
        const int dim = space.dim();
        spin::Matrix acc = spin::Matrix::Zero(dim, dim);
        for (int p = 0; p < grid.polar_count(); ++p) {
            for (int a = 0; a < grid.azimuth_count(); ++a) {
                const Direction dir(grid.node_theta(p), grid.node_phi(a));
                spin::Vector omega(dim);
                for (int i = 0; i < dim; ++i) omega(i) = spin::coherent_amplitude(space, i, dir);
                acc += grid.node_weight(p) * (omega * omega.adjoint());
            }
        }
        acc *= (two_j + 1.0) / four_pi;
        CHECK((acc - spin::Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("cat pair: endpoints and near-identical distributions") {
    const SpinSpace space(20);  // j = 10
    const auto grid = sphere::make_grid(space, 2.0);

    const auto at_zero = sphere::q_of_cat_pair(space, 0.0, 1.0, grid);
    const auto q_plus =
        sphere::q_function(spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1)), grid);
    CHECK((at_zero.first.values() - q_plus.values()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((at_zero.second.values() - q_plus.values()).cwiseAbs().maxCoeff() < 1e-12);

    const auto at_quarter = sphere::q_of_cat_pair(space, pi / 4, 1.0, grid);
    const double bound = 1.0 - 10.0 * std::pow(0.5, space.two_j());
    CHECK(sphere::overlap(at_quarter.first, at_quarter.second) >= bound);

    const auto at_half = sphere::q_of_cat_pair(space, pi / 2, 1.0, grid);
    const auto q_minus = sphere::q_function(spin::DensityMatrix::pure(spin::basis_state(space, 0)), grid);
    CHECK((at_half.first.values() - q_minus.values()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("p_function: flat state, reconstruction oracle, narrower bump") {
    const SpinSpace space(20);  // j = 10
    const auto grid = sphere::make_grid(space, 2.0);

    const auto flat = sphere::p_function(spin::DensityMatrix::maximally_mixed(space), grid);
    for (int i = 0; i < flat.values().size(); i += 23) {
        CHECK(flat.values()(i) == doctest::Approx(1.0 / four_pi).epsilon(1e-10));
    }

    // Coherent-state P: reconstructs rho and is a narrower bump than Q.
    const auto plus = spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1));
    const auto p_plus = sphere::p_function(plus, grid);
    CHECK((reconstruct_density(space, p_plus) - plus.entries()).norm() < 1e-6);
    CHECK(sphere::integrate(p_plus) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p_plus.values().maxCoeff() > sphere::q_function(plus, grid).values().maxCoeff());

    // Random mixed states, j = 5 and j = 10
    auto gen = oracles::rng(17);
    for (int two_j : {10, 20}) {
        const SpinSpace s(two_j);
        const auto g = sphere::make_grid(s, 2.0);
        for (int rep = 0; rep < 3; ++rep) {
            const spin::DensityMatrix rho(s, oracles::random_density(s.dim(), gen));
            const auto p = sphere::p_function(rho, g);
            CHECK((reconstruct_density(s, p) - rho.entries()).norm() < 1e-6);
        }
    }

    // The two-pole superposition has a wildly oscillating, sign-changing P.
    const auto sup = spin::DensityMatrix::pure(spin::cat_state(space, pi / 4));
    const auto p_sup = sphere::p_function(sup, grid);
    CHECK(p_sup.values().minCoeff() < 0.0);
    CHECK((reconstruct_density(space, p_sup) - sup.entries()).norm() < 1e-6);
}

TEST_CASE("overlap: identity, disjoint supports, monotone decay, misuse") {
    const SpinSpace space(100);  // j = 50
    const auto grid = sphere::make_grid(space, 2.0);
    const auto q_plus =
        sphere::q_function(spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1)), grid);
    const auto q_minus =
        sphere::q_function(spin::DensityMatrix::pure(spin::basis_state(space, 0)), grid);

    CHECK(sphere::overlap(q_plus, q_plus) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sphere::overlap(q_plus, q_minus) < 1e-10);
    CHECK(sphere::overlap(q_plus, q_minus) == sphere::overlap(q_minus, q_plus));

    // Rotating one bump away decreases the overlap monotonically.
    const SpinSpace twelve(24);
    const auto g12 = sphere::make_grid(twelve, 2.0);
    const auto q_pole = sphere::q_function(
        spin::DensityMatrix::pure(spin::basis_state(twelve, twelve.dim() - 1)), g12);
    double prev = 1.1;
    for (double dtheta : {0.2, 0.5, 0.8, 1.1, 1.4}) {
        const auto q_rot = sphere::q_function(
            spin::DensityMatrix::pure(spin::coherent_state(twelve, Direction(dtheta, 0.0))), g12);
        const double val = sphere::overlap(q_pole, q_rot);
        CHECK(val < prev);
        CHECK(val <= 1.0 + 1e-12);
        prev = val;
    }

    // Mismatched grids are rejected
    const auto other_grid = sphere::make_grid(space, 3.0);
    const auto q_other = sphere::q_function(
        spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1)), other_grid);
    CHECK_THROWS_AS(sphere::overlap(q_plus, q_other), std::invalid_argument);

    // A genuinely negative distribution (a cat P-function) is rejected
    const SpinSpace ten(20);
    const auto gten = sphere::make_grid(ten, 2.0);
    const auto p_sup = sphere::p_function(
        spin::DensityMatrix::pure(spin::cat_state(ten, pi / 4)), gten);
    const auto q_ten = sphere::q_function(spin::DensityMatrix::maximally_mixed(ten), gten);
    CHECK_THROWS_AS(sphere::overlap(p_sup, q_ten), std::domain_error);
}

TEST_CASE("region integrals: hemispheres, alignment, complements") {
    const SpinSpace space(2);  // j = 1
    // Panels split at the equator so hemisphere masses are exact.
    const auto grid = sphere::make_grid(space, 2.0, {0.0});

    const auto uniform = sphere::q_function(spin::DensityMatrix::maximally_mixed(space), grid);
    CHECK(sphere::integrate_band(uniform, 0.0, pi / 2) == doctest::Approx(0.5).epsilon(1e-12));

    const auto q_plus =
        sphere::q_function(spin::DensityMatrix::pure(spin::basis_state(space, 2)), grid);
    CHECK(sphere::integrate_band(q_plus, 0.0, pi / 2) == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
    CHECK(sphere::integrate_band(q_plus, pi / 2, pi) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));

    const double north = sphere::integrate_band(q_plus, 0.0, pi / 2);
    const double south = sphere::integrate_band(q_plus, pi / 2, pi);
    CHECK(north + south == doctest::Approx(sphere::integrate(q_plus)).epsilon(1e-12));
}

TEST_CASE("csv export carries one row per node") {
    const SpinSpace space(2);
    const auto grid = sphere::make_grid(space, 1.0);
    const auto q = sphere::q_function(spin::DensityMatrix::maximally_mixed(space), grid);
    std::ostringstream out;
    sphere::write_csv(q, out);
    const std::string text = out.str();
    CHECK(text.rfind("theta,phi,weight,value\n", 0) == 0);
    const auto rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == grid.node_count() + 1);
}

TEST_CASE("husimi point evaluation agrees with the grid transform") {
    const SpinSpace space(9);
    auto gen = oracles::rng(23);
    const spin::DensityMatrix rho(space, oracles::random_density(space.dim(), gen));
    const auto grid = sphere::make_grid(space, 1.0);
    const auto q = sphere::q_function(rho, grid);
    for (int p = 0; p < grid.polar_count(); p += 3) {
        for (int a = 0; a < grid.azimuth_count(); a += 5) {
            const double direct = sphere::husimi_value(
                space, rho.entries(), Direction(grid.node_theta(p), grid.node_phi(a)));
            CHECK(direct ==
                  doctest::Approx(q.values()(p * grid.azimuth_count() + a)).epsilon(1e-11));
        }
    }
}
