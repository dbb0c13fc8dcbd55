// sphere.hpp — Phase-space representations on the unit sphere: quadrature
// grids, Husimi Q and Glauber-Sudarshan P distributions, overlaps and
// polar-region integrals.

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "macroreal/spin.hpp"

namespace macroreal::sphere {

// Closed polar-angle interval [theta_lo, theta_hi].
struct PolarBand {
    double theta_lo;
    double theta_hi;
};

// Product quadrature: composite Gauss-Legendre in x = cos(theta) (one panel
// per breakpoint interval) times a uniform periodic rule in phi. Exact for
// spherical polynomials up to the declared band limit; panel edges let
// polar-band integrals stay exact when bands align with breakpoints.
class SphereGrid {
  public:
    SphereGrid(int band_limit, std::vector<double> cos_breakpoints);

    int band_limit() const { return band_limit_; }
    int polar_count() const { return static_cast<int>(polar_x_.size()); }
    int azimuth_count() const { return static_cast<int>(azim_phi_.size()); }
    int node_count() const { return polar_count() * azimuth_count(); }

    // Node layout is row-major: index = polar_index * azimuth_count + azim_index.
    double node_theta(int polar_index) const { return thetas_[polar_index]; }
    double node_phi(int azim_index) const { return azim_phi_[azim_index]; }
    double node_weight(int polar_index) const { return polar_w_[polar_index] * azim_w_; }

    const std::vector<double>& polar_cosines() const { return polar_x_; }
    const std::vector<double>& polar_weights() const { return polar_w_; }
    const std::vector<double>& azimuth_angles() const { return azim_phi_; }
    double azimuth_weight() const { return azim_w_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    bool operator==(const SphereGrid& other) const;

  private:
    int band_limit_;
    std::vector<double> breakpoints_;  // panel edges in cos(theta), [-1 ... 1]
    std::vector<double> polar_x_;      // cos(theta) nodes, descending theta order
    std::vector<double> polar_w_;
    std::vector<double> thetas_;
    std::vector<double> azim_phi_;
    double azim_w_;
};

// Band limit 2 * (2j) * oversample, enough to integrate products of spin-j
// coherent-state overlaps exactly.
SphereGrid make_grid(spin::SpinSpace space, double oversample = 2.0);
SphereGrid make_grid(spin::SpinSpace space, double oversample,
                     const std::vector<double>& interior_cos_breakpoints);

class SphereDistribution {
  public:
    SphereDistribution(SphereGrid grid, Eigen::VectorXd values);

    const SphereGrid& grid() const { return grid_; }
    const Eigen::VectorXd& values() const { return values_; }

  private:
    SphereGrid grid_;
    Eigen::VectorXd values_;
};

// (2j+1)/4pi <Omega|op|Omega> sampled on the grid, for any Hermitian op.
// Q-functions and P-functions are both evaluated through this transform.
SphereDistribution husimi_transform(spin::SpinSpace space, const spin::Matrix& op,
                                    const SphereGrid& grid);

// Point evaluation of the same transform.
double husimi_value(spin::SpinSpace space, const spin::Matrix& op, const spin::Direction& dir);

// Q(Omega) = (2j+1)/4pi <Omega|rho|Omega>: pointwise non-negative, integral 1.
SphereDistribution q_function(const spin::DensityMatrix& rho, const SphereGrid& grid);

// Q-distributions of the two-pole superposition cos(wt)|+j> + sin(wt)|-j>
// and of the matching classical mixture, at time t.
std::pair<SphereDistribution, SphereDistribution> q_of_cat_pair(spin::SpinSpace space, double t,
                                                                double omega,
                                                                const SphereGrid& grid);

// Unique band-limited solution P of rho = integral P(Omega)|Omega><Omega| d2Omega,
// via multipole inversion: each rank-K component of rho is divided by the
// coherent-state transfer factor of that rank. Generally not positive.
SphereDistribution p_function(const spin::DensityMatrix& rho, const SphereGrid& grid);

struct OverlapResult {
    double value;
    double clipped_mass_f;  // negative mass clipped from the first argument
    double clipped_mass_g;
};

// Bhattacharyya overlap integral of two probability densities on the same
// grid. Small negative values are clipped at zero; clipped mass above 1e-6
// on either side is rejected.
OverlapResult overlap_detail(const SphereDistribution& f, const SphereDistribution& g);
double overlap(const SphereDistribution& f, const SphereDistribution& g);

double integrate(const SphereDistribution& f);
double integrate_band(const SphereDistribution& f, double theta_lo, double theta_hi);
double integrate_region(const SphereDistribution& f, const std::vector<PolarBand>& bands);

// CSV export with columns theta,phi,weight,value (shortest round-trip doubles).
void write_csv(const SphereDistribution& f, std::ostream& out);

}  // namespace macroreal::sphere
