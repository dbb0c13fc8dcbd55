#include "macroreal/sphere.hpp"

#include "macroreal/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace macroreal::sphere {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kClippedMassLimit = 1e-6;

using spin::Complex;
using spin::Matrix;
using spin::Vector;

// Radial coherent-state factors |<i|Omega>| for one polar angle; phases are
// handled separately as exp(i (m_i - m_i') phi).
Eigen::VectorXd radial_factors(spin::SpinSpace space, double cos_theta) {
    const int two_j = space.two_j();
    const double c = std::sqrt(0.5 * (1.0 + cos_theta));  // cos(theta/2)
    const double s = std::sqrt(0.5 * (1.0 - cos_theta));  // sin(theta/2)
    Eigen::VectorXd r(space.dim());
    for (int i = 0; i <= two_j; ++i) {
        if ((i > 0 && c == 0.0) || (two_j - i > 0 && s == 0.0)) {
            r(i) = 0.0;
            continue;
        }
        double log_mag = 0.5 * numerics::log_binomial(two_j, i);
        if (i > 0) log_mag += i * std::log(c);
        if (two_j - i > 0) log_mag += (two_j - i) * std::log(s);
        r(i) = std::exp(log_mag);
    }
    return r;
}

void format_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

SphereGrid::SphereGrid(int band_limit, std::vector<double> cos_breakpoints)
    : band_limit_(band_limit), breakpoints_(std::move(cos_breakpoints)) {
    if (band_limit_ < 1) throw std::invalid_argument("SphereGrid: band limit must be >= 1");
    if (breakpoints_.size() < 2 || breakpoints_.front() != -1.0 || breakpoints_.back() != 1.0) {
        throw std::invalid_argument("SphereGrid: breakpoints must span [-1, 1]");
    }
    if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
        std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) != breakpoints_.end()) {
        throw std::invalid_argument("SphereGrid: breakpoints must be strictly increasing");
    }

    const int per_panel = band_limit_ / 2 + 1;  // exact through degree band_limit
    const numerics::QuadratureRule rule = numerics::gauss_legendre(per_panel);

    const int panels = static_cast<int>(breakpoints_.size()) - 1;
    polar_x_.reserve(panels * per_panel);
    polar_w_.reserve(panels * per_panel);
    for (int p = 0; p < panels; ++p) {
        const double lo = breakpoints_[p];
        const double hi = breakpoints_[p + 1];
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (int i = 0; i < per_panel; ++i) {
            polar_x_.push_back(mid + half * rule.nodes[i]);
            polar_w_.push_back(half * rule.weights[i]);
        }
    }
    thetas_.resize(polar_x_.size());
    for (std::size_t i = 0; i < polar_x_.size(); ++i) {
        thetas_[i] = std::acos(std::clamp(polar_x_[i], -1.0, 1.0));
    }

    const int n_azim = band_limit_ + 1;
    azim_phi_.resize(n_azim);
    for (int k = 0; k < n_azim; ++k) {
        azim_phi_[k] = 2.0 * kPi * k / n_azim;
    }
    azim_w_ = 2.0 * kPi / n_azim;
}

bool SphereGrid::operator==(const SphereGrid& other) const {
    return band_limit_ == other.band_limit_ && breakpoints_ == other.breakpoints_ &&
           polar_x_ == other.polar_x_ && azim_phi_.size() == other.azim_phi_.size();
}

SphereGrid make_grid(spin::SpinSpace space, double oversample) {
    return make_grid(space, oversample, {});
}

SphereGrid make_grid(spin::SpinSpace space, double oversample,
                     const std::vector<double>& interior_cos_breakpoints) {
    if (!(oversample >= 1.0)) {
        throw std::invalid_argument("make_grid: oversample must be >= 1");
    }
    const int band_limit = static_cast<int>(std::ceil(2.0 * space.two_j() * oversample));

    std::vector<double> breaks = interior_cos_breakpoints;
    for (double b : breaks) {
        if (!(b > -1.0 && b < 1.0)) {
            throw std::invalid_argument("make_grid: interior breakpoints must lie in (-1, 1)");
        }
    }
    breaks.push_back(-1.0);
    breaks.push_back(1.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return SphereGrid(band_limit, std::move(breaks));
}

SphereDistribution::SphereDistribution(SphereGrid grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.node_count()) {
        throw std::invalid_argument("SphereDistribution: value count does not match grid");
    }
}

SphereDistribution husimi_transform(spin::SpinSpace space, const Matrix& op,
                                    const SphereGrid& grid) {
    const int dim = space.dim();
    if (op.rows() != dim || op.cols() != dim) {
        throw std::invalid_argument("husimi_transform: operator shape does not match space");
    }
    const int two_j = space.two_j();
    const int np = grid.polar_count();
    const int na = grid.azimuth_count();
    const int nd = 2 * two_j + 1;  // phase harmonics d = i - i' in [-2j, 2j]

    // S(d, p) = sum_{i-i'=d} r_i r_i' op(i, i') for polar row p.
    Matrix s = Matrix::Zero(nd, np);
    for (int p = 0; p < np; ++p) {
        const Eigen::VectorXd r = radial_factors(space, grid.polar_cosines()[p]);
        for (int i = 0; i < dim; ++i) {
            for (int i2 = 0; i2 < dim; ++i2) {
                s(i - i2 + two_j, p) += r(i) * r(i2) * op(i, i2);
            }
        }
    }

    // E(a, d) = exp(i d phi_a); values = Re(E * S) scaled by (2j+1)/4pi.
    Matrix e(na, nd);
    for (int a = 0; a < na; ++a) {
        const double phi = grid.node_phi(a);
        for (int d = 0; d < nd; ++d) {
            const double arg = (d - two_j) * phi;
            e(a, d) = Complex(std::cos(arg), std::sin(arg));
        }
    }
    const Matrix v = e * s;

    const double scale = (two_j + 1.0) / kFourPi;
    Eigen::VectorXd values(grid.node_count());
    for (int p = 0; p < np; ++p) {
        for (int a = 0; a < na; ++a) {
            values(p * na + a) = scale * v(a, p).real();
        }
    }
    return SphereDistribution(grid, std::move(values));
}

double husimi_value(spin::SpinSpace space, const Matrix& op, const spin::Direction& dir) {
    const int dim = space.dim();
    if (op.rows() != dim || op.cols() != dim) {
        throw std::invalid_argument("husimi_value: operator shape does not match space");
    }
    Vector a(dim);
    for (int i = 0; i < dim; ++i) a(i) = spin::coherent_amplitude(space, i, dir);
    const Complex val = a.adjoint() * op * a;
    return (space.two_j() + 1.0) / kFourPi * val.real();
}

SphereDistribution q_function(const spin::DensityMatrix& rho, const SphereGrid& grid) {
    return husimi_transform(rho.space(), rho.entries(), grid);
}

std::pair<SphereDistribution, SphereDistribution> q_of_cat_pair(spin::SpinSpace space, double t,
                                                                double omega,
                                                                const SphereGrid& grid) {
    const double angle = omega * t;
    const spin::DensityMatrix sup = spin::DensityMatrix::pure(spin::cat_state(space, angle));
    const spin::DensityMatrix mix = spin::cat_mixture(space, angle);
    return {q_function(sup, grid), q_function(mix, grid)};
}

SphereDistribution p_function(const spin::DensityMatrix& rho, const SphereGrid& grid) {
    const spin::SpinSpace space = rho.space();
    const int dim = space.dim();
    const int two_j = space.two_j();

    // Sub-diagonal ladder factors s_i = <i+1|J+|i>.
    Eigen::VectorXd ladder(dim - 1);
    const double j = space.j();
    for (int i = 0; i + 1 < dim; ++i) {
        const double m = space.m_value(i);
        ladder(i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const auto apply_jplus = [&](const Matrix& x) {
        Matrix y = Matrix::Zero(dim, dim);
        for (int i = 1; i < dim; ++i) y.row(i) = ladder(i - 1) * x.row(i - 1);
        return y;
    };
    const auto lower_commutator = [&](const Matrix& t) {
        // [J-, T] with J- applied through its single superdiagonal.
        Matrix y = Matrix::Zero(dim, dim);
        for (int i = 0; i + 1 < dim; ++i) y.row(i) = ladder(i) * t.row(i + 1);
        for (int l = 1; l < dim; ++l) y.col(l) -= ladder(l - 1) * t.col(l - 1);
        return y;
    };

    // rho_tilde rescales every spherical-tensor component of rho so that the
    // Husimi transform of rho_tilde equals the P-function of rho.
    Matrix rho_tilde = Matrix::Zero(dim, dim);
    for (int rank = 0; rank <= two_j; ++rank) {
        // Highest component T_{K,K} proportional to (J+)^K, unit Frobenius norm.
        Matrix t = Matrix::Identity(dim, dim);
        for (int step = 0; step < rank; ++step) {
            t = apply_jplus(t);
            t /= t.norm();
        }

        Matrix projection = Matrix::Zero(dim, dim);
        double transfer = 0.0;
        for (int q = rank; q >= -rank; --q) {
            const Complex coeff = t.conjugate().cwiseProduct(rho.entries()).sum();
            projection += coeff * t;
            if (q == 0) {
                // <+j|T_{K,0}|+j> / Y_{K,0}(north pole)
                transfer = t(dim - 1, dim - 1).real() * std::sqrt(kFourPi / (2.0 * rank + 1.0));
            }
            if (q > -rank) {
                const double denom = std::sqrt(rank * (rank + 1.0) - q * (q - 1.0));
                t = lower_commutator(t) / denom;
            }
        }
        if (std::abs(transfer) < 1e-250) {
            throw std::domain_error("p_function: degenerate transfer coefficient at rank " +
                                    std::to_string(rank));
        }
        rho_tilde += (kFourPi / ((two_j + 1.0) * transfer * transfer)) * projection;
    }

    return husimi_transform(space, rho_tilde, grid);
}

OverlapResult overlap_detail(const SphereDistribution& f, const SphereDistribution& g) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("overlap: distributions live on different grids");
    }
    const SphereGrid& grid = f.grid();
    const int na = grid.azimuth_count();
    OverlapResult result{0.0, 0.0, 0.0};
    for (int p = 0; p < grid.polar_count(); ++p) {
        const double w = grid.node_weight(p);
        for (int a = 0; a < na; ++a) {
            const int idx = p * na + a;
            const double vf = f.values()(idx);
            const double vg = g.values()(idx);
            if (vf < 0.0) result.clipped_mass_f -= w * vf;
            if (vg < 0.0) result.clipped_mass_g -= w * vg;
            result.value += w * std::sqrt(std::max(vf, 0.0) * std::max(vg, 0.0));
        }
    }
    if (result.clipped_mass_f > kClippedMassLimit || result.clipped_mass_g > kClippedMassLimit) {
        throw std::domain_error("overlap: clipped negative mass exceeds 1e-6; "
                                "arguments are not probability densities");
    }
    return result;
}

double overlap(const SphereDistribution& f, const SphereDistribution& g) {
    return overlap_detail(f, g).value;
}

double integrate(const SphereDistribution& f) {
    const SphereGrid& grid = f.grid();
    const int na = grid.azimuth_count();
    double total = 0.0;
    for (int p = 0; p < grid.polar_count(); ++p) {
        const double w = grid.node_weight(p);
        for (int a = 0; a < na; ++a) total += w * f.values()(p * na + a);
    }
    return total;
}

double integrate_band(const SphereDistribution& f, double theta_lo, double theta_hi) {
    if (!(theta_lo <= theta_hi)) {
        throw std::invalid_argument("integrate_band: require theta_lo <= theta_hi");
    }
    const SphereGrid& grid = f.grid();
    const int na = grid.azimuth_count();
    double total = 0.0;
    for (int p = 0; p < grid.polar_count(); ++p) {
        const double theta = grid.node_theta(p);
        if (theta < theta_lo || theta > theta_hi) continue;
        const double w = grid.node_weight(p);
        for (int a = 0; a < na; ++a) total += w * f.values()(p * na + a);
    }
    return total;
}

double integrate_region(const SphereDistribution& f, const std::vector<PolarBand>& bands) {
    double total = 0.0;
    for (const PolarBand& band : bands) total += integrate_band(f, band.theta_lo, band.theta_hi);
    return total;
}

void write_csv(const SphereDistribution& f, std::ostream& out) {
    const SphereGrid& grid = f.grid();
    const int na = grid.azimuth_count();
    std::string line;
    out << "theta,phi,weight,value\n";
    for (int p = 0; p < grid.polar_count(); ++p) {
        for (int a = 0; a < na; ++a) {
            line.clear();
            format_double(line, grid.node_theta(p));
            line.push_back(',');
            format_double(line, grid.node_phi(a));
            line.push_back(',');
            format_double(line, grid.node_weight(p));
            line.push_back(',');
            format_double(line, f.values()(p * na + a));
            line.push_back('\n');
            out << line;
        }
    }
}

}  // namespace macroreal::sphere
