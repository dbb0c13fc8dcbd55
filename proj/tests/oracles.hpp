// Test-only helpers: seeded random objects and independent numerical oracles
// (kept free of the library code paths they are used to check).

#pragma once

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace oracles {

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline Eigen::MatrixXcd random_matrix(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) m(r, c) = std::complex<double>(dist(gen), dist(gen));
    }
    return m;
}

inline Eigen::MatrixXcd random_hermitian(int dim, std::mt19937& gen) {
    const Eigen::MatrixXcd m = random_matrix(dim, gen);
    return 0.5 * (m + m.adjoint());
}

// Random full-rank density matrix rho = G G^dag / Tr.
inline Eigen::MatrixXcd random_density(int dim, std::mt19937& gen) {
    const Eigen::MatrixXcd g = random_matrix(dim, gen);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return rho;
}

inline Eigen::VectorXcd random_state(int dim, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(dist(gen), dist(gen));
    v /= v.norm();
    return v;
}

// Composite Simpson quadrature on [lo, hi]; independent of the library's
// Gauss-Legendre machinery.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
    const int n = 2 * panels;
    const double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Maximize a smooth function of (theta, phi) on the sphere: coarse grid scan
// followed by shrinking coordinate descent.
struct SphereMax {
    double value;
    double theta;
    double phi;
};

inline SphereMax maximize_on_sphere(const std::function<double(double, double)>& f) {
    constexpr double pi = 3.14159265358979323846;
    SphereMax best{-1e300, 0.0, 0.0};
    const int nt = 60, np = 120;
    for (int i = 0; i <= nt; ++i) {
        const double theta = pi * i / nt;
        for (int k = 0; k < np; ++k) {
            const double phi = 2.0 * pi * k / np;
            const double v = f(theta, phi);
            if (v > best.value) best = {v, theta, phi};
        }
    }
    double step = pi / nt;
    while (step > 1e-9) {
        bool improved = false;
        const double t = best.theta, p = best.phi;
        const double cand[4][2] = {{t + step, p}, {t - step, p}, {t, p + step}, {t, p - step}};
        for (const auto& c : cand) {
            const double theta = std::clamp(c[0], 0.0, pi);
            const double v = f(theta, c[1]);
            if (v > best.value) {
                best = {v, theta, c[1]};
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace oracles
