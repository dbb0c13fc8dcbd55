#include "macroreal/spin.hpp"

#include "macroreal/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace macroreal::spin {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kNormTol = 1e-12;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_hermitian(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix not square");
    }
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(Matrix(m - m.adjoint())) > kHermitianTol * scale) {
        throw std::invalid_argument(std::string(who) + ": matrix not Hermitian");
    }
}

}  // namespace

SpinSpace::SpinSpace(int two_j) : two_j_(two_j) {
    if (two_j < 1) {
        throw std::invalid_argument("SpinSpace: require 2j >= 1");
    }
}

Direction::Direction(double theta_in, double phi_in) : theta(theta_in), phi(phi_in) {
    constexpr double pi = std::numbers::pi;
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("Direction: angles must be finite");
    }
    if (theta < -1e-12 || theta > pi + 1e-12) {
        throw std::invalid_argument("Direction: theta outside [0, pi]");
    }
    theta = std::clamp(theta, 0.0, pi);
    phi = std::fmod(phi, 2.0 * pi);
    if (phi < 0.0) phi += 2.0 * pi;
}

StateVector::StateVector(SpinSpace space, Vector amplitudes)
    : space_(space), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_.dim()) {
        throw std::invalid_argument("StateVector: amplitude count does not match dimension");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
        throw std::invalid_argument("StateVector: not normalized");
    }
}

DensityMatrix::DensityMatrix(SpinSpace space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
    if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
        throw std::invalid_argument("DensityMatrix: shape does not match dimension");
    }
    require_hermitian(entries_, "DensityMatrix");
    if (std::abs(entries_.trace().real() - 1.0) > kNormTol ||
        std::abs(entries_.trace().imag()) > kNormTol) {
        throw std::invalid_argument("DensityMatrix: trace != 1");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(SpinSpace space) {
    Matrix m = Matrix::Identity(space.dim(), space.dim()) / double(space.dim());
    return DensityMatrix(space, std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

SpinOperators build_operators(SpinSpace space) {
    const int dim = space.dim();
    const double j = space.j();
    Matrix jz = Matrix::Zero(dim, dim);
    Matrix jplus = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double m = space.m_value(i);
        jz(i, i) = m;
        if (i + 1 < dim) {
            // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>
            jplus(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    const Matrix jminus = jplus.adjoint();
    SpinOperators ops;
    ops.jx = 0.5 * (jplus + jminus);
    ops.jy = Complex(0.0, -0.5) * (jplus - jminus);
    ops.jz = std::move(jz);
    return ops;
}

StateVector basis_state(SpinSpace space, int index) {
    if (index < 0 || index >= space.dim()) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    Vector v = Vector::Zero(space.dim());
    v(index) = 1.0;
    return StateVector(space, std::move(v));
}

Complex coherent_amplitude(SpinSpace space, int index, const Direction& dir) {
    if (index < 0 || index >= space.dim()) {
        throw std::invalid_argument("coherent_amplitude: index out of range");
    }
    const int two_j = space.two_j();
    const int n_cos = index;           // j + m
    const int n_sin = two_j - index;   // j - m
    const double c = std::cos(0.5 * dir.theta);
    const double s = std::sin(0.5 * dir.theta);

    // 0^0 = 1 at the poles; any positive power of an exact zero kills the term.
    if (n_cos > 0 && c == 0.0) return Complex(0.0, 0.0);
    if (n_sin > 0 && s == 0.0) return Complex(0.0, 0.0);

    double log_mag = 0.5 * numerics::log_binomial(two_j, index);
    if (n_cos > 0) log_mag += n_cos * std::log(c);
    if (n_sin > 0) log_mag += n_sin * std::log(s);
    const double mag = std::exp(log_mag);
    const double phase = (two_j - index) * dir.phi;  // (j - m) phi
    return Complex(mag * std::cos(phase), mag * std::sin(phase));
}

StateVector coherent_state(SpinSpace space, const Direction& dir) {
    Vector v(space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        v(i) = coherent_amplitude(space, i, dir);
    }
    v /= v.norm();  // unit norm up to rounding; renormalize the last ulps
    return StateVector(space, std::move(v));
}

StateVector cat_state(SpinSpace space, double angle) {
    Vector v = Vector::Zero(space.dim());
    v(space.dim() - 1) = std::cos(angle);
    v(0) = std::sin(angle);
    return StateVector(space, std::move(v));
}

DensityMatrix cat_mixture(SpinSpace space, double angle) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    m(space.dim() - 1, space.dim() - 1) = c * c;
    m(0, 0) = s * s;
    return DensityMatrix(space, std::move(m));
}

Matrix build_hamiltonian(const HamiltonianSpec& spec, SpinSpace space) {
    const int dim = space.dim();
    return std::visit(
        [&](const auto& h) -> Matrix {
            using T = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<T, Rotation>) {
                if (!std::isfinite(h.omega)) {
                    throw std::invalid_argument("build_hamiltonian: omega must be finite");
                }
                SpinOperators ops = build_operators(space);
                switch (h.axis) {
                    case Axis::X: return h.omega * ops.jx;
                    case Axis::Y: return h.omega * ops.jy;
                    case Axis::Z: return h.omega * ops.jz;
                }
                throw std::invalid_argument("build_hamiltonian: bad axis");
            } else if constexpr (std::is_same_v<T, CatFlip>) {
                if (!std::isfinite(h.omega)) {
                    throw std::invalid_argument("build_hamiltonian: omega must be finite");
                }
                Matrix m = Matrix::Zero(dim, dim);
                // i omega (|-j><+j| - |+j><-j|); |-j> is index 0, |+j> index dim-1
                m(0, dim - 1) = Complex(0.0, h.omega);
                m(dim - 1, 0) = Complex(0.0, -h.omega);
                return m;
            } else if constexpr (std::is_same_v<T, TwoLevel>) {
                if (!std::isfinite(h.delta_e)) {
                    throw std::invalid_argument("build_hamiltonian: delta_e must be finite");
                }
                if (h.level_a < 0 || h.level_a >= dim || h.level_b < 0 || h.level_b >= dim ||
                    h.level_a == h.level_b) {
                    throw std::invalid_argument("build_hamiltonian: bad two-level indices");
                }
                Matrix m = Matrix::Zero(dim, dim);
                m(h.level_b, h.level_b) = h.delta_e;
                return m;
            } else {
                static_assert(std::is_same_v<T, Custom>);
                if (h.h.rows() != dim || h.h.cols() != dim) {
                    throw std::invalid_argument("build_hamiltonian: custom matrix has wrong shape");
                }
                require_hermitian(h.h, "build_hamiltonian");
                return h.h;
            }
        },
        spec);
}

Propagator::Propagator(SpinSpace space, Eigen::VectorXd energies, Matrix eigenvectors)
    : space_(space), energies_(std::move(energies)), basis_(std::move(eigenvectors)) {
    const int dim = space_.dim();
    if (energies_.size() != dim || basis_.rows() != dim || basis_.cols() != dim) {
        throw std::invalid_argument("Propagator: shape mismatch");
    }
    const Matrix gram = basis_.adjoint() * basis_;
    if (max_abs(Matrix(gram - Matrix::Identity(dim, dim))) > 1e-10) {
        throw std::invalid_argument("Propagator: eigenvector matrix not unitary");
    }
}

Matrix Propagator::evolution_operator(double t) const {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolution_operator: time must be finite");
    }
    const int dim = space_.dim();
    Vector phases(dim);
    for (int i = 0; i < dim; ++i) {
        const double a = -energies_(i) * t;
        phases(i) = Complex(std::cos(a), std::sin(a));
    }
    return basis_ * phases.asDiagonal() * basis_.adjoint();
}

Propagator diagonalize(SpinSpace space, const Matrix& hamiltonian) {
    if (hamiltonian.rows() != space.dim() || hamiltonian.cols() != space.dim()) {
        throw std::invalid_argument("diagonalize: shape does not match space");
    }
    require_hermitian(hamiltonian, "diagonalize");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    if (solver.info() != Eigen::Success) {
        throw std::domain_error("diagonalize: eigensolver failed");
    }
    return Propagator(space, solver.eigenvalues(), solver.eigenvectors());
}

Propagator make_propagator(SpinSpace space, const HamiltonianSpec& spec) {
    return diagonalize(space, build_hamiltonian(spec, space));
}

StateVector evolve(const Propagator& p, const StateVector& psi, double t) {
    if (!(psi.space() == p.space())) {
        throw std::invalid_argument("evolve: state and propagator dimensions differ");
    }
    Vector v = p.evolution_operator(t) * psi.amplitudes();
    v /= v.norm();
    return StateVector(psi.space(), std::move(v));
}

DensityMatrix evolve(const Propagator& p, const DensityMatrix& rho, double t) {
    if (!(rho.space() == p.space())) {
        throw std::invalid_argument("evolve: state and propagator dimensions differ");
    }
    const Matrix u = p.evolution_operator(t);
    Matrix m = u * rho.entries() * u.adjoint();
    // Unitary conjugation keeps Hermiticity and trace up to rounding; clean up
    // the last ulps so downstream validation stays strict.
    m = 0.5 * (m + m.adjoint()).eval();
    m /= m.trace().real();
    return DensityMatrix(rho.space(), std::move(m));
}

Survival survival_probability(const Propagator& p, const StateVector& psi0, double t) {
    if (!(psi0.space() == p.space())) {
        throw std::invalid_argument("survival_probability: dimension mismatch");
    }
    // <psi0|psi(t)> = sum_k |<v_k|psi0>|^2 exp(-i E_k t)
    const Vector coeffs = p.eigenvectors().adjoint() * psi0.amplitudes();
    Complex amp(0.0, 0.0);
    for (int k = 0; k < coeffs.size(); ++k) {
        const double a = -p.energies()(k) * t;
        amp += std::norm(coeffs(k)) * Complex(std::cos(a), std::sin(a));
    }
    Survival s;
    s.probability = std::norm(amp);
    s.phase = (s.probability > 0.0) ? std::arg(amp) : 0.0;
    return s;
}

DensityMatrix rotate_to_frame(const DensityMatrix& rho, const Direction& dir) {
    const SpinSpace space = rho.space();
    const SpinOperators ops = build_operators(space);
    // R = exp(-i phi Jz) exp(-i theta Jy); takes |+j> to |Omega> up to phase.
    const Matrix ry = diagonalize(space, ops.jy).evolution_operator(dir.theta);
    const Matrix rz = diagonalize(space, ops.jz).evolution_operator(dir.phi);
    const Matrix r = rz * ry;
    Matrix m = r * rho.entries() * r.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    m /= m.trace().real();
    return DensityMatrix(space, std::move(m));
}

}  // namespace macroreal::spin
