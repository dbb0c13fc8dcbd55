// spin.hpp — Dicke-basis representation of spin-j systems: collective
// operators, coherent states, Hamiltonian library, spectral propagators.
//
// Conventions used throughout the library:
//   * amplitudes are indexed by ascending m in {-j, ..., +j}; index i maps
//     to m = i - j
//   * hbar = 1, so energies and angular frequencies share units of 1/time
//   * coherent-state phases: <m|theta,phi> carries exp(i (j - m) phi), which
//     makes |theta=0> equal |+j> with amplitude +1

#pragma once

#include <complex>
#include <optional>
#include <variant>

#include <Eigen/Dense>

namespace macroreal::spin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Spin length stored as 2j so half-integer spins stay exact.
class SpinSpace {
  public:
    explicit SpinSpace(int two_j);

    int two_j() const { return two_j_; }
    int dim() const { return two_j_ + 1; }
    double j() const { return 0.5 * two_j_; }
    // m value of basis index i in [0, dim); ascending, m = i - j.
    double m_value(int index) const { return index - 0.5 * two_j_; }

    bool operator==(const SpinSpace& other) const { return two_j_ == other.two_j_; }

  private:
    int two_j_;
};

// Point on the unit sphere. theta in [0, pi]; phi wrapped into [0, 2*pi).
struct Direction {
    double theta;
    double phi;
    Direction(double theta_in, double phi_in);
};

class StateVector {
  public:
    StateVector(SpinSpace space, Vector amplitudes);

    const SpinSpace& space() const { return space_; }
    const Vector& amplitudes() const { return amps_; }
    int dim() const { return space_.dim(); }

  private:
    SpinSpace space_;
    Vector amps_;
};

class DensityMatrix {
  public:
    // Validates Hermiticity and unit trace (1e-12). Positivity is checked by
    // min_eigenvalue() where callers need it; construction stays O(dim^2).
    DensityMatrix(SpinSpace space, Matrix entries);

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(SpinSpace space);

    const SpinSpace& space() const { return space_; }
    const Matrix& entries() const { return entries_; }
    int dim() const { return space_.dim(); }

    double min_eigenvalue() const;

  private:
    SpinSpace space_;
    Matrix entries_;
};

struct SpinOperators {
    Matrix jx, jy, jz;
};

// Jz diagonal with entries m; ladder elements sqrt(j(j+1) - m(m+-1)).
SpinOperators build_operators(SpinSpace space);

// |m> basis state at the given storage index.
StateVector basis_state(SpinSpace space, int index);

// <index|Omega> for the spin coherent state along dir. Log-space evaluation,
// stable up to very large j.
Complex coherent_amplitude(SpinSpace space, int index, const Direction& dir);

// Coherent state |Omega>: maximal-projection eigenstate of J.n(Omega).
StateVector coherent_state(SpinSpace space, const Direction& dir);

// cos(angle)|+j> + sin(angle)|-j>, the two-pole superposition.
StateVector cat_state(SpinSpace space, double angle);

// cos^2(angle)|+j><+j| + sin^2(angle)|-j><-j|.
DensityMatrix cat_mixture(SpinSpace space, double angle);

// ---------------------------------------------------------------- Hamiltonians

enum class Axis { X, Y, Z };

struct Rotation {
    Axis axis;
    double omega;
};

// i*omega*(|-j><+j| - |+j><-j|): couples only the two pole states.
struct CatFlip {
    double omega;
};

// Diagonal, with energy gap delta_e between the two chosen storage indices.
struct TwoLevel {
    double delta_e;
    int level_a;
    int level_b;
};

struct Custom {
    Matrix h;
};

using HamiltonianSpec = std::variant<Rotation, CatFlip, TwoLevel, Custom>;

Matrix build_hamiltonian(const HamiltonianSpec& spec, SpinSpace space);

// ------------------------------------------------------------------ Propagator

// Spectral decomposition of a Hermitian generator; U_t = V exp(-i E t) V^dag.
class Propagator {
  public:
    Propagator(SpinSpace space, Eigen::VectorXd energies, Matrix eigenvectors);

    const SpinSpace& space() const { return space_; }
    const Eigen::VectorXd& energies() const { return energies_; }
    const Matrix& eigenvectors() const { return basis_; }

    Matrix evolution_operator(double t) const;

  private:
    SpinSpace space_;
    Eigen::VectorXd energies_;
    Matrix basis_;
};

// Rejects non-Hermitian input (tolerance 1e-12 relative to the largest entry).
Propagator diagonalize(SpinSpace space, const Matrix& hamiltonian);

Propagator make_propagator(SpinSpace space, const HamiltonianSpec& spec);

StateVector evolve(const Propagator& p, const StateVector& psi, double t);
DensityMatrix evolve(const Propagator& p, const DensityMatrix& rho, double t);

struct Survival {
    double probability;  // |<psi0|psi(t)>|^2
    double phase;        // principal argument of <psi0|psi(t)>
};

Survival survival_probability(const Propagator& p, const StateVector& psi0, double t);

// rho -> R rho R^dag with R the rotation taking |+j> to the coherent state
// along dir (up to global phase).
DensityMatrix rotate_to_frame(const DensityMatrix& rho, const Direction& dir);

}  // namespace macroreal::spin
