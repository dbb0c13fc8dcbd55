// circuit.hpp — N-qubit statevector simulation of the sequential cat-state
// protocol and the contrasting global rotation, with gate-count accounting.
//
// Basis ordering: |q_1 q_2 ... q_N> with qubit 1 leftmost, i.e. qubit i maps
// to bit position (N - i) of the amplitude index. Qubit indices are 1-based.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace macroreal::circuit {

using Complex = std::complex<double>;

class QubitRegister {
  public:
    static QubitRegister all_ones(int n);
    static QubitRegister all_zeros(int n);

    int qubit_count() const { return n_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    double norm() const { return amps_.norm(); }

    // |1> -> cos a |1> + sin a |0>, |0> -> cos a |0> - sin a |1>.
    void apply_rotation(int qubit, double angle);
    // Flip target where control is |1>.
    void apply_cnot(int control, int target);
    // Flip target where control is |0>.
    void apply_cnot0(int control, int target);

  private:
    QubitRegister(int n, Eigen::Index one_index);

    int bit_of(int qubit) const { return n_ - qubit; }
    void check_qubit(int qubit, const char* who) const;

    int n_;
    Eigen::VectorXcd amps_;
};

enum class GateKind { Rotate, Cnot, Cnot0 };

struct Gate {
    GateKind kind;
    int q1;        // rotated qubit, or control
    int q2;        // target (-1 for rotations)
    double angle;  // 0 for cnot kinds
    int interval;  // 1-based protocol interval, 0 outside a protocol
};

struct GateLog {
    std::vector<Gate> gates;
    std::vector<int> gates_per_interval;
};

// Replays a log from |1...1>, byte-for-byte the same arithmetic as the
// original run.
QubitRegister replay(int n, const GateLog& log);

struct CatProtocolRun {
    QubitRegister reg;
    GateLog log;
    // Fidelity |<target|state>|^2 against cos(k w dt)|1..1> + sin(k w dt)|0..0>
    // after each interval k.
    std::vector<double> interval_fidelities;
};

// Sequential protocol: start at |1...1>; interval 1 rotates qubit 1 by
// omega_dt and runs the chain of complement-controlled NOTs 1->2->...->N;
// every later interval undoes the chain, rotates qubit 1 again, and redoes
// it. Gate counts: N for the first interval, 2N-1 afterwards.
CatProtocolRun simulate_cat_protocol(int n, double omega_dt, int intervals);

// One interval of the collective rotation: independent single-qubit
// rotations, a single global transformation physically.
QubitRegister simulate_global_rotation(int n, double omega_dt);

struct ScalingRow {
    int n;
    int interval;
    int gates;
};

std::vector<ScalingRow> gate_count_scaling(const std::vector<int>& n_list, int intervals);

// Least-squares slope of steady-state (interval >= 2) gate counts vs n.
double steady_state_slope(const std::vector<ScalingRow>& rows);

}  // namespace macroreal::circuit
