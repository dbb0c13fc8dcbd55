#include "macroreal/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace macroreal::circuit {

namespace {

constexpr int kMaxQubits = 24;  // 2^24 amplitudes is the supported ceiling

}  // namespace

QubitRegister::QubitRegister(int n, Eigen::Index one_index) : n_(n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("QubitRegister: require 1 <= n <= " +
                                    std::to_string(kMaxQubits));
    }
    amps_ = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    amps_(one_index) = 1.0;
}

QubitRegister QubitRegister::all_ones(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("QubitRegister: require 1 <= n <= " +
                                    std::to_string(kMaxQubits));
    }
    return QubitRegister(n, (Eigen::Index(1) << n) - 1);
}

QubitRegister QubitRegister::all_zeros(int n) { return QubitRegister(n, 0); }

void QubitRegister::check_qubit(int qubit, const char* who) const {
    if (qubit < 1 || qubit > n_) {
        throw std::invalid_argument(std::string(who) + ": qubit index out of range");
    }
}

void QubitRegister::apply_rotation(int qubit, double angle) {
    check_qubit(qubit, "apply_rotation");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Eigen::Index mask = Eigen::Index(1) << bit_of(qubit);
    const Eigen::Index size = amps_.size();
    for (Eigen::Index i = 0; i < size; ++i) {
        if (i & mask) continue;  // visit each pair once via its |0> member
        const Complex a0 = amps_(i);
        const Complex a1 = amps_(i | mask);
        amps_(i) = c * a0 + s * a1;
        amps_(i | mask) = c * a1 - s * a0;
    }
}

void QubitRegister::apply_cnot(int control, int target) {
    check_qubit(control, "apply_cnot");
    check_qubit(target, "apply_cnot");
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control and target must differ");
    }
    const Eigen::Index cmask = Eigen::Index(1) << bit_of(control);
    const Eigen::Index tmask = Eigen::Index(1) << bit_of(target);
    const Eigen::Index size = amps_.size();
    for (Eigen::Index i = 0; i < size; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_(i), amps_(i | tmask));
        }
    }
}

void QubitRegister::apply_cnot0(int control, int target) {
    check_qubit(control, "apply_cnot0");
    check_qubit(target, "apply_cnot0");
    if (control == target) {
        throw std::invalid_argument("apply_cnot0: control and target must differ");
    }
    const Eigen::Index cmask = Eigen::Index(1) << bit_of(control);
    const Eigen::Index tmask = Eigen::Index(1) << bit_of(target);
    const Eigen::Index size = amps_.size();
    for (Eigen::Index i = 0; i < size; ++i) {
        if (!(i & cmask) && !(i & tmask)) {
            std::swap(amps_(i), amps_(i | tmask));
        }
    }
}

QubitRegister replay(int n, const GateLog& log) {
    QubitRegister reg = QubitRegister::all_ones(n);
    for (const Gate& gate : log.gates) {
        switch (gate.kind) {
            case GateKind::Rotate: reg.apply_rotation(gate.q1, gate.angle); break;
            case GateKind::Cnot: reg.apply_cnot(gate.q1, gate.q2); break;
            case GateKind::Cnot0: reg.apply_cnot0(gate.q1, gate.q2); break;
        }
    }
    return reg;
}

CatProtocolRun simulate_cat_protocol(int n, double omega_dt, int intervals) {
    if (n < 2) throw std::invalid_argument("simulate_cat_protocol: require n >= 2");
    if (intervals < 1) throw std::invalid_argument("simulate_cat_protocol: require intervals >= 1");

    CatProtocolRun run{QubitRegister::all_ones(n), {}, {}};
    run.log.gates_per_interval.reserve(intervals);
    run.interval_fidelities.reserve(intervals);

    const auto rotate_first = [&](int interval) {
        run.reg.apply_rotation(1, omega_dt);
        run.log.gates.push_back({GateKind::Rotate, 1, -1, omega_dt, interval});
    };
    // Chain of complement-controlled NOTs: with the register starting from
    // |1...1>, flipping the target when the control is |0> is what copies the
    // rotated branch down the chain and lands on cos|1..1> + sin|0..0>.
    const auto chain = [&](int interval, bool undo) {
        for (int i = 0; i < n - 1; ++i) {
            const int q = undo ? (n - 1 - i) : (1 + i);
            run.reg.apply_cnot0(q, q + 1);
            run.log.gates.push_back({GateKind::Cnot0, q, q + 1, 0.0, interval});
        }
    };

    for (int k = 1; k <= intervals; ++k) {
        const std::size_t before = run.log.gates.size();
        if (k == 1) {
            rotate_first(k);
            chain(k, false);
        } else {
            chain(k, true);
            rotate_first(k);
            chain(k, false);
        }
        run.log.gates_per_interval.push_back(static_cast<int>(run.log.gates.size() - before));

        const double target_angle = k * omega_dt;
        const Eigen::Index top = run.reg.amplitudes().size() - 1;
        const Complex a_ones = run.reg.amplitudes()(top);
        const Complex a_zeros = run.reg.amplitudes()(0);
        const Complex inner =
            std::cos(target_angle) * a_ones + std::sin(target_angle) * a_zeros;
        run.interval_fidelities.push_back(std::norm(inner));
    }
    return run;
}

QubitRegister simulate_global_rotation(int n, double omega_dt) {
    QubitRegister reg = QubitRegister::all_ones(n);
    for (int q = 1; q <= n; ++q) reg.apply_rotation(q, omega_dt);
    return reg;
}

std::vector<ScalingRow> gate_count_scaling(const std::vector<int>& n_list, int intervals) {
    std::vector<ScalingRow> rows;
    rows.reserve(n_list.size() * intervals);
    for (int n : n_list) {
        // Counts follow from the protocol structure; no state simulation needed.
        for (int k = 1; k <= intervals; ++k) {
            rows.push_back({n, k, k == 1 ? n : 2 * n - 1});
        }
    }
    return rows;
}

double steady_state_slope(const std::vector<ScalingRow>& rows) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const ScalingRow& row : rows) {
        if (row.interval < 2) continue;
        sx += row.n;
        sy += row.gates;
        sxx += double(row.n) * row.n;
        sxy += double(row.n) * row.gates;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("steady_state_slope: need at least two rows");
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("steady_state_slope: need at least two distinct n");
    return (count * sxy - sx * sy) / denom;
}

}  // namespace macroreal::circuit
