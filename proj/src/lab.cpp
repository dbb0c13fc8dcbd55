#include "macroreal/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace macroreal::lab {

namespace {

using spin::Complex;
using spin::Matrix;
using spin::Vector;

constexpr double kPi = std::numbers::pi;

double sign_of(int label) { return label == 1 ? 1.0 : -1.0; }

// Unnormalized branch state after the diagonal Kraus update, with its weight.
struct Branch {
    Matrix op;      // M rho M, unnormalized
    double weight;  // trace
};

Branch apply_kraus(const Matrix& rho, const Eigen::VectorXd& sqrt_g) {
    Branch b;
    b.op = (sqrt_g * sqrt_g.transpose()).cast<Complex>().cwiseProduct(rho);
    b.weight = b.op.trace().real();
    return b;
}

double povm_expectation(const Matrix& rho, const Eigen::VectorXd& g) {
    return g.dot(rho.diagonal().real());
}

}  // namespace

double two_level_k(double delta_e, double dt) {
    const double x = delta_e * dt;
    return 2.0 * std::cos(x) - std::cos(2.0 * x);
}

LgiResult lgi_projective(const spin::Propagator& p, const spin::StateVector& psi0, double dt) {
    if (!(psi0.space() == p.space())) {
        throw std::invalid_argument("lgi_projective: dimension mismatch");
    }
    if (!std::isfinite(dt) || dt < 0.0) {
        throw std::invalid_argument("lgi_projective: require dt >= 0");
    }

    const Vector& phi0 = psi0.amplitudes();
    const Matrix u = p.evolution_operator(dt);

    // Survival amplitudes <psi0|psi(dt)> and <psi0|psi(2dt)>.
    const Vector v1 = u * phi0;
    const Vector v2 = u * v1;
    const Complex a1 = phi0.dot(v1);  // Eigen dot conjugates the left argument
    const Complex a2 = phi0.dot(v2);
    const double p1 = std::norm(a1);
    const double p2 = std::norm(a2);

    // Explicit three-run statistics for A = 2|psi0><psi0| - 1 with t1 = 0.
    // At t1 the state is psi0, so the first outcome is '+' with certainty.
    const double c12 = 2.0 * p1 - 1.0;
    const double c13 = 2.0 * p2 - 1.0;

    // Run {t2, t3}: project at t2, evolve both branches by dt, ask again.
    double c23 = 0.0;
    {
        // '+' branch: collapse to psi0 (weight p1).
        if (p1 > 0.0) {
            const double q_plus = std::norm(phi0.dot(Vector(u * phi0)));
            c23 += p1 * (2.0 * q_plus - 1.0);
        }
        // '-' branch: orthogonal complement of psi0 inside psi(dt).
        const double w_minus = 1.0 - p1;
        if (w_minus > 1e-300) {
            const Vector residual = v1 - a1 * phi0;  // unnormalized
            const double q_plus = std::norm(phi0.dot(Vector(u * residual))) / w_minus;
            c23 -= w_minus * (2.0 * q_plus - 1.0);
        }
    }

    LgiResult r;
    r.c12 = c12;
    r.c23 = c23;
    r.c13 = c13;
    r.k = c12 + c23 - c13;
    r.t1 = 0.0;
    r.t2 = dt;
    r.t3 = 2.0 * dt;
    r.protocol = "projective";

    const double gamma = 2.0 * std::arg(a1) - std::arg(a2);
    r.k_closed_form = 4.0 * p1 * std::sqrt(p2) * std::cos(gamma) - 4.0 * p2 + 1.0;
    return r;
}

CoarseLgi lgi_coarse(const spin::Propagator& p, const spin::DensityMatrix& rho0,
                     const povm::SlotPartition& partition, double t1, double t2, double t3) {
    if (!(rho0.space() == p.space()) || !(partition.space() == p.space())) {
        throw std::invalid_argument("lgi_coarse: dimension mismatch");
    }
    if (partition.slot_count() != 2) {
        throw std::invalid_argument("lgi_coarse: partition must be dichotomic (2 slots)");
    }
    if (!(t1 <= t2 && t2 <= t3)) {
        throw std::invalid_argument("lgi_coarse: require t1 <= t2 <= t3");
    }

    const Eigen::MatrixXd g = povm::g_weights(partition);
    // Label '+' (index 1) is the slot with the larger center m.
    const int plus_slot = partition.slot_center_m(1) > partition.slot_center_m(0) ? 1 : 0;
    const auto slot_g = [&](int label) {
        return Eigen::VectorXd(g.row(label == 1 ? plus_slot : 1 - plus_slot).transpose());
    };
    const Eigen::VectorXd sqrt_g[2] = {slot_g(0).array().sqrt().matrix(),
                                       slot_g(1).array().sqrt().matrix()};

    const auto evolved = [&](const Matrix& rho, double dt) -> Matrix {
        if (dt == 0.0) return rho;
        const Matrix u = p.evolution_operator(dt);
        return u * rho * u.adjoint();
    };

    const Matrix rho_t1 = evolved(rho0.entries(), t1);
    const Matrix rho_t2 = evolved(rho_t1, t2 - t1);

    // Joint probabilities P(a at ti, b at tj) = Tr[P_b U (M_a rho(ti) M_a) U^dag];
    // correlators never divide by branch weights.
    const auto correlator = [&](const Matrix& rho_first, double gap, double joint[2][2]) {
        double c = 0.0;
        for (int a = 0; a < 2; ++a) {
            const Branch branch = apply_kraus(rho_first, sqrt_g[a]);
            const Matrix later = evolved(branch.op, gap);
            for (int b = 0; b < 2; ++b) {
                joint[a][b] = povm_expectation(later, slot_g(b));
                c += sign_of(a) * sign_of(b) * joint[a][b];
            }
        }
        return c;
    };

    double joint12[2][2], joint23[2][2], joint13[2][2];
    const double c12 = correlator(rho_t1, t2 - t1, joint12);
    const double c23 = correlator(rho_t2, t3 - t2, joint23);
    const double c13 = correlator(rho_t1, t3 - t1, joint13);

    CoarseLgi out;
    out.result.c12 = c12;
    out.result.c23 = c23;
    out.result.c13 = c13;
    out.result.k = c12 + c23 - c13;
    out.result.t1 = t1;
    out.result.t2 = t2;
    out.result.t3 = t3;
    out.result.protocol = "coarse";
    out.result.k_closed_form = std::nullopt;

    // Path table: marginals, conditionals (guarded against empty branches) and
    // the three-time joints from a run measured at t1, t2 and t3.
    PathTable& paths = out.paths;
    for (int a = 0; a < 2; ++a) {
        paths.p1[a] = joint12[a][0] + joint12[a][1];
        paths.p2[a] = joint23[a][0] + joint23[a][1];
    }
    const auto conditional = [](const double joint[2][2], double cond[2][2]) {
        for (int a = 0; a < 2; ++a) {
            const double w = joint[a][0] + joint[a][1];
            for (int b = 0; b < 2; ++b) cond[a][b] = w > 1e-14 ? joint[a][b] / w : 0.0;
        }
    };
    conditional(joint12, paths.q21);
    conditional(joint23, paths.q32);
    conditional(joint13, paths.q31);

    for (int a = 0; a < 2; ++a) {
        const Branch first = apply_kraus(rho_t1, sqrt_g[a]);
        const Matrix at_t2 = evolved(first.op, t2 - t1);
        for (int b = 0; b < 2; ++b) {
            const Branch second = apply_kraus(at_t2, sqrt_g[b]);
            const Matrix at_t3 = evolved(second.op, t3 - t2);
            for (int c = 0; c < 2; ++c) {
                paths.seq[a][b][c] = povm_expectation(at_t3, slot_g(c));
            }
        }
    }
    return out;
}

namespace {

ConditionReport overlap_report(ConditionId id, const sphere::SphereDistribution& lhs,
                               const sphere::SphereDistribution& rhs, double threshold,
                               double witness_t) {
    const double score = sphere::overlap(lhs, rhs);

    // Witness: node of maximal pointwise discrepancy.
    const sphere::SphereGrid& grid = lhs.grid();
    const int na = grid.azimuth_count();
    int worst = 0;
    double worst_dev = -1.0;
    for (int i = 0; i < grid.node_count(); ++i) {
        const double dev = std::abs(lhs.values()(i) - rhs.values()(i));
        if (dev > worst_dev) {
            worst_dev = dev;
            worst = i;
        }
    }
    ConditionReport report;
    report.id = id;
    report.score = score;
    report.threshold = threshold;
    report.pass = (1.0 - score) <= threshold;
    report.witness = {grid.node_theta(worst / na), grid.node_phi(worst % na), witness_t, -1};
    return report;
}

}  // namespace

ConditionReport mixture_condition(const spin::DensityMatrix& rho, const povm::SlotPartition& partition,
                                  const sphere::SphereGrid& grid, double threshold) {
    // The weighted mixture sum_m w_m Q_m equals the Q-function of the
    // non-selective post-measurement state, dropped outcomes included.
    const sphere::SphereDistribution lhs = sphere::q_function(rho, grid);
    const sphere::SphereDistribution rhs = sphere::q_function(povm::decohere(rho, partition), grid);
    return overlap_report(ConditionId::Mixture, lhs, rhs, threshold, 0.0);
}

ConditionReport evolution_condition(const spin::DensityMatrix& rho0, const spin::Propagator& p,
                                    const povm::SlotPartition& partition, double t_i, double t_j,
                                    const sphere::SphereGrid& grid, double threshold) {
    if (!(t_i <= t_j)) {
        throw std::invalid_argument("evolution_condition: require t_i <= t_j");
    }
    const spin::DensityMatrix undisturbed = spin::evolve(p, rho0, t_j);
    const spin::DensityMatrix at_ti = spin::evolve(p, rho0, t_i);
    const spin::DensityMatrix measured = spin::evolve(p, povm::decohere(at_ti, partition), t_j - t_i);

    const sphere::SphereDistribution lhs = sphere::q_function(undisturbed, grid);
    const sphere::SphereDistribution rhs = sphere::q_function(measured, grid);
    ConditionReport report = overlap_report(ConditionId::Evolution, lhs, rhs, threshold, t_i);
    return report;
}

double classicality_deviation(const spin::Propagator& p, const povm::SlotPartition& partition,
                              double t, const spin::Direction& dir) {
    if (!(partition.space() == p.space())) {
        throw std::invalid_argument("classicality_deviation: dimension mismatch");
    }
    const spin::StateVector psi = spin::evolve(p, spin::coherent_state(p.space(), dir), t);
    const Eigen::VectorXd probs = povm::outcome_probabilities(
        spin::DensityMatrix::pure(psi), partition);
    return 1.0 - probs.maxCoeff();
}

Classification classify_hamiltonian(const spin::Propagator& p, const povm::SlotPartition& partition,
                                    const std::vector<double>& times,
                                    const std::vector<spin::Direction>& directions,
                                    const ClassifyOptions& options) {
    if (times.empty() || directions.empty()) {
        throw std::invalid_argument("classify_hamiltonian: empty sample set");
    }
    if (!(options.threshold >= 0.0)) {
        throw std::invalid_argument("classify_hamiltonian: negative threshold");
    }
    const spin::SpinSpace space = p.space();
    const double j = space.j();
    const std::vector<double> borders = partition.border_thetas();
    const double margin = options.border_margin / std::sqrt(j);
    const spin::SpinOperators ops = spin::build_operators(space);

    Classification cls;
    cls.max_epsilon = 0.0;
    cls.mean_epsilon = 0.0;
    cls.n_evaluated = 0;
    cls.n_excluded = 0;
    cls.witness = {0.0, 0.0, 0.0, -1};
    cls.threshold = options.threshold;

    for (const spin::Direction& dir : directions) {
        const spin::StateVector start = spin::coherent_state(space, dir);
        for (double t : times) {
            const spin::StateVector psi = spin::evolve(p, start, t);

            // Where does the evolved state live? If it is still a coherent-like
            // packet near a slot border, deviations are expected and excluded.
            const Vector& amps = psi.amplitudes();
            const double jx = (amps.adjoint() * ops.jx * amps)(0).real();
            const double jy = (amps.adjoint() * ops.jy * amps)(0).real();
            const double jz = (amps.adjoint() * ops.jz * amps)(0).real();
            const double norm = std::sqrt(jx * jx + jy * jy + jz * jz);
            if (norm >= options.packet_norm_cut * j) {
                const double packet_theta = std::acos(std::clamp(jz / norm, -1.0, 1.0));
                const bool near_border =
                    std::any_of(borders.begin(), borders.end(), [&](double b) {
                        return std::abs(packet_theta - b) < margin;
                    });
                if (near_border) {
                    ++cls.n_excluded;
                    continue;
                }
            }

            const Eigen::VectorXd probs =
                povm::outcome_probabilities(spin::DensityMatrix::pure(psi), partition);
            const double eps = 1.0 - probs.maxCoeff();
            cls.mean_epsilon += eps;
            ++cls.n_evaluated;
            if (eps > cls.max_epsilon) {
                cls.max_epsilon = eps;
                cls.witness = {dir.theta, dir.phi, t, -1};
            }
        }
    }
    if (cls.n_evaluated == 0) {
        throw std::domain_error("classify_hamiltonian: every sample fell in the border zone");
    }
    cls.mean_epsilon /= cls.n_evaluated;
    cls.classical = cls.max_epsilon <= options.threshold;
    return cls;
}

std::vector<spin::Direction> direction_sample(int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1) {
        throw std::invalid_argument("direction_sample: require positive counts");
    }
    std::vector<spin::Direction> dirs;
    dirs.reserve(n_polar * n_azimuth + 2);
    dirs.emplace_back(0.0, 0.0);
    for (int i = 0; i < n_polar; ++i) {
        const double x = -1.0 + (i + 0.5) * 2.0 / n_polar;
        const double theta = std::acos(x);
        for (int k = 0; k < n_azimuth; ++k) {
            dirs.emplace_back(theta, (k + 0.5) * 2.0 * kPi / n_azimuth);
        }
    }
    dirs.emplace_back(kPi, 0.0);
    return dirs;
}

}  // namespace macroreal::lab
