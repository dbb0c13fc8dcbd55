// lab.hpp — Leggett-Garg protocols (sharp and coarse-grained) and the
// classicality conditions for coarse-grained spin dynamics: does measuring
// the system disturb the subsequent coarse-grained statistics?

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macroreal/povm.hpp"
#include "macroreal/sphere.hpp"
#include "macroreal/spin.hpp"

namespace macroreal::lab {

// Correlators of a dichotomic quantity measured pairwise at three times in
// three separate runs: {t1,t2}, {t2,t3}, {t1,t3}. K <= 1 for any
// macrorealistic theory; quantum statistics reach at most 1.5 here.
struct LgiResult {
    double c12;
    double c23;
    double c13;
    double k;  // c12 + c23 - c13, from explicit run statistics
    double t1, t2, t3;
    std::string protocol;
    // For the projective protocol: K from the survival-amplitude closed form
    // 4 p(dt) sqrt(p(2dt)) cos(2a - b) - 4 p(2dt) + 1.
    std::optional<double> k_closed_form;
};

// Probabilities of the coarse protocol, outcome labels '-' (index 0, lower
// slot) and '+' (index 1). q21[a][b] = P(b at t2 | a at t1), and so on;
// q31 comes from the run with no intermediate measurement. seq holds the
// three-time joint probabilities from a run measured at all three times.
struct PathTable {
    double p1[2];          // first-measurement probabilities at t1
    double p2[2];          // first-measurement probabilities at t2 (undisturbed)
    double q21[2][2];
    double q32[2][2];
    double q31[2][2];
    double seq[2][2][2];   // joint P(a at t1, b at t2, c at t3)
};

// 2 cos(delta_e * dt) - cos(2 delta_e * dt); the two-level maximum is 1.5 at
// delta_e * dt = pi/3 and 5 pi/3.
double two_level_k(double delta_e, double dt);

// Sharp protocol: observable A = 2|psi0><psi0| - 1 measured projectively at
// t = 0, dt, 2 dt. Returns both the explicit-statistics K and the closed form.
LgiResult lgi_projective(const spin::Propagator& p, const spin::StateVector& psi0, double dt);

struct CoarseLgi {
    LgiResult result;
    PathTable paths;
};

// Coarse-grained protocol on a dichotomic (2-slot) partition. Exact
// enumeration over outcome branches with the Kraus state update; the (1,3)
// correlator is computed from a run with no measurement at t2.
CoarseLgi lgi_coarse(const spin::Propagator& p, const spin::DensityMatrix& rho0,
                     const povm::SlotPartition& partition, double t1, double t2, double t3);

// ----------------------------------------------------------------- Conditions

enum class ConditionId { Mixture, Evolution, Sufficient };

struct Witness {
    double theta;
    double phi;
    double t;
    int slot;
};

struct ConditionReport {
    ConditionId id;
    double score;       // overlap in [0,1] for Mixture/Evolution; epsilon for Sufficient
    double threshold;
    bool pass;
    Witness witness;    // location of the worst pointwise discrepancy
};

// Does the pre-measurement Q-distribution equal the weighted mixture of the
// post-measurement ones? Score is the overlap; witness marks the largest
// pointwise deviation. Passes when 1 - overlap <= threshold.
ConditionReport mixture_condition(const spin::DensityMatrix& rho, const povm::SlotPartition& partition,
                                  const sphere::SphereGrid& grid, double threshold = 0.05);

// Does measuring at t_i disturb the Q-distribution at t_j? Compares the
// undisturbed evolution against the measured-then-evolved mixture.
ConditionReport evolution_condition(const spin::DensityMatrix& rho0, const spin::Propagator& p,
                                    const povm::SlotPartition& partition, double t_i, double t_j,
                                    const sphere::SphereGrid& grid, double threshold = 0.05);

// epsilon = 1 - max_slot <psi|P_slot|psi> with |psi> = U_t |Omega>. Zero when
// one slot captures the evolved coherent state entirely.
double classicality_deviation(const spin::Propagator& p, const povm::SlotPartition& partition,
                              double t, const spin::Direction& dir);

struct ClassifyOptions {
    double threshold = 0.05;       // classical iff max epsilon <= threshold
    double border_margin = 2.0;    // exclusion radius in units of 1/sqrt(j)
    double packet_norm_cut = 0.9;  // |<J>|/j above which the border exclusion applies
};

struct Classification {
    bool classical;
    double max_epsilon;
    double mean_epsilon;
    Witness witness;      // configuration attaining max epsilon
    int n_evaluated;
    int n_excluded;
    double threshold;
};

// Samples epsilon over (t, direction) pairs. A pair is excluded when the
// evolved state is still a well-formed packet (|<J>| >= packet_norm_cut * j)
// sitting within border_margin/sqrt(j) of a slot border in polar angle --
// deviations there are expected for any dynamics and carry no signal.
Classification classify_hamiltonian(const spin::Propagator& p, const povm::SlotPartition& partition,
                                    const std::vector<double>& times,
                                    const std::vector<spin::Direction>& directions,
                                    const ClassifyOptions& options = {});

// Deterministic product sample of directions (uniform in cos(theta) x phi).
std::vector<spin::Direction> direction_sample(int n_polar, int n_azimuth);

}  // namespace macroreal::lab
