/* macroreal.h — C API of the macroreal shared library.
 *
 * Simulation and analysis of coarse-grained measurements on spin-j systems:
 * coherent states, phase-space distributions, slot POVMs, Leggett-Garg
 * protocols, classicality conditions, and the qubit-chain cat protocol.
 *
 * Conventions:
 *   - All functions returning mr_status report MR_OK (0) on success; on
 *     failure the out-parameters are untouched and mr_last_error() carries a
 *     message (thread-local).
 *   - Handles are opaque; free each exactly once with its mr_*_free function.
 *     NULL is accepted by every free function.
 *   - Dicke amplitudes are indexed by ascending m in {-j..+j}; hbar = 1.
 */

#ifndef MACROREAL_H
#define MACROREAL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MR_API __declspec(dllexport)
#else
#define MR_API __attribute__((visibility("default")))
#endif

typedef enum mr_status {
    MR_OK = 0,
    MR_ERR_INVALID_ARGUMENT = 1, /* bad input: dimensions, ranges, non-Hermitian data */
    MR_ERR_NUMERIC = 2,          /* numerical contract violated during evaluation */
    MR_ERR_ALLOC = 3,
    MR_ERR_INTERNAL = 4
} mr_status;

MR_API const char* mr_version(void);
/* Message for the most recent failure on this thread; never NULL. */
MR_API const char* mr_last_error(void);

typedef struct mr_space mr_space;
typedef struct mr_state mr_state;
typedef struct mr_densmat mr_densmat;
typedef struct mr_propagator mr_propagator;
typedef struct mr_partition mr_partition;
typedef struct mr_grid mr_grid;
typedef struct mr_dist mr_dist;
typedef struct mr_qreg mr_qreg;
typedef struct mr_catrun mr_catrun;

/* ------------------------------------------------------------------ spaces */

/* two_j = 2j >= 1; dimension is two_j + 1. */
MR_API mr_status mr_space_create(int two_j, mr_space** out);
MR_API void mr_space_free(mr_space* space);
MR_API int mr_space_dim(const mr_space* space);
MR_API double mr_space_j(const mr_space* space);

/* ------------------------------------------------------------------ states */

MR_API mr_status mr_coherent_state(const mr_space* space, double theta, double phi,
                                   mr_state** out);
MR_API mr_status mr_basis_state(const mr_space* space, int index, mr_state** out);
/* cos(angle)|+j> + sin(angle)|-j>. */
MR_API mr_status mr_cat_state(const mr_space* space, double angle, mr_state** out);
MR_API mr_status mr_state_create(const mr_space* space, const double* re, const double* im,
                                 int len, mr_state** out);
MR_API mr_status mr_state_amplitudes(const mr_state* state, double* re, double* im);
MR_API void mr_state_free(mr_state* state);

MR_API mr_status mr_densmat_pure(const mr_state* state, mr_densmat** out);
MR_API mr_status mr_densmat_mixed(const mr_space* space, mr_densmat** out);
/* cos^2(angle)|+j><+j| + sin^2(angle)|-j><-j|. */
MR_API mr_status mr_cat_mixture(const mr_space* space, double angle, mr_densmat** out);
MR_API mr_status mr_densmat_create(const mr_space* space, const double* re, const double* im,
                                   mr_densmat** out);
MR_API mr_status mr_densmat_entries(const mr_densmat* rho, double* re, double* im);
/* Conjugate by the rotation taking |+j> to the coherent state along
 * (theta, phi); used to re-express distributions in a rotated frame. */
MR_API mr_status mr_densmat_rotate_frame(const mr_densmat* rho, double theta, double phi,
                                         mr_densmat** out);
MR_API void mr_densmat_free(mr_densmat* rho);

/* ------------------------------------------------------------- propagators */

/* axis is one of 'x', 'y', 'z'; H = omega * J_axis. */
MR_API mr_status mr_propagator_rotation(const mr_space* space, char axis, double omega,
                                        mr_propagator** out);
/* H = i omega (|-j><+j| - |+j><-j|). */
MR_API mr_status mr_propagator_catflip(const mr_space* space, double omega, mr_propagator** out);
/* Diagonal H with energy gap delta_e between the two storage indices. */
MR_API mr_status mr_propagator_two_level(const mr_space* space, double delta_e, int level_a,
                                         int level_b, mr_propagator** out);
/* Dense Hermitian matrix, row-major re/im of size dim*dim. */
MR_API mr_status mr_propagator_custom(const mr_space* space, const double* re, const double* im,
                                      mr_propagator** out);
MR_API mr_status mr_propagator_energies(const mr_propagator* prop, double* out);
MR_API mr_status mr_evolve_state(const mr_propagator* prop, const mr_state* psi, double t,
                                 mr_state** out);
MR_API mr_status mr_evolve_densmat(const mr_propagator* prop, const mr_densmat* rho, double t,
                                   mr_densmat** out);
/* Survival probability |<psi0|psi(t)>|^2 and the amplitude's phase. */
MR_API mr_status mr_survival(const mr_propagator* prop, const mr_state* psi0, double t,
                             double* probability, double* phase);
MR_API void mr_propagator_free(mr_propagator* prop);

/* ------------------------------------------------------------------- grids */

MR_API mr_status mr_grid_create(const mr_space* space, double oversample, mr_grid** out);
/* Grid whose polar panels split at the partition borders, making slot-region
 * integrals of band-limited integrands exact. */
MR_API mr_status mr_grid_aligned(const mr_partition* partition, double oversample, mr_grid** out);
MR_API int mr_grid_node_count(const mr_grid* grid);
/* Arrays of length mr_grid_node_count. */
MR_API mr_status mr_grid_nodes(const mr_grid* grid, double* theta, double* phi, double* weight);
MR_API void mr_grid_free(mr_grid* grid);

/* ----------------------------------------------------------- distributions */

MR_API mr_status mr_q_function(const mr_densmat* rho, const mr_grid* grid, mr_dist** out);
MR_API mr_status mr_p_function(const mr_densmat* rho, const mr_grid* grid, mr_dist** out);
/* Q of the two-pole superposition at time t and of the matching mixture. */
MR_API mr_status mr_cat_q_pair(const mr_space* space, double t, double omega, const mr_grid* grid,
                               mr_dist** out_sup, mr_dist** out_mix);
MR_API int mr_dist_node_count(const mr_dist* dist);
MR_API mr_status mr_dist_values(const mr_dist* dist, double* out);
MR_API mr_status mr_dist_integral(const mr_dist* dist, double* out);
MR_API mr_status mr_dist_min(const mr_dist* dist, double* out);
/* Bhattacharyya overlap; clipped_* report negative mass removed from either
 * argument (failure above 1e-6). */
MR_API mr_status mr_dist_overlap(const mr_dist* f, const mr_dist* g, double* value,
                                 double* clipped_f, double* clipped_g);
MR_API mr_status mr_dist_integrate_band(const mr_dist* dist, double theta_lo, double theta_hi,
                                        double* out);
/* CSV with header theta,phi,weight,value; shortest round-trip doubles. */
MR_API mr_status mr_dist_write_csv(const mr_dist* dist, const char* path);
MR_API void mr_dist_free(mr_dist* dist);

/* -------------------------------------------------- partitions and outcomes */

MR_API mr_status mr_partition_uniform(const mr_space* space, int n_slots, mr_partition** out);
MR_API mr_status mr_partition_width(const mr_space* space, double slot_width, mr_partition** out);
MR_API mr_status mr_partition_from_cuts(const mr_space* space, const double* cuts, int n_cuts,
                                        mr_partition** out);
/* Two slots: |m| > cut (both caps together) vs the equatorial belt. */
MR_API mr_status mr_partition_merged_poles(const mr_space* space, double cut, mr_partition** out);
MR_API int mr_partition_slot_count(const mr_partition* partition);
/* Narrowest band width over sqrt(j); the coarse regime wants this large. */
MR_API double mr_partition_coarseness(const mr_partition* partition);
/* Row-major slot_count x dim table of POVM diagonal weights. */
MR_API mr_status mr_partition_g_weights(const mr_partition* partition, double* out);
MR_API void mr_partition_free(mr_partition* partition);

/* Outcome probabilities Tr[rho P_slot], length slot_count. */
MR_API mr_status mr_measure_probs(const mr_densmat* rho, const mr_partition* partition,
                                  double* out);
/* Same probabilities via the classical route: Q-function mass per slot
 * region. Use an aligned grid for exact agreement. */
MR_API mr_status mr_classical_probs(const mr_densmat* rho, const mr_partition* partition,
                                    const mr_grid* grid, double* out);

/* ------------------------------------------------------ Leggett-Garg + lab */

typedef struct mr_lgi_result {
    double c12, c23, c13;
    double k;
    double k_closed_form; /* valid when has_closed_form != 0 */
    int has_closed_form;
    double t1, t2, t3;
} mr_lgi_result;

/* 2 cos(delta_e dt) - cos(2 delta_e dt). */
MR_API mr_status mr_two_level_k(double delta_e, double dt, double* out);
MR_API mr_status mr_lgi_projective(const mr_propagator* prop, const mr_state* psi0, double dt,
                                   mr_lgi_result* out);
MR_API mr_status mr_lgi_coarse(const mr_propagator* prop, const mr_densmat* rho0,
                               const mr_partition* partition, double t1, double t2, double t3,
                               mr_lgi_result* out);

typedef struct mr_condition_report {
    int condition; /* 0 mixture, 1 evolution */
    double score;  /* overlap in [0, 1] */
    double threshold;
    int pass;
    double witness_theta, witness_phi, witness_t;
} mr_condition_report;

MR_API mr_status mr_mixture_condition(const mr_densmat* rho, const mr_partition* partition,
                                      const mr_grid* grid, double threshold,
                                      mr_condition_report* out);
MR_API mr_status mr_evolution_condition(const mr_densmat* rho0, const mr_propagator* prop,
                                        const mr_partition* partition, double t_i, double t_j,
                                        const mr_grid* grid, double threshold,
                                        mr_condition_report* out);
/* 1 - max_slot <psi|P_slot|psi> for |psi> = U_t |theta, phi>. */
MR_API mr_status mr_classicality_deviation(const mr_propagator* prop,
                                           const mr_partition* partition, double t, double theta,
                                           double phi, double* out);

typedef struct mr_classification {
    int classical;
    double max_epsilon;
    double mean_epsilon;
    double threshold;
    double witness_theta, witness_phi, witness_t;
    int n_evaluated;
    int n_excluded;
} mr_classification;

MR_API mr_status mr_classify(const mr_propagator* prop, const mr_partition* partition,
                             const double* times, int n_times, const double* dir_thetas,
                             const double* dir_phis, int n_dirs, double threshold,
                             mr_classification* out);

/* Deterministic direction sample: product grid plus the two poles. */
MR_API int mr_direction_sample_count(int n_polar, int n_azimuth);
MR_API mr_status mr_direction_sample(int n_polar, int n_azimuth, double* thetas, double* phis);

/* ---------------------------------------------------------- qubit circuits */

MR_API mr_status mr_qreg_create(int n, int start_all_ones, mr_qreg** out);
MR_API int mr_qreg_dim(const mr_qreg* reg);
/* Qubit indices are 1-based; qubit 1 is the leftmost (most significant). */
MR_API mr_status mr_qreg_rotate(mr_qreg* reg, int qubit, double angle);
MR_API mr_status mr_qreg_cnot(mr_qreg* reg, int control, int target);
MR_API mr_status mr_qreg_cnot0(mr_qreg* reg, int control, int target);
MR_API mr_status mr_qreg_amplitudes(const mr_qreg* reg, double* re, double* im);
MR_API void mr_qreg_free(mr_qreg* reg);

/* Sequential cat protocol from |1...1>: N gates in interval 1, 2N-1 after. */
MR_API mr_status mr_catrun_create(int n, double omega_dt, int intervals, mr_catrun** out);
MR_API int mr_catrun_gate_total(const mr_catrun* run);
MR_API int mr_catrun_intervals(const mr_catrun* run);
/* kind: 0 rotate, 1 cnot, 2 cnot0. q2 = -1 for rotations. */
MR_API mr_status mr_catrun_gate(const mr_catrun* run, int index, int* interval, int* kind,
                                int* q1, int* q2, double* angle);
MR_API mr_status mr_catrun_interval_counts(const mr_catrun* run, int* out);
MR_API mr_status mr_catrun_fidelities(const mr_catrun* run, double* out);
/* Amplitudes of |1...1> and |0...0> in the final state. */
MR_API mr_status mr_catrun_pole_amplitudes(const mr_catrun* run, double* ones_re, double* ones_im,
                                           double* zeros_re, double* zeros_im);
MR_API void mr_catrun_free(mr_catrun* run);

/* One interval of the collective rotation, as a product state. */
MR_API mr_status mr_global_rotation(int n, double omega_dt, mr_qreg** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MACROREAL_H */
