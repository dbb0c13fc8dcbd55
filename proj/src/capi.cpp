#include "macroreal.h"

#include "macroreal/circuit.hpp"
#include "macroreal/lab.hpp"
#include "macroreal/povm.hpp"
#include "macroreal/sphere.hpp"
#include "macroreal/spin.hpp"

#include <exception>
#include <fstream>
#include <new>
#include <string>
#include <vector>

namespace {

thread_local std::string g_last_error;

template <typename F>
mr_status guarded(F&& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return MR_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return MR_ERR_NUMERIC;
    } catch (const std::bad_alloc&) {
        g_last_error = "allocation failure";
        return MR_ERR_ALLOC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MR_ERR_INTERNAL;
    }
}

mr_status invalid(const char* message) {
    g_last_error = message;
    return MR_ERR_INVALID_ARGUMENT;
}

using macroreal::circuit::CatProtocolRun;
using macroreal::circuit::QubitRegister;
using macroreal::povm::SlotPartition;
using macroreal::sphere::SphereDistribution;
using macroreal::sphere::SphereGrid;
using macroreal::spin::Complex;
using macroreal::spin::DensityMatrix;
using macroreal::spin::Direction;
using macroreal::spin::Matrix;
using macroreal::spin::Propagator;
using macroreal::spin::SpinSpace;
using macroreal::spin::StateVector;
using macroreal::spin::Vector;

Matrix matrix_from_parts(int dim, const double* re, const double* im) {
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const int idx = r * dim + c;
            m(r, c) = Complex(re[idx], im ? im[idx] : 0.0);
        }
    }
    return m;
}

void lgi_to_c(const macroreal::lab::LgiResult& in, mr_lgi_result* out) {
    out->c12 = in.c12;
    out->c23 = in.c23;
    out->c13 = in.c13;
    out->k = in.k;
    out->has_closed_form = in.k_closed_form.has_value() ? 1 : 0;
    out->k_closed_form = in.k_closed_form.value_or(0.0);
    out->t1 = in.t1;
    out->t2 = in.t2;
    out->t3 = in.t3;
}

void report_to_c(const macroreal::lab::ConditionReport& in, mr_condition_report* out) {
    out->condition = in.id == macroreal::lab::ConditionId::Mixture ? 0 : 1;
    out->score = in.score;
    out->threshold = in.threshold;
    out->pass = in.pass ? 1 : 0;
    out->witness_theta = in.witness.theta;
    out->witness_phi = in.witness.phi;
    out->witness_t = in.witness.t;
}

}  // namespace

struct mr_space { SpinSpace impl; };
struct mr_state { StateVector impl; };
struct mr_densmat { DensityMatrix impl; };
struct mr_propagator { Propagator impl; };
struct mr_partition { SlotPartition impl; };
struct mr_grid { SphereGrid impl; };
struct mr_dist { SphereDistribution impl; };
struct mr_qreg { QubitRegister impl; };
struct mr_catrun { CatProtocolRun impl; };

extern "C" {

const char* mr_version(void) { return "0.1.0"; }

const char* mr_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------------ spaces */

mr_status mr_space_create(int two_j, mr_space** out) {
    if (!out) return invalid("mr_space_create: out is NULL");
    return guarded([&] {
        *out = new mr_space{SpinSpace(two_j)};
        return MR_OK;
    });
}

void mr_space_free(mr_space* space) { delete space; }

int mr_space_dim(const mr_space* space) { return space ? space->impl.dim() : 0; }

double mr_space_j(const mr_space* space) { return space ? space->impl.j() : 0.0; }

/* ------------------------------------------------------------------ states */

mr_status mr_coherent_state(const mr_space* space, double theta, double phi, mr_state** out) {
    if (!space || !out) return invalid("mr_coherent_state: NULL argument");
    return guarded([&] {
        *out = new mr_state{macroreal::spin::coherent_state(space->impl, Direction(theta, phi))};
        return MR_OK;
    });
}

mr_status mr_basis_state(const mr_space* space, int index, mr_state** out) {
    if (!space || !out) return invalid("mr_basis_state: NULL argument");
    return guarded([&] {
        *out = new mr_state{macroreal::spin::basis_state(space->impl, index)};
        return MR_OK;
    });
}

mr_status mr_cat_state(const mr_space* space, double angle, mr_state** out) {
    if (!space || !out) return invalid("mr_cat_state: NULL argument");
    return guarded([&] {
        *out = new mr_state{macroreal::spin::cat_state(space->impl, angle)};
        return MR_OK;
    });
}

mr_status mr_state_create(const mr_space* space, const double* re, const double* im, int len,
                          mr_state** out) {
    if (!space || !re || !out) return invalid("mr_state_create: NULL argument");
    return guarded([&] {
        if (len != space->impl.dim()) {
            throw std::invalid_argument("mr_state_create: length does not match dimension");
        }
        Vector v(len);
        for (int i = 0; i < len; ++i) v(i) = Complex(re[i], im ? im[i] : 0.0);
        *out = new mr_state{StateVector(space->impl, std::move(v))};
        return MR_OK;
    });
}

mr_status mr_state_amplitudes(const mr_state* state, double* re, double* im) {
    if (!state || !re || !im) return invalid("mr_state_amplitudes: NULL argument");
    const Vector& v = state->impl.amplitudes();
    for (int i = 0; i < v.size(); ++i) {
        re[i] = v(i).real();
        im[i] = v(i).imag();
    }
    return MR_OK;
}

void mr_state_free(mr_state* state) { delete state; }

mr_status mr_densmat_pure(const mr_state* state, mr_densmat** out) {
    if (!state || !out) return invalid("mr_densmat_pure: NULL argument");
    return guarded([&] {
        *out = new mr_densmat{DensityMatrix::pure(state->impl)};
        return MR_OK;
    });
}

mr_status mr_densmat_mixed(const mr_space* space, mr_densmat** out) {
    if (!space || !out) return invalid("mr_densmat_mixed: NULL argument");
    return guarded([&] {
        *out = new mr_densmat{DensityMatrix::maximally_mixed(space->impl)};
        return MR_OK;
    });
}

mr_status mr_cat_mixture(const mr_space* space, double angle, mr_densmat** out) {
    if (!space || !out) return invalid("mr_cat_mixture: NULL argument");
    return guarded([&] {
        *out = new mr_densmat{macroreal::spin::cat_mixture(space->impl, angle)};
        return MR_OK;
    });
}

mr_status mr_densmat_create(const mr_space* space, const double* re, const double* im,
                            mr_densmat** out) {
    if (!space || !re || !out) return invalid("mr_densmat_create: NULL argument");
    return guarded([&] {
        *out = new mr_densmat{
            DensityMatrix(space->impl, matrix_from_parts(space->impl.dim(), re, im))};
        return MR_OK;
    });
}

mr_status mr_densmat_entries(const mr_densmat* rho, double* re, double* im) {
    if (!rho || !re || !im) return invalid("mr_densmat_entries: NULL argument");
    const Matrix& m = rho->impl.entries();
    const int dim = static_cast<int>(m.rows());
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            re[r * dim + c] = m(r, c).real();
            im[r * dim + c] = m(r, c).imag();
        }
    }
    return MR_OK;
}

mr_status mr_densmat_rotate_frame(const mr_densmat* rho, double theta, double phi,
                                  mr_densmat** out) {
    if (!rho || !out) return invalid("mr_densmat_rotate_frame: NULL argument");
    return guarded([&] {
        *out = new mr_densmat{macroreal::spin::rotate_to_frame(rho->impl, Direction(theta, phi))};
        return MR_OK;
    });
}

void mr_densmat_free(mr_densmat* rho) { delete rho; }

/* ------------------------------------------------------------- propagators */

mr_status mr_propagator_rotation(const mr_space* space, char axis, double omega,
                                 mr_propagator** out) {
    if (!space || !out) return invalid("mr_propagator_rotation: NULL argument");
    return guarded([&] {
        macroreal::spin::Axis ax;
        switch (axis) {
            case 'x': case 'X': ax = macroreal::spin::Axis::X; break;
            case 'y': case 'Y': ax = macroreal::spin::Axis::Y; break;
            case 'z': case 'Z': ax = macroreal::spin::Axis::Z; break;
            default: throw std::invalid_argument("mr_propagator_rotation: axis must be x, y or z");
        }
        *out = new mr_propagator{macroreal::spin::make_propagator(
            space->impl, macroreal::spin::Rotation{ax, omega})};
        return MR_OK;
    });
}

mr_status mr_propagator_catflip(const mr_space* space, double omega, mr_propagator** out) {
    if (!space || !out) return invalid("mr_propagator_catflip: NULL argument");
    return guarded([&] {
        *out = new mr_propagator{macroreal::spin::make_propagator(
            space->impl, macroreal::spin::CatFlip{omega})};
        return MR_OK;
    });
}

mr_status mr_propagator_two_level(const mr_space* space, double delta_e, int level_a, int level_b,
                                  mr_propagator** out) {
    if (!space || !out) return invalid("mr_propagator_two_level: NULL argument");
    return guarded([&] {
        *out = new mr_propagator{macroreal::spin::make_propagator(
            space->impl, macroreal::spin::TwoLevel{delta_e, level_a, level_b})};
        return MR_OK;
    });
}

mr_status mr_propagator_custom(const mr_space* space, const double* re, const double* im,
                               mr_propagator** out) {
    if (!space || !re || !out) return invalid("mr_propagator_custom: NULL argument");
    return guarded([&] {
        *out = new mr_propagator{macroreal::spin::diagonalize(
            space->impl, matrix_from_parts(space->impl.dim(), re, im))};
        return MR_OK;
    });
}

mr_status mr_propagator_energies(const mr_propagator* prop, double* out) {
    if (!prop || !out) return invalid("mr_propagator_energies: NULL argument");
    const Eigen::VectorXd& e = prop->impl.energies();
    for (int i = 0; i < e.size(); ++i) out[i] = e(i);
    return MR_OK;
}

mr_status mr_evolve_state(const mr_propagator* prop, const mr_state* psi, double t,
                          mr_state** out) {
    if (!prop || !psi || !out) return invalid("mr_evolve_state: NULL argument");
    return guarded([&] {
        *out = new mr_state{macroreal::spin::evolve(prop->impl, psi->impl, t)};
        return MR_OK;
    });
}

mr_status mr_evolve_densmat(const mr_propagator* prop, const mr_densmat* rho, double t,
                            mr_densmat** out) {
    if (!prop || !rho || !out) return invalid("mr_evolve_densmat: NULL argument");
    return guarded([&] {
        *out = new mr_densmat{macroreal::spin::evolve(prop->impl, rho->impl, t)};
        return MR_OK;
    });
}

mr_status mr_survival(const mr_propagator* prop, const mr_state* psi0, double t,
                      double* probability, double* phase) {
    if (!prop || !psi0 || !probability || !phase) return invalid("mr_survival: NULL argument");
    return guarded([&] {
        const auto s = macroreal::spin::survival_probability(prop->impl, psi0->impl, t);
        *probability = s.probability;
        *phase = s.phase;
        return MR_OK;
    });
}

void mr_propagator_free(mr_propagator* prop) { delete prop; }

/* ------------------------------------------------------------------- grids */

mr_status mr_grid_create(const mr_space* space, double oversample, mr_grid** out) {
    if (!space || !out) return invalid("mr_grid_create: NULL argument");
    return guarded([&] {
        *out = new mr_grid{macroreal::sphere::make_grid(space->impl, oversample)};
        return MR_OK;
    });
}

mr_status mr_grid_aligned(const mr_partition* partition, double oversample, mr_grid** out) {
    if (!partition || !out) return invalid("mr_grid_aligned: NULL argument");
    return guarded([&] {
        *out = new mr_grid{macroreal::povm::aligned_grid(partition->impl, oversample)};
        return MR_OK;
    });
}

int mr_grid_node_count(const mr_grid* grid) { return grid ? grid->impl.node_count() : 0; }

mr_status mr_grid_nodes(const mr_grid* grid, double* theta, double* phi, double* weight) {
    if (!grid || !theta || !phi || !weight) return invalid("mr_grid_nodes: NULL argument");
    const SphereGrid& g = grid->impl;
    int idx = 0;
    for (int p = 0; p < g.polar_count(); ++p) {
        for (int a = 0; a < g.azimuth_count(); ++a, ++idx) {
            theta[idx] = g.node_theta(p);
            phi[idx] = g.node_phi(a);
            weight[idx] = g.node_weight(p);
        }
    }
    return MR_OK;
}

void mr_grid_free(mr_grid* grid) { delete grid; }

/* ----------------------------------------------------------- distributions */

mr_status mr_q_function(const mr_densmat* rho, const mr_grid* grid, mr_dist** out) {
    if (!rho || !grid || !out) return invalid("mr_q_function: NULL argument");
    return guarded([&] {
        *out = new mr_dist{macroreal::sphere::q_function(rho->impl, grid->impl)};
        return MR_OK;
    });
}

mr_status mr_p_function(const mr_densmat* rho, const mr_grid* grid, mr_dist** out) {
    if (!rho || !grid || !out) return invalid("mr_p_function: NULL argument");
    return guarded([&] {
        *out = new mr_dist{macroreal::sphere::p_function(rho->impl, grid->impl)};
        return MR_OK;
    });
}

mr_status mr_cat_q_pair(const mr_space* space, double t, double omega, const mr_grid* grid,
                        mr_dist** out_sup, mr_dist** out_mix) {
    if (!space || !grid || !out_sup || !out_mix) return invalid("mr_cat_q_pair: NULL argument");
    return guarded([&] {
        auto pair = macroreal::sphere::q_of_cat_pair(space->impl, t, omega, grid->impl);
        *out_sup = new mr_dist{std::move(pair.first)};
        *out_mix = new mr_dist{std::move(pair.second)};
        return MR_OK;
    });
}

int mr_dist_node_count(const mr_dist* dist) {
    return dist ? dist->impl.grid().node_count() : 0;
}

mr_status mr_dist_values(const mr_dist* dist, double* out) {
    if (!dist || !out) return invalid("mr_dist_values: NULL argument");
    const Eigen::VectorXd& v = dist->impl.values();
    for (int i = 0; i < v.size(); ++i) out[i] = v(i);
    return MR_OK;
}

mr_status mr_dist_integral(const mr_dist* dist, double* out) {
    if (!dist || !out) return invalid("mr_dist_integral: NULL argument");
    *out = macroreal::sphere::integrate(dist->impl);
    return MR_OK;
}

mr_status mr_dist_min(const mr_dist* dist, double* out) {
    if (!dist || !out) return invalid("mr_dist_min: NULL argument");
    *out = dist->impl.values().minCoeff();
    return MR_OK;
}

mr_status mr_dist_overlap(const mr_dist* f, const mr_dist* g, double* value, double* clipped_f,
                          double* clipped_g) {
    if (!f || !g || !value) return invalid("mr_dist_overlap: NULL argument");
    return guarded([&] {
        const auto result = macroreal::sphere::overlap_detail(f->impl, g->impl);
        *value = result.value;
        if (clipped_f) *clipped_f = result.clipped_mass_f;
        if (clipped_g) *clipped_g = result.clipped_mass_g;
        return MR_OK;
    });
}

mr_status mr_dist_integrate_band(const mr_dist* dist, double theta_lo, double theta_hi,
                                 double* out) {
    if (!dist || !out) return invalid("mr_dist_integrate_band: NULL argument");
    return guarded([&] {
        *out = macroreal::sphere::integrate_band(dist->impl, theta_lo, theta_hi);
        return MR_OK;
    });
}

mr_status mr_dist_write_csv(const mr_dist* dist, const char* path) {
    if (!dist || !path) return invalid("mr_dist_write_csv: NULL argument");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) throw std::invalid_argument(std::string("cannot open for write: ") + path);
        macroreal::sphere::write_csv(dist->impl, out);
        if (!out.good()) throw std::domain_error(std::string("write failed: ") + path);
        return MR_OK;
    });
}

void mr_dist_free(mr_dist* dist) { delete dist; }

/* -------------------------------------------------- partitions and outcomes */

mr_status mr_partition_uniform(const mr_space* space, int n_slots, mr_partition** out) {
    if (!space || !out) return invalid("mr_partition_uniform: NULL argument");
    return guarded([&] {
        *out = new mr_partition{SlotPartition::uniform(space->impl, n_slots)};
        return MR_OK;
    });
}

mr_status mr_partition_width(const mr_space* space, double slot_width, mr_partition** out) {
    if (!space || !out) return invalid("mr_partition_width: NULL argument");
    return guarded([&] {
        *out = new mr_partition{SlotPartition::with_slot_width(space->impl, slot_width)};
        return MR_OK;
    });
}

mr_status mr_partition_from_cuts(const mr_space* space, const double* cuts, int n_cuts,
                                 mr_partition** out) {
    if (!space || !out || (n_cuts > 0 && !cuts)) {
        return invalid("mr_partition_from_cuts: NULL argument");
    }
    return guarded([&] {
        *out = new mr_partition{
            SlotPartition::from_cuts(space->impl, std::vector<double>(cuts, cuts + n_cuts))};
        return MR_OK;
    });
}

mr_status mr_partition_merged_poles(const mr_space* space, double cut, mr_partition** out) {
    if (!space || !out) return invalid("mr_partition_merged_poles: NULL argument");
    return guarded([&] {
        *out = new mr_partition{SlotPartition::merged_poles(space->impl, cut)};
        return MR_OK;
    });
}

int mr_partition_slot_count(const mr_partition* partition) {
    return partition ? partition->impl.slot_count() : 0;
}

double mr_partition_coarseness(const mr_partition* partition) {
    return partition ? partition->impl.coarseness() : 0.0;
}

mr_status mr_partition_g_weights(const mr_partition* partition, double* out) {
    if (!partition || !out) return invalid("mr_partition_g_weights: NULL argument");
    return guarded([&] {
        const Eigen::MatrixXd g = macroreal::povm::g_weights(partition->impl);
        for (int s = 0; s < g.rows(); ++s) {
            for (int k = 0; k < g.cols(); ++k) out[s * g.cols() + k] = g(s, k);
        }
        return MR_OK;
    });
}

void mr_partition_free(mr_partition* partition) { delete partition; }

mr_status mr_measure_probs(const mr_densmat* rho, const mr_partition* partition, double* out) {
    if (!rho || !partition || !out) return invalid("mr_measure_probs: NULL argument");
    return guarded([&] {
        const Eigen::VectorXd w = macroreal::povm::outcome_probabilities(rho->impl, partition->impl);
        for (int i = 0; i < w.size(); ++i) out[i] = w(i);
        return MR_OK;
    });
}

mr_status mr_classical_probs(const mr_densmat* rho, const mr_partition* partition,
                             const mr_grid* grid, double* out) {
    if (!rho || !partition || !grid || !out) return invalid("mr_classical_probs: NULL argument");
    return guarded([&] {
        const Eigen::VectorXd w =
            macroreal::povm::classical_outcome_probs(rho->impl, partition->impl, grid->impl);
        for (int i = 0; i < w.size(); ++i) out[i] = w(i);
        return MR_OK;
    });
}

/* ------------------------------------------------------ Leggett-Garg + lab */

mr_status mr_two_level_k(double delta_e, double dt, double* out) {
    if (!out) return invalid("mr_two_level_k: out is NULL");
    *out = macroreal::lab::two_level_k(delta_e, dt);
    return MR_OK;
}

mr_status mr_lgi_projective(const mr_propagator* prop, const mr_state* psi0, double dt,
                            mr_lgi_result* out) {
    if (!prop || !psi0 || !out) return invalid("mr_lgi_projective: NULL argument");
    return guarded([&] {
        lgi_to_c(macroreal::lab::lgi_projective(prop->impl, psi0->impl, dt), out);
        return MR_OK;
    });
}

mr_status mr_lgi_coarse(const mr_propagator* prop, const mr_densmat* rho0,
                        const mr_partition* partition, double t1, double t2, double t3,
                        mr_lgi_result* out) {
    if (!prop || !rho0 || !partition || !out) return invalid("mr_lgi_coarse: NULL argument");
    return guarded([&] {
        const auto coarse =
            macroreal::lab::lgi_coarse(prop->impl, rho0->impl, partition->impl, t1, t2, t3);
        lgi_to_c(coarse.result, out);
        return MR_OK;
    });
}

mr_status mr_mixture_condition(const mr_densmat* rho, const mr_partition* partition,
                               const mr_grid* grid, double threshold, mr_condition_report* out) {
    if (!rho || !partition || !grid || !out) return invalid("mr_mixture_condition: NULL argument");
    return guarded([&] {
        report_to_c(
            macroreal::lab::mixture_condition(rho->impl, partition->impl, grid->impl, threshold),
            out);
        return MR_OK;
    });
}

mr_status mr_evolution_condition(const mr_densmat* rho0, const mr_propagator* prop,
                                 const mr_partition* partition, double t_i, double t_j,
                                 const mr_grid* grid, double threshold, mr_condition_report* out) {
    if (!rho0 || !prop || !partition || !grid || !out) {
        return invalid("mr_evolution_condition: NULL argument");
    }
    return guarded([&] {
        report_to_c(macroreal::lab::evolution_condition(rho0->impl, prop->impl, partition->impl,
                                                        t_i, t_j, grid->impl, threshold),
                    out);
        return MR_OK;
    });
}

mr_status mr_classicality_deviation(const mr_propagator* prop, const mr_partition* partition,
                                    double t, double theta, double phi, double* out) {
    if (!prop || !partition || !out) return invalid("mr_classicality_deviation: NULL argument");
    return guarded([&] {
        *out = macroreal::lab::classicality_deviation(prop->impl, partition->impl, t,
                                                      Direction(theta, phi));
        return MR_OK;
    });
}

mr_status mr_classify(const mr_propagator* prop, const mr_partition* partition,
                      const double* times, int n_times, const double* dir_thetas,
                      const double* dir_phis, int n_dirs, double threshold,
                      mr_classification* out) {
    if (!prop || !partition || !times || !dir_thetas || !dir_phis || !out) {
        return invalid("mr_classify: NULL argument");
    }
    return guarded([&] {
        std::vector<double> ts(times, times + n_times);
        std::vector<Direction> dirs;
        dirs.reserve(n_dirs);
        for (int i = 0; i < n_dirs; ++i) dirs.emplace_back(dir_thetas[i], dir_phis[i]);
        macroreal::lab::ClassifyOptions options;
        options.threshold = threshold;
        const auto cls =
            macroreal::lab::classify_hamiltonian(prop->impl, partition->impl, ts, dirs, options);
        out->classical = cls.classical ? 1 : 0;
        out->max_epsilon = cls.max_epsilon;
        out->mean_epsilon = cls.mean_epsilon;
        out->threshold = cls.threshold;
        out->witness_theta = cls.witness.theta;
        out->witness_phi = cls.witness.phi;
        out->witness_t = cls.witness.t;
        out->n_evaluated = cls.n_evaluated;
        out->n_excluded = cls.n_excluded;
        return MR_OK;
    });
}

int mr_direction_sample_count(int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1) return 0;
    return n_polar * n_azimuth + 2;
}

mr_status mr_direction_sample(int n_polar, int n_azimuth, double* thetas, double* phis) {
    if (!thetas || !phis) return invalid("mr_direction_sample: NULL argument");
    return guarded([&] {
        const auto dirs = macroreal::lab::direction_sample(n_polar, n_azimuth);
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            thetas[i] = dirs[i].theta;
            phis[i] = dirs[i].phi;
        }
        return MR_OK;
    });
}

/* ---------------------------------------------------------- qubit circuits */

mr_status mr_qreg_create(int n, int start_all_ones, mr_qreg** out) {
    if (!out) return invalid("mr_qreg_create: out is NULL");
    return guarded([&] {
        *out = new mr_qreg{start_all_ones ? QubitRegister::all_ones(n)
                                          : QubitRegister::all_zeros(n)};
        return MR_OK;
    });
}

int mr_qreg_dim(const mr_qreg* reg) {
    return reg ? static_cast<int>(reg->impl.amplitudes().size()) : 0;
}

mr_status mr_qreg_rotate(mr_qreg* reg, int qubit, double angle) {
    if (!reg) return invalid("mr_qreg_rotate: reg is NULL");
    return guarded([&] {
        reg->impl.apply_rotation(qubit, angle);
        return MR_OK;
    });
}

mr_status mr_qreg_cnot(mr_qreg* reg, int control, int target) {
    if (!reg) return invalid("mr_qreg_cnot: reg is NULL");
    return guarded([&] {
        reg->impl.apply_cnot(control, target);
        return MR_OK;
    });
}

mr_status mr_qreg_cnot0(mr_qreg* reg, int control, int target) {
    if (!reg) return invalid("mr_qreg_cnot0: reg is NULL");
    return guarded([&] {
        reg->impl.apply_cnot0(control, target);
        return MR_OK;
    });
}

mr_status mr_qreg_amplitudes(const mr_qreg* reg, double* re, double* im) {
    if (!reg || !re || !im) return invalid("mr_qreg_amplitudes: NULL argument");
    const Eigen::VectorXcd& v = reg->impl.amplitudes();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re[i] = v(i).real();
        im[i] = v(i).imag();
    }
    return MR_OK;
}

void mr_qreg_free(mr_qreg* reg) { delete reg; }

mr_status mr_catrun_create(int n, double omega_dt, int intervals, mr_catrun** out) {
    if (!out) return invalid("mr_catrun_create: out is NULL");
    return guarded([&] {
        *out = new mr_catrun{macroreal::circuit::simulate_cat_protocol(n, omega_dt, intervals)};
        return MR_OK;
    });
}

int mr_catrun_gate_total(const mr_catrun* run) {
    return run ? static_cast<int>(run->impl.log.gates.size()) : 0;
}

int mr_catrun_intervals(const mr_catrun* run) {
    return run ? static_cast<int>(run->impl.log.gates_per_interval.size()) : 0;
}

mr_status mr_catrun_gate(const mr_catrun* run, int index, int* interval, int* kind, int* q1,
                         int* q2, double* angle) {
    if (!run || !interval || !kind || !q1 || !q2 || !angle) {
        return invalid("mr_catrun_gate: NULL argument");
    }
    if (index < 0 || index >= static_cast<int>(run->impl.log.gates.size())) {
        return invalid("mr_catrun_gate: index out of range");
    }
    const macroreal::circuit::Gate& g = run->impl.log.gates[index];
    *interval = g.interval;
    *kind = static_cast<int>(g.kind);
    *q1 = g.q1;
    *q2 = g.q2;
    *angle = g.angle;
    return MR_OK;
}

mr_status mr_catrun_interval_counts(const mr_catrun* run, int* out) {
    if (!run || !out) return invalid("mr_catrun_interval_counts: NULL argument");
    for (std::size_t i = 0; i < run->impl.log.gates_per_interval.size(); ++i) {
        out[i] = run->impl.log.gates_per_interval[i];
    }
    return MR_OK;
}

mr_status mr_catrun_fidelities(const mr_catrun* run, double* out) {
    if (!run || !out) return invalid("mr_catrun_fidelities: NULL argument");
    for (std::size_t i = 0; i < run->impl.interval_fidelities.size(); ++i) {
        out[i] = run->impl.interval_fidelities[i];
    }
    return MR_OK;
}

mr_status mr_catrun_pole_amplitudes(const mr_catrun* run, double* ones_re, double* ones_im,
                                    double* zeros_re, double* zeros_im) {
    if (!run || !ones_re || !ones_im || !zeros_re || !zeros_im) {
        return invalid("mr_catrun_pole_amplitudes: NULL argument");
    }
    const Eigen::VectorXcd& v = run->impl.reg.amplitudes();
    const auto ones = v(v.size() - 1);
    const auto zeros = v(0);
    *ones_re = ones.real();
    *ones_im = ones.imag();
    *zeros_re = zeros.real();
    *zeros_im = zeros.imag();
    return MR_OK;
}

void mr_catrun_free(mr_catrun* run) { delete run; }

mr_status mr_global_rotation(int n, double omega_dt, mr_qreg** out) {
    if (!out) return invalid("mr_global_rotation: out is NULL");
    return guarded([&] {
        *out = new mr_qreg{macroreal::circuit::simulate_global_rotation(n, omega_dt)};
        return MR_OK;
    });
}

} /* extern "C" */
