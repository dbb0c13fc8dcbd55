// povm.hpp — Coarse-grained measurement apparatus: slot partitions of the
// J_z outcome range, the matching coherent-state POVM elements (diagonal in
// the Dicke basis), Hermitian square-root Kraus operators and state update.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "macroreal/sphere.hpp"
#include "macroreal/spin.hpp"

namespace macroreal::povm {

// Partition of the m range [-j, +j] into bands at strictly increasing cut
// points; bands map to slots (several bands may share one slot, which models
// coarse-grainings that merge regions far apart in real space). Band k covers
// m in (cut_{k-1}, cut_k], with cut_0 = -j and cut_n = +j implied.
class SlotPartition {
  public:
    static SlotPartition uniform(spin::SpinSpace space, int n_slots);
    // Equal slots of the given m-width; a trailing remainder shortens the last
    // slot. Rejects widths above the full range 2j.
    static SlotPartition with_slot_width(spin::SpinSpace space, double slot_width);
    static SlotPartition from_cuts(spin::SpinSpace space, std::vector<double> interior_cuts);
    // Two slots: |m| > cut (both polar caps together) vs |m| <= cut.
    static SlotPartition merged_poles(spin::SpinSpace space, double cut);

    const spin::SpinSpace& space() const { return space_; }
    int band_count() const { return static_cast<int>(slot_of_band_.size()); }
    int slot_count() const { return n_slots_; }
    const std::vector<double>& interior_cuts() const { return cuts_; }
    int slot_of_band(int band) const { return slot_of_band_[band]; }

    // Band edges in m-space, [lo, hi].
    std::pair<double, double> band_range(int band) const;
    // Polar-angle bands of one slot via cos(theta) = m / j.
    std::vector<sphere::PolarBand> slot_bands(int slot) const;
    // All interior borders as polar angles (for border-exclusion logic).
    std::vector<double> border_thetas() const;
    // Mean m of the slot's bands (outcome label).
    double slot_center_m(int slot) const;

    // Delta_m / sqrt(j) of the narrowest band; the coarse-grained regime
    // needs this to be large.
    double coarseness() const;

  private:
    SlotPartition(spin::SpinSpace space, std::vector<double> cuts, std::vector<int> slot_of_band);

    spin::SpinSpace space_;
    std::vector<double> cuts_;        // interior cut points in (-j, +j)
    std::vector<int> slot_of_band_;   // band index -> slot id
    int n_slots_;
};

// g_slot(k) = (2j+1)/4pi * integral over the slot's angular region of
// |<k|Omega>|^2. Closed form as differences of regularized incomplete beta
// values, so completeness sum_slot g_slot(k) = 1 telescopes exactly.
// Rows are slots, columns are Dicke indices.
Eigen::MatrixXd g_weights(const SlotPartition& partition);

struct PovmElement {
    int slot;
    Eigen::VectorXd weights;  // diagonal entries g_slot(k)
};

struct KrausOperator {
    int slot;
    Eigen::VectorXd diagonal;  // sqrt(g_slot(k))
};

std::vector<PovmElement> povm_elements(const SlotPartition& partition);
std::vector<KrausOperator> kraus_operators(const SlotPartition& partition);

struct MeasurementOutcome {
    int slot;
    double probability;
    spin::DensityMatrix state;  // M rho M / w
};

struct MeasurementResult {
    std::vector<MeasurementOutcome> outcomes;  // probability >= 1e-14 only
    std::vector<int> dropped_slots;            // outcomes below the cutoff
    double total_probability;                  // over all slots, dropped included
};

MeasurementResult measure(const spin::DensityMatrix& rho, const SlotPartition& partition);

// Non-selective update sum_slot M rho M (coherences between slots damped).
spin::DensityMatrix decohere(const spin::DensityMatrix& rho, const SlotPartition& partition);

// Outcome probabilities per slot, quantum route: w = Tr[rho P_slot].
Eigen::VectorXd outcome_probabilities(const spin::DensityMatrix& rho,
                                      const SlotPartition& partition);

// Outcome probabilities via the classical-ensemble route: the Q-function of
// rho integrated over each slot's angular region. Matches the operator route
// when the grid's polar panels align with the partition borders.
Eigen::VectorXd classical_outcome_probs(const spin::DensityMatrix& rho,
                                        const SlotPartition& partition,
                                        const sphere::SphereGrid& grid);

// Grid whose polar panels split exactly at the partition borders.
sphere::SphereGrid aligned_grid(const SlotPartition& partition, double oversample = 2.0);

}  // namespace macroreal::povm
