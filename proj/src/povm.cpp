#include "macroreal/povm.hpp"

#include "macroreal/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace macroreal::povm {

namespace {

constexpr double kOutcomeCutoff = 1e-14;

using spin::Matrix;

}  // namespace

SlotPartition::SlotPartition(spin::SpinSpace space, std::vector<double> cuts,
                             std::vector<int> slot_of_band)
    : space_(space), cuts_(std::move(cuts)), slot_of_band_(std::move(slot_of_band)) {
    const double j = space_.j();
    if (slot_of_band_.size() != cuts_.size() + 1) {
        throw std::invalid_argument("SlotPartition: band/cut count mismatch");
    }
    double prev = -j;
    for (double c : cuts_) {
        if (!(c > prev) || !(c < j)) {
            throw std::invalid_argument(
                "SlotPartition: cuts must be strictly increasing inside (-j, +j)");
        }
        prev = c;
    }
    n_slots_ = 0;
    for (int s : slot_of_band_) {
        if (s < 0) throw std::invalid_argument("SlotPartition: negative slot id");
        n_slots_ = std::max(n_slots_, s + 1);
    }
    // Every slot id up to the maximum must be used.
    std::vector<bool> seen(n_slots_, false);
    for (int s : slot_of_band_) seen[s] = true;
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw std::invalid_argument("SlotPartition: slot ids must be contiguous from 0");
    }
    if (n_slots_ < 1) throw std::invalid_argument("SlotPartition: need at least one slot");
}

SlotPartition SlotPartition::uniform(spin::SpinSpace space, int n_slots) {
    if (n_slots < 2) throw std::invalid_argument("uniform: require n_slots >= 2");
    const double j = space.j();
    const double width = 2.0 * j / n_slots;
    std::vector<double> cuts(n_slots - 1);
    for (int i = 1; i < n_slots; ++i) cuts[i - 1] = -j + width * i;
    std::vector<int> slots(n_slots);
    for (int i = 0; i < n_slots; ++i) slots[i] = i;
    return SlotPartition(space, std::move(cuts), std::move(slots));
}

SlotPartition SlotPartition::with_slot_width(spin::SpinSpace space, double slot_width) {
    const double j = space.j();
    const double range = 2.0 * j;
    if (!(slot_width > 0.0) || slot_width > range) {
        throw std::invalid_argument("with_slot_width: require 0 < slot_width <= 2j");
    }
    const int n_bands = std::max(1, static_cast<int>(std::ceil(range / slot_width - 1e-9)));
    std::vector<double> cuts;
    cuts.reserve(n_bands - 1);
    for (int i = 1; i < n_bands; ++i) cuts.push_back(-j + i * slot_width);
    std::vector<int> slots(n_bands);
    for (int i = 0; i < n_bands; ++i) slots[i] = i;
    return SlotPartition(space, std::move(cuts), std::move(slots));
}

SlotPartition SlotPartition::from_cuts(spin::SpinSpace space, std::vector<double> interior_cuts) {
    std::sort(interior_cuts.begin(), interior_cuts.end());
    std::vector<int> slots(interior_cuts.size() + 1);
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
    return SlotPartition(space, std::move(interior_cuts), std::move(slots));
}

SlotPartition SlotPartition::merged_poles(spin::SpinSpace space, double cut) {
    if (!(cut > 0.0) || !(cut < space.j())) {
        throw std::invalid_argument("merged_poles: require 0 < cut < j");
    }
    // Bands [-j,-cut], (-cut,cut], (cut,+j]; both caps share slot 0.
    return SlotPartition(space, {-cut, cut}, {0, 1, 0});
}

std::pair<double, double> SlotPartition::band_range(int band) const {
    if (band < 0 || band >= band_count()) {
        throw std::invalid_argument("band_range: band out of range");
    }
    const double j = space_.j();
    const double lo = (band == 0) ? -j : cuts_[band - 1];
    const double hi = (band == band_count() - 1) ? j : cuts_[band];
    return {lo, hi};
}

std::vector<sphere::PolarBand> SlotPartition::slot_bands(int slot) const {
    if (slot < 0 || slot >= n_slots_) {
        throw std::invalid_argument("slot_bands: slot out of range");
    }
    const double j = space_.j();
    std::vector<sphere::PolarBand> bands;
    for (int b = 0; b < band_count(); ++b) {
        if (slot_of_band_[b] != slot) continue;
        const auto [lo, hi] = band_range(b);
        // cos(theta) = m / j; larger m means smaller polar angle.
        bands.push_back({std::acos(std::clamp(hi / j, -1.0, 1.0)),
                         std::acos(std::clamp(lo / j, -1.0, 1.0))});
    }
    return bands;
}

std::vector<double> SlotPartition::border_thetas() const {
    const double j = space_.j();
    std::vector<double> thetas;
    thetas.reserve(cuts_.size());
    for (double c : cuts_) thetas.push_back(std::acos(std::clamp(c / j, -1.0, 1.0)));
    std::sort(thetas.begin(), thetas.end());
    return thetas;
}

double SlotPartition::slot_center_m(int slot) const {
    double sum = 0.0;
    int n = 0;
    for (int b = 0; b < band_count(); ++b) {
        if (slot_of_band_[b] != slot) continue;
        const auto [lo, hi] = band_range(b);
        sum += 0.5 * (lo + hi);
        ++n;
    }
    if (n == 0) throw std::invalid_argument("slot_center_m: slot out of range");
    return sum / n;
}

double SlotPartition::coarseness() const {
    double min_width = 2.0 * space_.j();
    for (int b = 0; b < band_count(); ++b) {
        const auto [lo, hi] = band_range(b);
        min_width = std::min(min_width, hi - lo);
    }
    return min_width / std::sqrt(space_.j());
}

Eigen::MatrixXd g_weights(const SlotPartition& partition) {
    const spin::SpinSpace space = partition.space();
    const int dim = space.dim();
    const double j = space.j();

    // Band integral of |<k|Omega>|^2 over the polar region m in [lo, hi]:
    // substituting u = cos^2(theta/2) = (1 + m/j)/2 gives
    //   I_u(hi)(j+k+1, j-k+1) - I_u(lo)(j+k+1, j-k+1)
    // since (2j+1) * binom(2j, j+k) * B(j+k+1, j-k+1) = 1.
    const int n_bands = partition.band_count();
    Eigen::MatrixXd band_g(n_bands, dim);
    for (int k = 0; k < dim; ++k) {
        const double a = k + 1.0;            // j + m + 1
        const double b = space.two_j() - k + 1.0;  // j - m + 1
        double prev = 0.0;  // I at u = 0
        for (int band = 0; band < n_bands; ++band) {
            const auto [lo, hi] = partition.band_range(band);
            (void)lo;
            const double u = std::clamp(0.5 * (1.0 + hi / j), 0.0, 1.0);
            const double cur = (band == n_bands - 1)
                                   ? 1.0
                                   : numerics::regularized_incomplete_beta(a, b, u);
            band_g(band, k) = cur - prev;
            prev = cur;
        }
    }

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(partition.slot_count(), dim);
    for (int band = 0; band < n_bands; ++band) {
        g.row(partition.slot_of_band(band)) += band_g.row(band);
    }
    return g;
}

std::vector<PovmElement> povm_elements(const SlotPartition& partition) {
    const Eigen::MatrixXd g = g_weights(partition);
    std::vector<PovmElement> elements;
    elements.reserve(partition.slot_count());
    for (int s = 0; s < partition.slot_count(); ++s) {
        elements.push_back({s, g.row(s).transpose()});
    }
    return elements;
}

std::vector<KrausOperator> kraus_operators(const SlotPartition& partition) {
    const Eigen::MatrixXd g = g_weights(partition);
    std::vector<KrausOperator> ops;
    ops.reserve(partition.slot_count());
    for (int s = 0; s < partition.slot_count(); ++s) {
        ops.push_back({s, g.row(s).array().sqrt().matrix().transpose()});
    }
    return ops;
}

Eigen::VectorXd outcome_probabilities(const spin::DensityMatrix& rho,
                                      const SlotPartition& partition) {
    if (!(rho.space() == partition.space())) {
        throw std::invalid_argument("outcome_probabilities: dimension mismatch");
    }
    const Eigen::MatrixXd g = g_weights(partition);
    const Eigen::VectorXd diag = rho.entries().diagonal().real();
    return g * diag;
}

MeasurementResult measure(const spin::DensityMatrix& rho, const SlotPartition& partition) {
    if (!(rho.space() == partition.space())) {
        throw std::invalid_argument("measure: dimension mismatch");
    }
    const Eigen::MatrixXd g = g_weights(partition);
    const Eigen::VectorXd diag = rho.entries().diagonal().real();

    MeasurementResult result;
    result.total_probability = 0.0;
    for (int s = 0; s < partition.slot_count(); ++s) {
        const double w = g.row(s).dot(diag);
        result.total_probability += w;
        if (w < kOutcomeCutoff) {
            result.dropped_slots.push_back(s);
            continue;
        }
        const Eigen::VectorXd m = g.row(s).array().sqrt().matrix().transpose();
        Matrix post = (m * m.transpose()).cast<spin::Complex>().cwiseProduct(rho.entries()) / w;
        result.outcomes.push_back({s, w, spin::DensityMatrix(rho.space(), std::move(post))});
    }
    return result;
}

spin::DensityMatrix decohere(const spin::DensityMatrix& rho, const SlotPartition& partition) {
    if (!(rho.space() == partition.space())) {
        throw std::invalid_argument("decohere: dimension mismatch");
    }
    const Eigen::MatrixXd g = g_weights(partition);
    const int dim = rho.dim();
    // Entrywise damping factor sum_slot sqrt(g_slot(n) g_slot(n')).
    Eigen::MatrixXd damping = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < partition.slot_count(); ++s) {
        const Eigen::VectorXd m = g.row(s).array().sqrt().matrix().transpose();
        damping += m * m.transpose();
    }
    Matrix entries = damping.cast<spin::Complex>().cwiseProduct(rho.entries());
    return spin::DensityMatrix(rho.space(), std::move(entries));
}

Eigen::VectorXd classical_outcome_probs(const spin::DensityMatrix& rho,
                                        const SlotPartition& partition,
                                        const sphere::SphereGrid& grid) {
    if (!(rho.space() == partition.space())) {
        throw std::invalid_argument("classical_outcome_probs: dimension mismatch");
    }
    const sphere::SphereDistribution q = sphere::q_function(rho, grid);
    Eigen::VectorXd w(partition.slot_count());
    for (int s = 0; s < partition.slot_count(); ++s) {
        w(s) = sphere::integrate_region(q, partition.slot_bands(s));
    }
    return w;
}

sphere::SphereGrid aligned_grid(const SlotPartition& partition, double oversample) {
    const double j = partition.space().j();
    std::vector<double> breaks;
    breaks.reserve(partition.interior_cuts().size());
    for (double c : partition.interior_cuts()) breaks.push_back(c / j);
    return sphere::make_grid(partition.space(), oversample, breaks);
}

}  // namespace macroreal::povm
