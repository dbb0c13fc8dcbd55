#include "doctest.h"

#include "macroreal/lab.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace macroreal;
using povm::SlotPartition;
using spin::Direction;
using spin::SpinSpace;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("two-level K: maxima and trivial point") {
    CHECK(lab::two_level_k(1.0, pi / 3) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(lab::two_level_k(1.0, 5 * pi / 3) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(lab::two_level_k(2.5, (pi / 3) / 2.5) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(lab::two_level_k(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // 1.5 is the global maximum of 2cos(x) - cos(2x)
    for (int i = 0; i <= 400; ++i) {
        CHECK(lab::two_level_k(1.0, 2 * pi * i / 400.0) <= 1.5 + 1e-12);
    }
}

TEST_CASE("projective protocol reduces to the two-level formula") {
    const SpinSpace space(6);
    const double delta_e = 1.3;
    const auto prop = spin::make_propagator(space, spin::TwoLevel{delta_e, 1, 5});
    spin::Vector amps = spin::Vector::Zero(space.dim());
    amps(1) = amps(5) = 1.0 / std::sqrt(2.0);
    const spin::StateVector psi0(space, amps);

    for (double dt : {0.1, 0.5, pi / (3 * delta_e), 2.0, 4.4}) {
        const auto r = lab::lgi_projective(prop, psi0, dt);
        const double expected = lab::two_level_k(delta_e, dt);
        CHECK(r.k == doctest::Approx(expected).epsilon(1e-12));
        CHECK(*r.k_closed_form == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("projective protocol on an energy eigenstate gives K = 1") {
    const SpinSpace space(6);
    const auto prop = spin::make_propagator(space, spin::TwoLevel{0.9, 1, 5});
    const auto eigen = spin::basis_state(space, 5);
    for (double dt : {0.3, 1.1, 2.9}) {
        const auto r = lab::lgi_projective(prop, eigen, dt);
        CHECK(r.k == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(*r.k_closed_form == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("projective protocol on the pole-flip dynamics peaks at 1.5") {
    // The two coupled pole states split by 2*omega; the maximum shows up when
    // that effective gap times dt equals pi/3.
    for (int two_j : {1, 8, 30}) {
        const SpinSpace space(two_j);
        const double omega = 0.8;
        const auto prop = spin::make_propagator(space, spin::CatFlip{omega});
        const auto plus = spin::basis_state(space, space.dim() - 1);
        const double dt = (pi / 3) / (2.0 * omega);
        const auto r = lab::lgi_projective(prop, plus, dt);
        CHECK(r.k == doctest::Approx(1.5).epsilon(1e-9));
    }
}

TEST_CASE("projective protocol: closed form tracks explicit statistics") {
    auto gen = oracles::rng(91);
    std::uniform_real_distribution<double> tdist(0.05, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        const SpinSpace space(7);
        const auto prop =
            spin::diagonalize(space, oracles::random_hermitian(space.dim(), gen));
        const spin::StateVector psi0(space, oracles::random_state(space.dim(), gen));
        const auto r = lab::lgi_projective(prop, psi0, tdist(gen));
        CHECK(r.k == doctest::Approx(*r.k_closed_form).epsilon(1e-9).scale(1.0));
        CHECK(std::abs(r.c12) <= 1.0 + 1e-10);
        CHECK(std::abs(r.c23) <= 1.0 + 1e-10);
        CHECK(std::abs(r.c13) <= 1.0 + 1e-10);
    }
}

TEST_CASE("coarse protocol: pole-flip dynamics behaves as an effective two-level system") {
    // omega = 0.5 makes the effective gap exactly 1, so correlators read
    // cos(t_j - t_i) directly.
    const SpinSpace space(40);  // j = 20
    const double omega = 0.5;
    const auto prop = spin::make_propagator(space, spin::CatFlip{omega});
    const auto hemi = SlotPartition::uniform(space, 2);
    const auto rho0 = spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1));

    for (double dt : {0.2, pi / 3, 1.4, 2.0}) {
        const auto run = lab::lgi_coarse(prop, rho0, hemi, 0.0, dt, 2 * dt);
        CHECK(run.result.c12 == doctest::Approx(std::cos(dt)).epsilon(1e-6).scale(1.0));
        CHECK(run.result.c23 == doctest::Approx(std::cos(dt)).epsilon(1e-6).scale(1.0));
        CHECK(run.result.c13 == doctest::Approx(std::cos(2 * dt)).epsilon(1e-6).scale(1.0));
        CHECK(run.result.k ==
              doctest::Approx(lab::two_level_k(1.0, dt)).epsilon(1e-6).scale(1.0));
    }
    const auto peak = lab::lgi_coarse(prop, rho0, hemi, 0.0, pi / 3, 2 * pi / 3);
    CHECK(peak.result.k == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("coarse protocol: frozen dynamics repeats the same outcome") {
    const SpinSpace space(100);  // j = 50
    const auto prop = spin::make_propagator(space, spin::CatFlip{0.0});
    const auto hemi = SlotPartition::uniform(space, 2);
    const auto rho0 =
        spin::DensityMatrix::pure(spin::coherent_state(space, Direction(2.0, 0.3)));
    const auto run = lab::lgi_coarse(prop, rho0, hemi, 0.0, 0.7, 1.9);
    CHECK(run.result.c12 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(run.result.c23 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(run.result.c13 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(run.result.k == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("coarse protocol: classical rotation stays below the bound") {
    const SpinSpace space(200);  // j = 100
    const auto prop = spin::make_propagator(space, spin::Rotation{spin::Axis::X, 1.0});
    const auto hemi = SlotPartition::uniform(space, 2);
    const auto rho0 = spin::DensityMatrix::pure(
        spin::coherent_state(space, Direction(pi / 2 + 0.3, 0.0)));
    const auto run = lab::lgi_coarse(prop, rho0, hemi, 0.0, pi / 3, 2 * pi / 3);
    CHECK(run.result.k <= 1.05);
}

TEST_CASE("coarse protocol: validation") {
    const SpinSpace space(10);
    const auto prop = spin::make_propagator(space, spin::CatFlip{1.0});
    const auto rho0 = spin::DensityMatrix::maximally_mixed(space);
    CHECK_THROWS_AS(lab::lgi_coarse(prop, rho0, SlotPartition::uniform(space, 3), 0, 1, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(lab::lgi_coarse(prop, rho0, SlotPartition::uniform(space, 2), 0, 2, 1),
                    std::invalid_argument);
}

TEST_CASE("coarse protocol: path table is consistent") {
    const SpinSpace space(40);
    const auto prop = spin::make_propagator(space, spin::CatFlip{0.5});
    const auto hemi = SlotPartition::uniform(space, 2);
    const auto rho0 = spin::DensityMatrix::pure(spin::basis_state(space, space.dim() - 1));
    const auto run = lab::lgi_coarse(prop, rho0, hemi, 0.0, 0.9, 1.7);
    const auto& paths = run.paths;

    CHECK(paths.p1[0] + paths.p1[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(paths.p2[0] + paths.p2[1] == doctest::Approx(1.0).epsilon(1e-10));
    for (int a = 0; a < 2; ++a) {
        if (paths.p1[a] > 1e-12) {
            CHECK(paths.q21[a][0] + paths.q21[a][1] == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(paths.q31[a][0] + paths.q31[a][1] == doctest::Approx(1.0).epsilon(1e-10));
        }
        if (paths.p2[a] > 1e-12) {
            CHECK(paths.q32[a][0] + paths.q32[a][1] == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    double seq_total = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) seq_total += paths.seq[a][b][c];
        }
    }
    CHECK(seq_total == doctest::Approx(1.0).epsilon(1e-10));

    // Correlators are invariant under flipping both outcome labels.
    const auto from_joints = [&](const double q[2][2], const double p[2]) {
        double c = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                c += (a == b ? 1.0 : -1.0) * p[a] * q[a][b];
            }
        }
        return c;
    };
    const auto flipped = [&](const double q[2][2], const double p[2]) {
        double c = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                c += ((1 - a) == (1 - b) ? 1.0 : -1.0) * p[a] * q[a][b];
            }
        }
        return c;
    };
    CHECK(from_joints(paths.q21, paths.p1) == doctest::Approx(run.result.c12).epsilon(1e-10));
    CHECK(flipped(paths.q21, paths.p1) == doctest::Approx(run.result.c12).epsilon(1e-10));
}

TEST_CASE("coarse protocol: quantum statistics never exceed 1.5") {
    auto gen = oracles::rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const SpinSpace space(8);  // j = 4
    for (int rep = 0; rep < 40; ++rep) {
        const auto prop = spin::diagonalize(space, oracles::random_hermitian(space.dim(), gen));
        const spin::DensityMatrix rho0(space, oracles::random_density(space.dim(), gen));
        const double cut = (2.0 * unit(gen) - 1.0) * 0.8 * space.j();
        const auto partition = SlotPartition::from_cuts(space, {cut});
        double times[3] = {3.0 * unit(gen), 3.0 * unit(gen), 3.0 * unit(gen)};
        std::sort(times, times + 3);
        const auto run = lab::lgi_coarse(prop, rho0, partition, times[0], times[1], times[2]);
        CHECK(std::abs(run.result.c12) <= 1.0 + 1e-10);
        CHECK(std::abs(run.result.c23) <= 1.0 + 1e-10);
        CHECK(std::abs(run.result.c13) <= 1.0 + 1e-10);
        CHECK(run.result.k <= 1.5 + 1e-9);
    }
}

TEST_CASE("mixture condition: centered, border and diagonal states") {
    // Coherent state in the middle of a slot: measurement is invisible.
    const SpinSpace fifty(100);
    const auto hemi50 = SlotPartition::uniform(fifty, 2);
    const auto grid50 = povm::aligned_grid(hemi50, 2.0);
    const auto centered =
        spin::DensityMatrix::pure(spin::coherent_state(fifty, Direction(2.3, 1.0)));
    CHECK(lab::mixture_condition(centered, hemi50, grid50).score >= 1.0 - 1e-6);

    // Coherent state exactly on the border: the overlap drops to the
    // universal ~0.997, independent of j.
    for (int two_j : {20, 100}) {
        const SpinSpace space(two_j);
        const auto hemi = SlotPartition::uniform(space, 2);
        const auto grid = povm::aligned_grid(hemi, 2.0);
        const auto border =
            spin::DensityMatrix::pure(spin::coherent_state(space, Direction(pi / 2, 0.7)));
        const auto report = lab::mixture_condition(border, hemi, grid);
        CHECK(report.score == doctest::Approx(0.997).epsilon(0.002 / 0.997));
        // The worst discrepancy sits near the border itself.
        CHECK(std::abs(report.witness.theta - pi / 2) < 0.5);
    }

    // Diagonal density matrices commute with the diagonal Kraus update.
    auto gen = oracles::rng(111);
    Eigen::VectorXd diag = Eigen::VectorXd::Random(fifty.dim()).cwiseAbs();
    diag /= diag.sum();
    const spin::DensityMatrix rho_diag(
        fifty, diag.cast<spin::Complex>().asDiagonal().toDenseMatrix());
    CHECK(lab::mixture_condition(rho_diag, hemi50, grid50).score >= 1.0 - 1e-9);
}

TEST_CASE("evolution condition: rotation is non-invasive, pole flip is not") {
    // Classical rotation: measuring first never shows up later.
    const SpinSpace fifty(100);
    const auto hemi50 = SlotPartition::uniform(fifty, 2);
    const auto grid50 = povm::aligned_grid(hemi50, 2.0);
    const auto rot = spin::make_propagator(fifty, spin::Rotation{spin::Axis::X, 1.0});
    const auto rho0 =
        spin::DensityMatrix::pure(spin::coherent_state(fifty, Direction(2.0, 0.0)));
    for (const auto& [ti, tj] : std::initializer_list<std::pair<double, double>>{
             {0.2, 0.5}, {0.0, 1.0}, {0.7, 2.1}}) {
        CHECK(lab::evolution_condition(rho0, rot, hemi50, ti, tj, grid50).score >= 1.0 - 5e-3);
    }

    // Pole-flip dynamics: the intermediate measurement freezes the cat.
    const SpinSpace twenty(40);
    const auto hemi20 = SlotPartition::uniform(twenty, 2);
    const auto grid20 = povm::aligned_grid(hemi20, 2.0);
    const double omega = 1.0;
    const auto flip = spin::make_propagator(twenty, spin::CatFlip{omega});
    const auto top = spin::DensityMatrix::pure(spin::basis_state(twenty, twenty.dim() - 1));
    const auto report =
        lab::evolution_condition(top, flip, hemi20, pi / (4 * omega), pi / (2 * omega), grid20);
    CHECK(report.score <= 0.95);
    CHECK(report.score == doctest::Approx(std::sqrt(0.5)).epsilon(0.02));

    // t_i = t_j collapses onto the mixture condition.
    const auto evo = lab::evolution_condition(top, flip, hemi20, 0.8, 0.8, grid20);
    const auto mix = lab::mixture_condition(
        spin::evolve(flip, top, 0.8), hemi20, grid20);
    CHECK(evo.score == doctest::Approx(mix.score).epsilon(1e-10));
}

TEST_CASE("classicality deviation: centered, cat, border") {
    const SpinSpace fifty(100);
    const auto hemi = SlotPartition::uniform(fifty, 2);
    const auto frozen = spin::make_propagator(fifty, spin::CatFlip{0.0});
    CHECK(lab::classicality_deviation(frozen, hemi, 0.0, Direction(2.0, 0.5)) < 1e-3);

    // Equal-weight cat built from the north pole: both hemispheres take half.
    const SpinSpace twenty(40);
    const auto hemi20 = SlotPartition::uniform(twenty, 2);
    const auto flip = spin::make_propagator(twenty, spin::CatFlip{1.0});
    CHECK(lab::classicality_deviation(flip, hemi20, pi / 4, Direction(0.0, 0.0)) ==
          doctest::Approx(0.5).epsilon(1e-6));

    // Exactly on the border the best slot only captures half the packet.
    CHECK(lab::classicality_deviation(frozen, hemi, 0.0, Direction(pi / 2, 0.0)) ==
          doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("classification verdicts at j = 20") {
    const SpinSpace space(40);
    const auto hemi = SlotPartition::uniform(space, 2);
    std::vector<double> times;
    for (int i = 0; i <= 16; ++i) times.push_back(2 * pi * i / 16.0);
    const auto dirs = lab::direction_sample(6, 4);

    const auto rot = spin::make_propagator(space, spin::Rotation{spin::Axis::X, 1.0});
    const auto rot_cls = lab::classify_hamiltonian(rot, hemi, times, dirs);
    CHECK(rot_cls.classical);
    CHECK(rot_cls.n_excluded > 0);

    const auto flip = spin::make_propagator(space, spin::CatFlip{1.0});
    const auto flip_cls = lab::classify_hamiltonian(flip, hemi, times, dirs);
    CHECK_FALSE(flip_cls.classical);
    CHECK(flip_cls.max_epsilon >= 0.45);
    CHECK(flip_cls.max_epsilon <= 0.55);

    // Merging the two caps into one slot hides the pole coherence.
    const auto merged = SlotPartition::merged_poles(space, space.j() / 2);
    const auto merged_cls = lab::classify_hamiltonian(flip, merged, times, dirs);
    CHECK(merged_cls.classical);

    lab::ClassifyOptions bad;
    bad.threshold = -0.1;
    CHECK_THROWS_AS(lab::classify_hamiltonian(rot, hemi, times, dirs, bad),
                    std::invalid_argument);
    CHECK_THROWS_AS(lab::classify_hamiltonian(rot, hemi, {}, dirs), std::invalid_argument);
}

TEST_CASE("condition chain: tight sufficiency implies quiet evolution and K <= 1") {
    const SpinSpace space(100);  // j = 50
    const auto hemi = SlotPartition::uniform(space, 2);
    const auto rot = spin::make_propagator(space, spin::Rotation{spin::Axis::X, 1.0});

    std::vector<double> times;
    for (int i = 0; i <= 8; ++i) times.push_back(2 * pi * i / 8.0);
    const auto dirs = lab::direction_sample(5, 4);
    const auto cls = lab::classify_hamiltonian(rot, hemi, times, dirs);

    if (cls.max_epsilon <= 0.01) {
        const auto grid = povm::aligned_grid(hemi, 2.0);
        const auto rho0 =
            spin::DensityMatrix::pure(spin::coherent_state(space, Direction(2.0, 0.0)));
        CHECK(lab::evolution_condition(rho0, rot, hemi, 0.3, 0.9, grid).score >= 1.0 - 0.05);
        const auto run = lab::lgi_coarse(rot, rho0, hemi, 0.0, pi / 3, 2 * pi / 3);
        CHECK(run.result.k <= 1.0 + 0.05);
    } else {
        FAIL_CHECK("rotation at j=50 unexpectedly exceeded the sufficiency threshold");
    }
}

TEST_CASE("classical paths: undisturbed conditionals decompose through t2") {
    const SpinSpace space(100);
    const auto hemi = SlotPartition::uniform(space, 2);
    const auto rot = spin::make_propagator(space, spin::Rotation{spin::Axis::X, 1.0});
    const auto rho0 =
        spin::DensityMatrix::pure(spin::coherent_state(space, Direction(2.0, 0.0)));
    const double t1 = 0.0, t2 = 0.25, t3 = 0.5;

    const auto grid = povm::aligned_grid(hemi, 2.0);
    REQUIRE(lab::evolution_condition(rho0, rot, hemi, t1, t3, grid).score >= 1.0 - 1e-3);

    const auto run = lab::lgi_coarse(rot, rho0, hemi, t1, t2, t3);
    const auto& paths = run.paths;
    for (int a = 0; a < 2; ++a) {
        if (paths.p1[a] < 1e-6) continue;
        for (int c = 0; c < 2; ++c) {
            const double via_paths =
                (paths.seq[a][0][c] + paths.seq[a][1][c]) / paths.p1[a];
            CHECK(via_paths == doctest::Approx(paths.q31[a][c]).epsilon(5e-3).scale(1.0));
        }
    }
}
