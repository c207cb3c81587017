#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rotoshift/harmonic.hpp"
#include "rotoshift/hydrogen.hpp"
#include "rotoshift/quasi_energy.hpp"

using namespace rotoshift;

namespace {

const PhysicalConstants& pc = codata2018;

double gap(int n) { return bohr_level(n + 1) - bohr_level(n); }

}  // namespace

TEST(EigenSpectrum, Trivial) {
    ComplexMatrix one(1, 1);
    one(0, 0) = 4.5;
    EXPECT_EQ(eigen_spectrum(one).energies(), std::vector<double>{4.5});

    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag(0, 0) = 3.0;
    diag(1, 1) = -1.0;
    diag(2, 2) = 2.0;
    const auto e = eigen_spectrum(diag).energies();
    EXPECT_EQ(e, (std::vector<double>{-1.0, 2.0, 3.0}));

    ComplexMatrix pauli = ComplexMatrix::Zero(2, 2);
    pauli(0, 1) = pauli(1, 0) = 1.0;
    const auto p = eigen_spectrum(pauli).energies();
    EXPECT_NEAR(p[0], -1.0, 1e-15);
    EXPECT_NEAR(p[1], 1.0, 1e-15);
}

TEST(EigenSpectrum, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(eigen_spectrum(m), std::invalid_argument);
    EXPECT_THROW(HermitianOperator(hydrogen_manifold_basis(2), ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST(EigenSpectrum, UnitScalingAndSorting) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 1.0;
    const auto s = eigen_spectrum(m, 1e-19);
    EXPECT_EQ(s.levels[0].quasi_energy, 1e-19);
    EXPECT_EQ(s.levels[1].quasi_energy, 2e-19);
    EXPECT_EQ(s.method, SpectrumMethod::Diagonalization);
}

TEST(FirstOrder, ZeroPerturbation) {
    const auto w = HermitianOperator(hydrogen_manifold_basis(3), ComplexMatrix::Zero(9, 9), pc.hartree());
    const auto s = first_order_degenerate_levels(bohr_level(3), w);
    EXPECT_EQ(s.method, SpectrumMethod::FirstOrderPT);
    for (const auto& l : s.levels) EXPECT_EQ(l.quasi_energy, bohr_level(3));
}

TEST(FirstOrder, N2ZeemanPattern) {
    CrossedFields f;
    f.pseudo_B = Vec3(0, 0, 0.5);
    const double wl = pc.elementary_charge * 0.5 / (2 * pc.electron_mass);
    const auto s = first_order_degenerate_levels(bohr_level(2), hydrogen::manifold_perturbation(2, f));
    const double e0 = bohr_level(2);
    const std::vector<double> expected{e0 - pc.hbar * wl, e0, e0, e0 + pc.hbar * wl};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR((s.levels[i].quasi_energy - expected[i]) / (pc.hbar * wl), 0.0, 1e-10);
}

TEST(CrossedField, Limits) {
    CrossedFields none;
    for (int n = 1; n <= 4; ++n)
        for (int m = -(n - 1); m <= n - 1; ++m) EXPECT_EQ(crossed_field_levels(n, m, none), bohr_level(n));

    CrossedFields zeeman;
    zeeman.pseudo_B = Vec3(0, 0, 2.0);
    const double wl = pc.elementary_charge * 2.0 / (2 * pc.electron_mass);
    EXPECT_NEAR(crossed_field_levels(3, 2, zeeman), bohr_level(3) - 2 * pc.hbar * wl, 1e-12 * pc.hbar * wl);

    CrossedFields stark;
    stark.pseudo_E = Vec3(1e6, 0, 0);
    const double split = 3.0 * pc.elementary_charge * pc.bohr_radius * 1e6;
    EXPECT_NEAR((bohr_level(2) - crossed_field_levels(2, 1, stark)) / split, 1.0, 1e-9);

    EXPECT_THROW(crossed_field_levels(2, 2, none), std::invalid_argument);
}

TEST(CrossedField, BohrLevel) {
    EXPECT_NEAR(bohr_level(1) / pc.hartree(), -0.5, 1e-9);
    EXPECT_NEAR(bohr_level(1, 2) / bohr_level(1), 4.0, 1e-14);
    EXPECT_THROW(bohr_level(0), std::invalid_argument);
}

// Extreme levels of the brute-force manifold diagonalization against the
// closed form, random weak fields in the perturbative regime.
TEST(CrossedField, OracleEquivalenceRandomFields) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            CrossedFields f;
            // keep both splittings below 1e-3 of the gap
            const double budget = 1e-3 * gap(n) / (n - 1);
            const double e_max = budget / (1.5 * n * pc.elementary_charge * pc.bohr_radius);
            const double b_max = budget / (pc.hbar * pc.elementary_charge / (2 * pc.electron_mass));
            f.pseudo_E = Vec3(u(rng), u(rng), 0.0) * e_max * 0.5;
            f.pseudo_B = Vec3(0.0, 0.0, u(rng) * b_max * 0.5);
            if (trial % 3 == 0) f.drive_E = Vec3(u(rng), u(rng), 0.0) * e_max * 0.2;

            const auto pt = first_order_degenerate_levels(bohr_level(n), hydrogen::manifold_perturbation(n, f));
            const double w = crossed_field_frequency(n, f);
            const double splitting = 2.0 * (n - 1) * pc.hbar * std::abs(w);
            // all levels: k = -(n-1)..(n-1) with multiplicity n - |k|
            std::vector<double> expected;
            for (int m = -(n - 1); m <= n - 1; ++m)
                for (int d = 0; d < n - std::abs(m); ++d) expected.push_back(crossed_field_levels(n, m, f));
            std::sort(expected.begin(), expected.end());
            ASSERT_EQ(expected.size(), pt.levels.size());
            EXPECT_LT(std::abs(pt.levels.front().quasi_energy - expected.front()) / splitting, 1e-8);
            EXPECT_LT(std::abs(pt.levels.back().quasi_energy - expected.back()) / splitting, 1e-8);
            for (std::size_t i = 0; i < expected.size(); ++i)
                EXPECT_LT(std::abs(pt.levels[i].quasi_energy - expected[i]) / splitting, 1e-8);
        }
    }
}

TEST(RotatingCoulomb, Limits) {
    RotorConfig still{0.0, 1e-10, CoulombCenter{1}};
    EXPECT_EQ(rotating_coulomb_levels(3, 2, still), bohr_level(3));
    RotorConfig axis{1e12, 0.0, CoulombCenter{1}};
    EXPECT_NEAR(rotating_coulomb_levels(3, 2, axis), bohr_level(3) - 2 * pc.hbar * 1e12, 1e-30);
    EXPECT_THROW(rotating_coulomb_levels(3, 3, axis), std::invalid_argument);
}

TEST(RotatingCoulomb, EqualsCrossedFieldWithFictitiousFields) {
    for (int n = 1; n <= 5; ++n)
        for (double om : {1e9, 1e11, 1e13})
            for (double r : {1e-11, 1e-10, 1e-9})
                for (int m = -(n - 1); m <= n - 1; ++m) {
                    const RotorConfig rot{om, r, CoulombCenter{1}};
                    const double a = rotating_coulomb_levels(n, m, rot);
                    const double b = crossed_field_levels(n, m, fictitious_fields(rot));
                    EXPECT_LT(std::abs(a - b) / std::abs(a), 1e-12);
                }
}

TEST(RotatingCoulomb, SplittingMonotone) {
    double prev = 0.0;
    for (double om = 1e10; om <= 1e13; om *= 1.5) {
        const RotorConfig rot{om, 1e-10, CoulombCenter{1}};
        const double s = std::abs(rotating_coulomb_levels(3, 1, rot) - bohr_level(3));
        EXPECT_GT(s, prev);
        prev = s;
    }
    prev = 0.0;
    for (double r = 1e-12; r <= 1e-8; r *= 1.5) {
        const RotorConfig rot{1e12, r, CoulombCenter{1}};
        const double s = std::abs(rotating_coulomb_levels(4, -2, rot) - bohr_level(4));
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(DrivenLevels, ReducesToRotatingWithoutDrive) {
    const RotorConfig rot{3e12, 2e-10, CoulombCenter{1}};
    for (int m = -2; m <= 2; ++m)
        EXPECT_NEAR(driven_rotating_levels(3, m, rot, Vec3::Zero()) / rotating_coulomb_levels(3, m, rot), 1.0, 1e-15);
}

TEST(DrivenLevels, AntiparallelCancellation) {
    const RotorConfig rot{1e12, 1e-10, CoulombCenter{1}};
    const double e_cancel = pc.electron_mass * rot.omega * rot.omega * rot.radius / pc.elementary_charge;
    const Vec3 drive = -e_cancel * Vec3::UnitX();
    EXPECT_LT(driven_expansion_parameter(3, rot, drive), 1e-12);
    EXPECT_EQ(driven_rotating_levels(3, 2, rot, drive), bohr_level(3) - pc.hbar * rot.omega * 2);
}

TEST(DrivenLevels, StarkDominatesAtExperimentParameters) {
    const RotorConfig rot{2 * std::numbers::pi * 8e7, pc.bohr_radius, CoulombCenter{1}};
    const double centrifugal = pc.electron_mass * rot.omega * rot.omega * rot.radius;
    const double electric = pc.elementary_charge * 3e4;
    EXPECT_NEAR(electric / centrifugal / 4e8, 1.0, 0.15);
    const double xp = driven_expansion_parameter(2, rot, 3e4 * Vec3::UnitX());
    const double xa = driven_expansion_parameter(2, rot, -3e4 * Vec3::UnitX());
    EXPECT_GT(xp, xa);
}

TEST(DrivenLevels, Errors) {
    EXPECT_THROW(driven_rotating_levels(2, 1, RotorConfig{0.0, 1e-10, CoulombCenter{1}}, Vec3(1, 0, 0)),
                 std::invalid_argument);
    EXPECT_THROW(driven_rotating_levels(2, 1, RotorConfig{1e9, 1e-10, CoulombCenter{1}}, Vec3(0, 0, 1)),
                 std::invalid_argument);
}

TEST(HarmonicClosedForm, LevelCountMatchesBasis) {
    const RotorConfig rot{1e14, 1e-10, HarmonicTrap{1e15}};
    for (int n = 0; n <= 12; ++n) EXPECT_EQ(ho_analytic_levels(rot, n).levels.size(), build_ho_basis(n).dimension());
}

TEST(HarmonicClosedForm, NullResultForTransitionFrequencies) {
    // (E(N, m) - E(N', m'))/hbar + Omega (m - m') = omega0 (N - N'), independent of Omega and R
    const double w0 = 1e15;
    for (double ratio : {0.05, 0.1, 0.3, 0.5})
        for (double r : {0.0, 1e-10, 1e-9}) {
            const RotorConfig rot{ratio * w0, r, HarmonicTrap{w0}};
            for (int N = 1; N <= 4; ++N)
                for (int m = -N; m <= N; ++m) {
                    const int np = N - 1, mp = std::clamp(m - 1, -np, np);
                    const double w = (ho_quasi_energy(N, m, rot) - ho_quasi_energy(np, mp, rot)) / pc.hbar +
                                     rot.omega * (m - mp);
                    EXPECT_LT(std::abs(w - w0) / w0, 1e-10);
                }
        }
}

TEST(CylindricalSpectrum, LabelsFollowLzAndNumber) {
    const auto b = build_ho_basis(5);
    // irrational ratio: no accidental degeneracy between different (N, m_z)
    const RotorConfig rot{0.1 * std::sqrt(2.0) * 1e15, 0.0, HarmonicTrap{1e15}};
    const auto h = harmonic::ho_rotating_hamiltonian(b, rot);
    const ComplexMatrix lz = harmonic::angular_momentum_z(b);
    const ComplexMatrix n = harmonic::number_operator(b);
    const auto s = cylindrical_spectrum(h, lz, &n);
    const auto ref = ho_analytic_levels(rot, 5);
    ASSERT_EQ(s.levels.size(), ref.levels.size());
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        EXPECT_EQ(s.levels[i].label->q, ref.levels[i].label->q);
        EXPECT_EQ(s.levels[i].label->m_z, ref.levels[i].label->m_z);
        EXPECT_NEAR(s.levels[i].quasi_energy / ref.levels[i].quasi_energy, 1.0, 1e-13);
    }
    // a drifting trap breaks the symmetry
    const RotorConfig drift{0.25e15, 1e-10, HarmonicTrap{1e15}};
    EXPECT_THROW(cylindrical_spectrum(harmonic::ho_rotating_hamiltonian(b, drift), lz), std::invalid_argument);
}

TEST(PerturbativeWarning, Threshold) {
    const double g = gap(3);
    EXPECT_FALSE(perturbative_regime_warning(3, 0.004 * g / pc.hbar).has_value());
    EXPECT_TRUE(perturbative_regime_warning(3, 0.006 * g / pc.hbar).has_value());
}

TEST(LevelTable, SortedWithDegeneracies) {
    const RotorConfig rot{1e12, 1e-10, CoulombCenter{1}};
    const auto t = coulomb_level_table(rot, {2, 3});
    EXPECT_EQ(t.levels.size(), 4u + 9u);
    for (std::size_t i = 1; i < t.levels.size(); ++i)
        EXPECT_LE(t.levels[i - 1].quasi_energy, t.levels[i].quasi_energy);
    EXPECT_EQ(t.find(3, -2), rotating_coulomb_levels(3, -2, rot));
    EXPECT_FALSE(t.find(4, 0).has_value());
}
