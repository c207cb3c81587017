#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rotoshift/shifts.hpp"

using namespace rotoshift;

namespace {

const PhysicalConstants& pc = codata2018;

Transition tr(int n, int m, int np, int mp) { return Transition{{n, m}, {np, mp}, std::nullopt}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Doppler, AtRestAndTransverse) {
    const double de = 3e-19;
    EXPECT_EQ(doppler_frequency(de, Vec3::Zero(), Vec3(1e7, 0, 0)), de / pc.hbar);
    EXPECT_EQ(doppler_frequency(de, Vec3(0, 500, 0), Vec3(1e7, 0, 0)), de / pc.hbar);
    EXPECT_EQ(doppler_frequency_along(de, Vec3::Zero(), Vec3(0, 0, 1)), de / pc.hbar);
}

TEST(Doppler, CollinearFixedPoint) {
    const double de = 1e15 * pc.hbar;
    const Vec3 v(300.0, 0, 0);
    // iterate omega <- dE/hbar + v omega / c
    double w = de / pc.hbar;
    for (int i = 0; i < 50; ++i) w = de / pc.hbar + v.x() * w / pc.light_speed;
    const double shift = doppler_frequency_along(de, v, Vec3(2.0, 0, 0)) - de / pc.hbar;
    EXPECT_LT(rel(shift, w - de / pc.hbar), 1e-6);
    EXPECT_NEAR(shift / 1e9, 1.0, 2e-3);
    // consistency with the explicit-wavevector form
    const double w_along = doppler_frequency_along(de, v, Vec3(1, 0, 0));
    EXPECT_LT(rel(doppler_frequency(de, v, Vec3(w_along / pc.light_speed, 0, 0)), w_along), 1e-15);
}

TEST(Doppler, Errors) {
    EXPECT_THROW(doppler_frequency(0.0, Vec3::Zero(), Vec3::UnitX()), std::invalid_argument);
    EXPECT_THROW(doppler_frequency(-1e-19, Vec3::Zero(), Vec3::UnitX()), std::invalid_argument);
    EXPECT_THROW(doppler_frequency(1e-19, Vec3(0.02 * pc.light_speed, 0, 0), Vec3::UnitX()), OutOfRegimeError);
    EXPECT_THROW(doppler_frequency_along(1e-19, Vec3::Zero(), Vec3::Zero()), std::invalid_argument);
}

TEST(Kinematic, Values) {
    EXPECT_EQ(rotational_kinematic_shift(1e9, 0), 0.0);
    EXPECT_NEAR(rotational_kinematic_shift(2 * std::numbers::pi * 80e6, 1), 5.03e8, 1e6);
    EXPECT_EQ(rotational_kinematic_shift(3e7, -2), -6e7);
}

TEST(FieldMode, Validation) {
    FieldModeLabel ok{1e15, 2, 1e6, -1};
    EXPECT_NO_THROW(ok.validate());
    EXPECT_EQ(ok.quasi_energy(1e9), pc.hbar * (1e15 - 2e9));
    EXPECT_THROW((FieldModeLabel{0.0, 0, 0.0, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((FieldModeLabel{1e15, 0, 1e8, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((FieldModeLabel{1e15, 0, 0.0, 0}.validate()), std::invalid_argument);
}

TEST(Transition, DefaultM) {
    Transition t = tr(3, 2, 2, 1);
    EXPECT_EQ(t.photon_M(), 1);
    EXPECT_TRUE(t.conserves_angular_momentum());
    t.M_override = 0;
    EXPECT_EQ(t.photon_M(), 0);
    EXPECT_FALSE(t.conserves_angular_momentum());
}

TEST(EmittedFrequency, FromLevelTable) {
    const RotorConfig rot{1e12, 5e-10, CoulombCenter{1}};
    const auto table = coulomb_level_table(rot, {1, 2});
    const Transition t = tr(2, 1, 1, 0);
    const double w = emitted_frequency(table, t, rot.omega);
    const double expected =
        (rotating_coulomb_levels(2, 1, rot) - rotating_coulomb_levels(1, 0, rot)) / pc.hbar + rot.omega;
    EXPECT_EQ(w, expected);
    // same number through drfs_exact
    const auto r = drfs_exact(t, rot);
    EXPECT_LT(rel(r.omega_rotating, w), 1e-15);
    EXPECT_LT(std::abs(r.drfs - (w - r.omega_rest)), 1e-15 * w);

    EXPECT_THROW(emitted_frequency(table, tr(3, 0, 1, 0), rot.omega), NotFoundError);
    EXPECT_THROW(emitted_frequency(table, tr(1, 0, 2, 0), rot.omega), UnphysicalTransitionError);
}

TEST(DrfsExact, TrivialCases) {
    EXPECT_EQ(drfs_exact(tr(3, 2, 2, 1), RotorConfig{0.0, 1e-10, CoulombCenter{1}}).drfs, 0.0);
    for (double om : {1e9, 1e12, 1e13})
        for (double r : {1e-11, 1e-10, 1e-9}) EXPECT_EQ(drfs_exact(tr(4, 0, 2, 0), RotorConfig{om, r, CoulombCenter{1}}).drfs, 0.0);
}

TEST(DrfsExact, HarmonicNullResult) {
    const double w0 = 1e15;
    for (double ratio : {0.05, 0.1, 0.3})
        for (int N = 1; N <= 5; ++N)
            for (int m = -N; m <= N; ++m) {
                const RotorConfig rot{ratio * w0, 4e-10, HarmonicTrap{w0}};
                const Transition t = tr(N, m, N - 1, std::clamp(m + 1, -(N - 1), N - 1));
                const auto r = drfs_exact(t, rot);
                EXPECT_EQ(r.drfs, 0.0);
                EXPECT_EQ(r.omega_rotating, r.omega_rest);
                EXPECT_EQ(r.omega_rest, w0);
                // quasi-energy route, including the common offset
                const double w = (r.quasi_energy_upper - r.quasi_energy_lower) / pc.hbar + rot.omega * r.M;
                EXPECT_LT(std::abs(w - w0) / w0, 1e-10);
            }
}

TEST(DrfsExact, DecompositionAndIdentities) {
    for (double om : {1e10, 3e11, 1e13})
        for (double r : {2e-11, 1e-10}) {
            const RotorConfig rot{om, r, CoulombCenter{1}};
            for (auto t : {tr(3, 2, 2, 1), tr(4, -3, 2, 1), tr(5, 1, 3, -2)}) {
                const auto s = drfs_exact(t, rot);
                EXPECT_LE(std::abs(s.drfs - (s.kinematic_part + s.dynamic_part)), 1e-12 * std::abs(s.drfs));
                // omega_rotating is stored as omega_rest + drfs, so the difference is exact up to its rounding
                EXPECT_LE(std::abs((s.omega_rotating - s.omega_rest) - s.drfs),
                          std::numeric_limits<double>::epsilon() * s.omega_rest);
                t.M_override = t.photon_M() + 2;
                const auto k = drfs_exact(t, rot);
                EXPECT_EQ(k.kinematic_part, 2 * om);
                EXPECT_EQ(k.dynamic_part, s.dynamic_part);
            }
        }
}

TEST(DrfsExact, RotationSense) {
    const RotorConfig fwd{2e12, 1e-10, CoulombCenter{1}};
    const RotorConfig rev{-2e12, 1e-10, CoulombCenter{1}};
    // reversing the rotation alone flips the sign
    EXPECT_EQ(drfs_exact(tr(3, 2, 2, 1), rev).drfs, -drfs_exact(tr(3, 2, 2, 1), fwd).drfs);
    // reversing it together with all projections leaves the shift unchanged
    EXPECT_EQ(drfs_exact(tr(3, -2, 2, -1), rev).drfs, drfs_exact(tr(3, 2, 2, 1), fwd).drfs);
    // flipping the projections alone turns a red shift into a blue one
    EXPECT_EQ(drfs_exact(tr(3, -2, 2, -1), fwd).dynamic_part, -drfs_exact(tr(3, 2, 2, 1), fwd).dynamic_part);
    EXPECT_LT(drfs_exact(tr(3, 2, 2, 1), fwd).dynamic_part, 0.0);
}

TEST(DrfsExact, MolecularExample) {
    const RotorConfig rot{1e13, 1e-10, CoulombCenter{1}};
    const Transition t = tr(3, 2, 2, 1);
    const double vr2 = std::pow(1e3 / atomic_velocity(1), 2);
    EXPECT_NEAR(vr2, 2.07e-7, 0.03e-7);
    const double approx = 9.0 / 8.0 * (4 * 1 - 9 * 2) * rot.omega * vr2;
    const auto e = drfs_exact(t, rot);
    EXPECT_LT(rel(e.drfs, approx), 1e-3);
    const auto s = drfs_series(t, rot);
    EXPECT_LT(rel(s.dynamic, approx), 1e-12);
    EXPECT_LT(rel(s.velocity_ratio_sq, vr2), 1e-12);
}

TEST(DrfsSeries, SymmetricAndScaling) {
    const RotorConfig rot{1e12, 1e-10, CoulombCenter{1}};
    EXPECT_EQ(drfs_series(tr(3, 1, 3, 1), rot).total, 0.0);
    const double a = drfs_series(tr(3, 2, 2, 1), rot).dynamic;
    const double b = drfs_series(tr(3, 2, 2, 1), RotorConfig{1e12, 2e-10, CoulombCenter{1}}).dynamic;
    EXPECT_LT(rel(b, 4 * a), 1e-14);
    const auto s = drfs_series(tr(3, 2, 2, 1), rot);
    EXPECT_LT(rel(s.dynamic_2pi_convention, 4 * std::numbers::pi * std::numbers::pi * s.dynamic), 1e-15);
    EXPECT_LT(rel(s.coefficient, 9.0 / 8.0 * (4 - 18)), 1e-15);
}

TEST(DrfsSeries, AgreesWithExactToFourthOrder) {
    const Transition t = tr(3, 2, 2, 1);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double om = 1e10 * std::pow(10.0, i * 3.0 / 9);
            const double r = 1e-11 * std::pow(10.0, j * 1.0 / 9);
            const RotorConfig rot{om, r, CoulombCenter{1}};
            const auto s = drfs_series(t, rot);
            const auto e = drfs_exact(t, rot);
            const double x = s.expansion_parameter;
            // Taylor remainder of sqrt(1+x^2)-1-x^2/2 is below x^4/8 per unit |m_z|
            EXPECT_LE(std::abs(s.total - e.drfs), (2 + 1) / 8.0 * std::pow(x, 4) * om * (1 + 1e-9));
            EXPECT_LE(std::abs(s.total - e.drfs), std::pow(x, 4) * om);
        }
}

TEST(DrfsSeries, OutOfRegime) {
    const RotorConfig fast{1e16, 1e-9, CoulombCenter{1}};
    EXPECT_THROW(drfs_series(tr(3, 2, 2, 1), fast), OutOfRegimeError);
    EXPECT_NO_THROW(drfs_exact(tr(3, 2, 2, 1), fast));
}

TEST(DrfsSeries, HarmonicHasNoDynamicPart) {
    const auto s = drfs_series(tr(2, 1, 1, 0), RotorConfig{1e14, 1e-10, HarmonicTrap{1e15}});
    EXPECT_EQ(s.dynamic, 0.0);
    EXPECT_EQ(s.total, 0.0);
}

TEST(DrfsDriven, UsesCombinedForce) {
    const RotorConfig rot{1e12, 1e-10, CoulombCenter{1}};
    const double e_cancel = pc.electron_mass * rot.omega * rot.omega * rot.radius / pc.elementary_charge;
    const auto cancel = drfs_exact(tr(3, 2, 2, 1), rot, pc, Vec3(-e_cancel, 0, 0));
    EXPECT_LT(std::abs(cancel.dynamic_part), 1e-20);
    const auto doubled = drfs_exact(tr(3, 2, 2, 1), rot, pc, Vec3(e_cancel, 0, 0));
    const auto plain = drfs_exact(tr(3, 2, 2, 1), rot);
    EXPECT_LT(rel(doubled.dynamic_part, 4 * plain.dynamic_part), 1e-6);  // quartic corrections ~ x^2
    EXPECT_THROW(drfs_exact(tr(3, 2, 2, 1), RotorConfig{0.0, 1e-10, CoulombCenter{1}}, pc, Vec3(1, 0, 0)),
                 std::invalid_argument);
}

TEST(TransverseRatio, IndependentOfRadius) {
    const Transition t = tr(3, 2, 2, 1);
    const double w_rest = drfs_exact(t, RotorConfig{1e12, 1e-10, CoulombCenter{1}}).omega_rest;
    const double a = transverse_doppler_ratio(t, RotorConfig{1e12, 1e-10, CoulombCenter{1}}, w_rest);
    const double b = transverse_doppler_ratio(t, RotorConfig{1e12, 2e-10, CoulombCenter{1}}, w_rest);
    EXPECT_LT(rel(a, b), 1e-12);
    const double closed = transverse_doppler_ratio(t, 1e12, w_rest);
    EXPECT_LT(rel(closed, a), 1e-12);
    // (9/4) C' / alpha^2 * Omega / omega form
    const double alt = 2.0 * 9.0 / 8.0 * (4 - 18) / (pc.alpha * pc.alpha) * 1e12 / w_rest;
    EXPECT_LT(rel(closed, alt), 1e-8);
    EXPECT_THROW(transverse_doppler_ratio(t, 1e12, 0.0), std::invalid_argument);
}

TEST(TransverseRatio, ReproducesSeries) {
    const Transition t = tr(4, 3, 3, 2);
    const RotorConfig rot{5e11, 3e-10, CoulombCenter{1}};
    const double w_rest = drfs_exact(t, rot).omega_rest;
    const double ratio = transverse_doppler_ratio(t, rot.omega, w_rest);
    const double back = ratio * transverse_doppler_shift(w_rest, rot.orbital_speed());
    EXPECT_LT(rel(back, drfs_series(t, rot).dynamic), 1e-12);
}

TEST(TransverseRatio, SpansWideRange) {
    const Transition t = tr(2, 1, 1, 0);
    const double w = drfs_exact(t, RotorConfig{1.0, 0.0, CoulombCenter{1}}).omega_rest;
    EXPECT_LT(std::abs(transverse_doppler_ratio(t, 1e-10 * w, w)), 1e-4);
    EXPECT_GT(std::abs(transverse_doppler_ratio(t, 1e-1 * w, w)), 1e3);
}

TEST(ForceRatio, ExperimentEstimate) {
    const RotorConfig rot{2 * std::numbers::pi * 8e7, 5e-11, CoulombCenter{1}};
    const auto f = force_ratio(rot, 3e4);
    EXPECT_NEAR(f.direct / 2.4e-9, 1.0, 0.05);
    EXPECT_NEAR(f.engineering / 2.4e-9, 1.0, 0.05);
    // the engineering prefactor is m (2 pi)^2 / e rounded to three digits
    EXPECT_NEAR(pc.electron_mass * 4 * std::numbers::pi * std::numbers::pi / pc.elementary_charge, 2.24e-10, 0.01e-10);
    EXPECT_THROW(force_ratio(rot, 0.0), std::invalid_argument);
}
