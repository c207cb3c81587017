#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "rotoshift/constants.hpp"
#include "rotoshift/errors.hpp"
#include "rotoshift/quasi_energy.hpp"
#include "rotoshift/rotor.hpp"

namespace rotoshift {

/// Largest |v|/c accepted by the nonrelativistic Doppler formula.
inline constexpr double max_doppler_beta = 0.01;

/// Series expansion is only attempted while 3 n R Omega / (2 v_a) stays below this.
inline constexpr double max_series_parameter = 0.3;

/// Prefactor of m Omega^2 R / (e E) written with Omega/2pi in Hz, R in m and E in V/m.
inline constexpr double engineering_force_prefactor = 2.24e-10;

/// Cylindrical photon mode: frequency, angular-momentum projection, axial wavenumber, helicity.
struct FieldModeLabel {
    double omega = 0.0;  // rad/s
    int M = 0;
    double k_z = 0.0;  // 1/m
    int chi = 1;

    void validate(const PhysicalConstants& pc = codata2018) const {
        if (!(omega > 0.0)) throw std::invalid_argument("mode frequency must be positive");
        if (std::abs(k_z) > omega / pc.light_speed * (1.0 + 1e-15))
            throw std::invalid_argument("|k_z| must not exceed omega/c");
        if (chi != 1 && chi != -1) throw std::invalid_argument("helicity must be +1 or -1");
    }

    /// Photon quasi-energy in the rotating frame, hbar (omega - Omega M).
    [[nodiscard]] double quasi_energy(double rotation, const PhysicalConstants& pc = codata2018) const {
        return pc.hbar * (omega - rotation * M);
    }
};

struct StateRef {
    int q = 0;    // N (oscillator) or n (hydrogen)
    int m_z = 0;
    friend bool operator==(const StateRef&, const StateRef&) = default;
};

/**
 * Emission (q, m_z) -> (q', m_z') with photon projection M.
 *
 * Without an override M follows angular-momentum conservation, M = m_z - m_z'.
 */
struct Transition {
    StateRef upper;
    StateRef lower;
    std::optional<int> M_override;

    [[nodiscard]] int photon_M() const { return M_override.value_or(upper.m_z - lower.m_z); }
    [[nodiscard]] bool conserves_angular_momentum() const { return photon_M() == upper.m_z - lower.m_z; }
};

struct ShiftRatios {
    double transverse_doppler = std::nan("");
    double force_ratio = std::nan("");
};

/**
 * Frequency shift of one transition.
 *
 * drfs = omega_rotating - omega_rest = kinematic_part + dynamic_part, where
 * kinematic_part = Omega M - Omega (m_z - m_z') and dynamic_part collects the
 * nonlinear-in-Omega level modifications.
 */
struct ShiftReport {
    Transition transition;
    int M = 0;
    double quasi_energy_upper = 0.0;  // J
    double quasi_energy_lower = 0.0;  // J
    double omega_rest = 0.0;          // rad/s
    double omega_rotating = 0.0;      // rad/s
    double drfs = 0.0;                // rad/s
    double kinematic_part = 0.0;      // rad/s
    double dynamic_part = 0.0;        // rad/s
    ShiftRatios ratios;
};

/// omega = dE/hbar + v . k (nonrelativistic; |v| <= 0.01 c).
inline double doppler_frequency(double delta_e, const Vec3& v, const Vec3& k,
                                const PhysicalConstants& pc = codata2018) {
    if (!(delta_e > 0.0)) throw std::invalid_argument("doppler_frequency: deltaE must be positive");
    if (v.norm() > max_doppler_beta * pc.light_speed)
        throw OutOfRegimeError("doppler_frequency: |v|/c above nonrelativistic limit");
    return delta_e / pc.hbar + v.dot(k);
}

/**
 * Doppler frequency for a photon travelling along `direction` with |k| = omega/c,
 * i.e. the solution of omega = dE/hbar + (v . n) omega / c.
 */
inline double doppler_frequency_along(double delta_e, const Vec3& v, const Vec3& direction,
                                      const PhysicalConstants& pc = codata2018) {
    if (!(direction.norm() > 0.0)) throw std::invalid_argument("direction must be nonzero");
    if (!(delta_e > 0.0)) throw std::invalid_argument("doppler_frequency: deltaE must be positive");
    if (v.norm() > max_doppler_beta * pc.light_speed)
        throw OutOfRegimeError("doppler_frequency: |v|/c above nonrelativistic limit");
    const double beta = v.dot(direction.normalized()) / pc.light_speed;
    return delta_e / pc.hbar / (1.0 - beta);
}

/// Omega M.
inline double rotational_kinematic_shift(double omega, int M) { return omega * M; }

/**
 * Lab-frame photon frequency (E_upper - E_lower)/hbar + Omega M from a table of
 * quasi-energies.
 */
inline double emitted_frequency(const SpectrumResult& levels, const Transition& t, double omega,
                                const PhysicalConstants& pc = codata2018) {
    const auto eu = levels.find(t.upper.q, t.upper.m_z);
    const auto el = levels.find(t.lower.q, t.lower.m_z);
    if (!eu || !el) throw NotFoundError("emitted_frequency: transition state not in level table");
    const double w = (*eu - *el) / pc.hbar + rotational_kinematic_shift(omega, t.photon_M());
    if (!(w > 0.0)) throw UnphysicalTransitionError("emitted_frequency: nonpositive photon frequency");
    return w;
}

namespace detail {

inline void check_coulomb_state(const StateRef& s) {
    if (s.q < 1) throw std::invalid_argument("principal quantum number must be >= 1");
    if (std::abs(s.m_z) > s.q - 1) throw std::invalid_argument("need |m_z| <= n - 1");
}

inline void check_ho_state(const StateRef& s) {
    if (s.q < 0 || std::abs(s.m_z) > s.q) throw std::invalid_argument("need |m_z| <= N");
}

inline double expansion_parameter(int n, const RotorConfig& rotor, const std::optional<Vec3>& drive,
                                  const PhysicalConstants& pc) {
    return drive ? driven_expansion_parameter(n, rotor, *drive, pc) : rotation_expansion_parameter(n, rotor, pc);
}

}  // namespace detail

/**
 * Exact shift omega(Omega) - omega(0) from the closed-form quasi-energies.
 *
 * Coulomb rotors use the rotating (or, with a drive field, driven) hydrogenic
 * levels; harmonic rotors use the rotating-trap levels, whose Omega dependence
 * is linear in m_z plus a common offset.
 */
inline ShiftReport drfs_exact(const Transition& t, const RotorConfig& rotor,
                              const PhysicalConstants& pc = codata2018,
                              const std::optional<Vec3>& drive_E = std::nullopt) {
    rotor.validate();
    ShiftReport r;
    r.transition = t;
    r.M = t.photon_M();
    const double om = rotor.omega;
    r.kinematic_part = om * r.M - om * (t.upper.m_z - t.lower.m_z);

    if (rotor.is_harmonic()) {
        if (drive_E) throw std::invalid_argument("drive fields are only supported for coulomb rotors");
        detail::check_ho_state(t.upper);
        detail::check_ho_state(t.lower);
        r.quasi_energy_upper = ho_quasi_energy(t.upper.q, t.upper.m_z, rotor, pc);
        r.quasi_energy_lower = ho_quasi_energy(t.lower.q, t.lower.m_z, rotor, pc);
        r.omega_rest = rotor.omega0() * (t.upper.q - t.lower.q);
        // the Omega^2 R^2 offset is common to all levels and cancels
        r.dynamic_part = 0.0;
    } else {
        detail::check_coulomb_state(t.upper);
        detail::check_coulomb_state(t.lower);
        if (drive_E && om == 0.0) throw std::invalid_argument("driven levels require Omega != 0");
        const int Z = rotor.charge();
        const double xu = detail::expansion_parameter(t.upper.q, rotor, drive_E, pc);
        const double xl = detail::expansion_parameter(t.lower.q, rotor, drive_E, pc);
        r.quasi_energy_upper = bohr_level(t.upper.q, Z, pc) - pc.hbar * om * t.upper.m_z * std::sqrt(1.0 + xu * xu);
        r.quasi_energy_lower = bohr_level(t.lower.q, Z, pc) - pc.hbar * om * t.lower.m_z * std::sqrt(1.0 + xl * xl);
        r.omega_rest = (bohr_level(t.upper.q, Z, pc) - bohr_level(t.lower.q, Z, pc)) / pc.hbar;
        r.dynamic_part = -om * t.upper.m_z * detail::sqrt1p_minus1(xu * xu) +
                         om * t.lower.m_z * detail::sqrt1p_minus1(xl * xl);
    }
    r.drfs = r.kinematic_part + r.dynamic_part;
    r.omega_rotating = r.omega_rest + r.drfs;
    return r;
}

/**
 * Leading-order shift. The coefficient comes from expanding drfs_exact:
 * dynamic ~ (9/8)(n'^2 m_z' - n^2 m_z) Omega (v/v_a)^2 with v = Omega R
 * (or |m Omega^2 R + e E| / (m Omega) with a drive field).
 *
 * `dynamic_2pi_convention` carries the alternative prefactor 9 pi^2 / 2, which
 * is 4 pi^2 times the Taylor coefficient.
 */
struct SeriesShift {
    double coefficient = 0.0;  // 9/8 (n'^2 m_z' - n^2 m_z); 0 for the oscillator
    double velocity_ratio_sq = 0.0;  // (v / v_a)^2
    double dynamic = 0.0;            // rad/s
    double total = 0.0;              // dynamic + kinematic part, rad/s
    double dynamic_2pi_convention = 0.0;
    double total_2pi_convention = 0.0;
    double expansion_parameter = 0.0;  // max over the two manifolds of 3 n v / (2 v_a)
};

inline SeriesShift drfs_series(const Transition& t, const RotorConfig& rotor,
                               const PhysicalConstants& pc = codata2018,
                               const std::optional<Vec3>& drive_E = std::nullopt) {
    rotor.validate();
    SeriesShift s;
    const double om = rotor.omega;
    const double kinematic = om * t.photon_M() - om * (t.upper.m_z - t.lower.m_z);
    if (rotor.is_harmonic()) {
        if (drive_E) throw std::invalid_argument("drive fields are only supported for coulomb rotors");
        detail::check_ho_state(t.upper);
        detail::check_ho_state(t.lower);
        s.total = s.total_2pi_convention = kinematic;
        return s;
    }
    detail::check_coulomb_state(t.upper);
    detail::check_coulomb_state(t.lower);
    const double xu = detail::expansion_parameter(t.upper.q, rotor, drive_E, pc);
    const double xl = detail::expansion_parameter(t.lower.q, rotor, drive_E, pc);
    s.expansion_parameter = std::max(std::abs(xu), std::abs(xl));
    if (s.expansion_parameter >= max_series_parameter)
        throw OutOfRegimeError("drfs_series: expansion parameter 3nR*Omega/(2 v_a) >= 0.3");

    const int n = t.upper.q, np = t.lower.q;
    s.coefficient = 9.0 / 8.0 * (np * np * t.lower.m_z - n * n * t.upper.m_z);
    // v/v_a recovered from the expansion parameter of either manifold: x = 3 n v / (2 v_a)
    const double v_ratio = 2.0 * xu / (3.0 * n);
    s.velocity_ratio_sq = v_ratio * v_ratio;
    s.dynamic = s.coefficient * om * s.velocity_ratio_sq;
    s.total = s.dynamic + kinematic;
    s.dynamic_2pi_convention = 4.0 * std::numbers::pi * std::numbers::pi * s.dynamic;
    s.total_2pi_convention = s.dynamic_2pi_convention + kinematic;
    return s;
}

/**
 * Dynamic series shift over the transverse Doppler shift omega v_c^2 / (2 c^2),
 * evaluated in closed form: 2 C (c / v_a)^2 Omega / omega with C the series
 * coefficient. The orbital velocity cancels.
 */
inline double transverse_doppler_ratio(const Transition& t, double omega, double omega_rest, int Z = 1,
                                       const PhysicalConstants& pc = codata2018) {
    if (!(omega_rest > 0.0)) throw std::invalid_argument("transverse_doppler_ratio: omega_rest must be positive");
    detail::check_coulomb_state(t.upper);
    detail::check_coulomb_state(t.lower);
    const int n = t.upper.q, np = t.lower.q;
    const double c = 9.0 / 8.0 * (np * np * t.lower.m_z - n * n * t.upper.m_z);
    const double c_over_va = pc.light_speed / atomic_velocity(Z, pc);
    return 2.0 * c * c_over_va * c_over_va * omega / omega_rest;
}

/// Same ratio evaluated directly as drfs_series.dynamic / (omega v_c^2 / 2c^2).
inline double transverse_doppler_ratio(const Transition& t, const RotorConfig& rotor, double omega_rest,
                                       const PhysicalConstants& pc = codata2018) {
    if (!(omega_rest > 0.0)) throw std::invalid_argument("transverse_doppler_ratio: omega_rest must be positive");
    const SeriesShift s = drfs_series(t, rotor, pc);
    const double beta = rotor.orbital_speed() / pc.light_speed;
    return s.dynamic / (omega_rest * beta * beta / 2.0);
}

/// Transverse (quadratic) Doppler shift omega v^2 / (2 c^2).
inline double transverse_doppler_shift(double omega, double v, const PhysicalConstants& pc = codata2018) {
    const double beta = v / pc.light_speed;
    return omega * beta * beta / 2.0;
}

struct ForceRatio {
    double direct = 0.0;       // m Omega^2 R / (e E)
    double engineering = 0.0;  // 2.24e-10 (Omega/2pi)^2 R / E
};

/// Centrifugal over electric force on the electron.
inline ForceRatio force_ratio(const RotorConfig& rotor, double drive_E, const PhysicalConstants& pc = codata2018) {
    if (!(drive_E > 0.0)) throw std::invalid_argument("force_ratio: drive field must be positive");
    const double om = rotor.omega;
    const double f_hz = om / (2.0 * std::numbers::pi);
    return {pc.electron_mass * om * om * rotor.radius / (pc.elementary_charge * drive_E),
            engineering_force_prefactor * f_hz * f_hz * rotor.radius / drive_E};
}

}  // namespace rotoshift
