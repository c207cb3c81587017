#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "rotoshift/constants.hpp"
#include "rotoshift/errors.hpp"

namespace rotoshift {

using Vec3 = Eigen::Vector3d;

/// Relative half-width of the excluded band around Omega = omega0.
inline constexpr double resonance_tolerance = 1e-6;

struct HarmonicTrap {
    double omega0 = 0.0;  // rad/s
};

struct CoulombCenter {
    int Z = 1;
};

/**
 * An emitter whose potential centre circles the z axis.
 *
 * The rotation vector is Omega * z_hat (negative Omega reverses the sense of
 * rotation). The centre sits at R = radius * (cos azimuth, sin azimuth, 0);
 * with the default azimuth it lies on +x and the orbital velocity
 * v_c = Omega x R points along +y.
 */
struct RotorConfig {
    double omega = 0.0;   // rad/s
    double radius = 0.0;  // m
    std::variant<HarmonicTrap, CoulombCenter> model = CoulombCenter{};
    double azimuth = 0.0;  // rad

    [[nodiscard]] bool is_harmonic() const { return std::holds_alternative<HarmonicTrap>(model); }
    [[nodiscard]] bool is_coulomb() const { return std::holds_alternative<CoulombCenter>(model); }

    [[nodiscard]] double omega0() const {
        if (!is_harmonic()) throw std::invalid_argument("rotor model is not harmonic");
        return std::get<HarmonicTrap>(model).omega0;
    }

    [[nodiscard]] int charge() const {
        if (!is_coulomb()) throw std::invalid_argument("rotor model is not coulomb");
        return std::get<CoulombCenter>(model).Z;
    }

    [[nodiscard]] Vec3 position() const {
        return radius * Vec3(std::cos(azimuth), std::sin(azimuth), 0.0);
    }

    [[nodiscard]] Vec3 orbital_velocity() const { return Vec3(0.0, 0.0, omega).cross(position()); }

    /// Signed orbital speed Omega * R.
    [[nodiscard]] double orbital_speed() const { return omega * radius; }

    void validate() const {
        if (!std::isfinite(omega) || !std::isfinite(radius) || !std::isfinite(azimuth))
            throw std::invalid_argument("rotor parameters must be finite");
        if (radius < 0.0) throw std::invalid_argument("rotor radius must be >= 0");
        if (is_harmonic()) {
            const double w0 = omega0();
            if (!(w0 > 0.0) || !std::isfinite(w0))
                throw std::invalid_argument("harmonic trap frequency must be positive");
            if (std::abs(w0 * w0 - omega * omega) < resonance_tolerance * w0 * w0)
                throw ResonanceError("rotation frequency within resonance band of omega0");
        } else if (charge() < 1) {
            throw std::invalid_argument("nuclear charge Z must be >= 1");
        }
    }
};

/**
 * Effective fields seen by the bound electron, SI units.
 *
 * pseudo_E and pseudo_B mimic the centrifugal and Coriolis forces; drive_E is
 * an optional true (co-rotating, hence static) electric field.
 */
struct CrossedFields {
    Vec3 pseudo_E = Vec3::Zero();  // V/m
    Vec3 pseudo_B = Vec3::Zero();  // T
    std::optional<Vec3> drive_E;   // V/m

    /// Field entering the linear Stark term.
    [[nodiscard]] Vec3 stark_field() const {
        return drive_E ? Vec3(pseudo_E + *drive_E) : pseudo_E;
    }
};

/// e E = m Omega^2 R (along R), e B = 2 m Omega (along the axis).
inline CrossedFields fictitious_fields(const RotorConfig& rotor,
                                       const PhysicalConstants& pc = codata2018) {
    if (!std::isfinite(rotor.omega) || !std::isfinite(rotor.radius))
        throw std::invalid_argument("rotor parameters must be finite");
    const double m_over_e = pc.electron_mass / pc.elementary_charge;
    CrossedFields f;
    f.pseudo_E = m_over_e * rotor.omega * rotor.omega * rotor.position();
    f.pseudo_B = Vec3(0.0, 0.0, 2.0 * m_over_e * rotor.omega);
    return f;
}

}  // namespace rotoshift
